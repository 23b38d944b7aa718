#ifndef DAOLAB_REPORT_HPP
#define DAOLAB_REPORT_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dao.hpp"
#include "lab.hpp"
#include "resolution.hpp"

namespace daolab::report {

// JSON is canonical: nlohmann::json objects are std::map backed, so keys
// come out sorted; only integers and strings are emitted.

using Json = nlohmann::json;

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline Json to_json(const Measured& m) {
  Json j;
  j["value"] = m.value;
  j["certificate"] = m.certificate.to_string();
  if (!m.witnesses.empty()) j["witnesses"] = m.witnesses;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["value"] = to_string(v.value);
  j["certificate"] = v.certificate.to_string();
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

inline Json to_json(const DaoConfig& c) {
  return Json{{"trials", c.trials}, {"cap", c.cap}, {"window", c.window}, {"probe", c.probe},
              {"seed", c.seed}};
}

inline Json to_json(const InvariantReport& r) {
  Json j;
  j["ring"] = r.ring;
  j["ideal"] = r.ideal;
  j["field"] = r.field;
  j["mode"] = r.mode;
  j["depth_positive"] = yes_no(r.depth_positive);
  j["config"] = to_json(r.config);
  j["d1"] = to_json(r.d1);
  j["d2"] = to_json(r.d2);
  j["d3"] = to_json(r.d3);
  j["s_of_m"] = to_json(r.s_of_m);
  Json red = to_json(r.reduction.verdict);
  if (r.reduction.r) red["r_I"] = *r.reduction.r;
  red["bound"] = r.reduction.bound;
  j["reduction"] = red;
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json e{{"k", c.k}, {"vanishes", yes_no(c.vanishes)}};
    if (c.dim) e["dim"] = *c.dim;
    comps.push_back(e);
  }
  j["components"] = comps;
  Json reg;
  reg["ring"] = r.ring_regularity;
  if (r.rees_regularity) reg["ideal"] = *r.rees_regularity;
  j["regularity"] = reg;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

inline Json to_json(const AnomalyRecord& a) {
  return Json{{"ring", a.ring},   {"ideal", a.ideal}, {"d3", a.d3},     {"r_I", a.r},
              {"s_of_m", a.s},    {"seed", a.seed}, {"trial", a.trial}, {"rerun", a.rerun}};
}

inline Json to_json(const ScenarioResult& s) {
  Json j;
  j["scenario"] = s.scenario;
  j["status"] = s.status();
  Json inputs = Json::array();
  for (const auto& [k, v] : s.inputs) inputs.push_back(Json{{"name", k}, {"value", v}});
  j["inputs"] = inputs;
  Json claims = Json::array();
  for (const auto& c : s.claims)
    claims.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail},
                          {"certificate", c.certificate.to_string()}});
  j["claims"] = claims;
  Json an = Json::array();
  for (const auto& a : s.anomalies) an.push_back(to_json(a));
  j["anomalies"] = an;
  return j;
}

inline Json to_json(const BettiTable& b) {
  Json entries = Json::array();
  for (const auto& [k, v] : b.entries()) entries.push_back(Json{{"i", k.first}, {"j", k.second}, {"beta", v}});
  Json j{{"entries", entries}, {"projective_dimension", b.projective_dimension()}};
  if (!b.empty()) j["regularity"] = b.regularity();
  return j;
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Text

inline std::string text(const InvariantReport& r) {
  std::ostringstream os;
  auto line = [&](const std::string& k, const std::string& v) { os << "  " << k << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ') << v << "\n"; };
  auto meas = [](const Measured& m) { return std::to_string(m.value) + "  [" + m.certificate.to_string() + "]"; };
  os << "ring  " << r.ring << "\n";
  os << "ideal " << r.ideal << "\n";
  line("d1", meas(r.d1));
  line("d2", meas(r.d2));
  line("d3", meas(r.d3));
  line("s(m)", meas(r.s_of_m));
  std::string red = to_string(r.reduction.verdict.value);
  if (r.reduction.r) red += ", r_I = " + std::to_string(*r.reduction.r);
  line("reduction", red + "  [" + r.reduction.verdict.certificate.to_string() + "]");
  line("reg R(m)", std::to_string(r.ring_regularity));
  if (r.rees_regularity) line("reg R(m,I)", std::to_string(*r.rees_regularity));
  std::string comps;
  for (const auto& c : r.components)
    comps += (comps.empty() ? "" : " ") + (c.dim ? std::to_string(*c.dim) : std::string(c.vanishes ? "0" : "*"));
  line("D_k (k>=0)", comps);
  for (const auto& c : r.checks) line("check", c.status + "  " + c.name + "  (" + c.detail + ")");
  os << "  config          trials " << r.config.trials << ", cap " << r.config.cap << ", window " << r.config.window
     << ", seed " << r.config.seed << ", field " << r.field << ", " << r.mode << "\n";
  return os.str();
}

inline std::string text(const ScenarioResult& s) {
  std::ostringstream os;
  os << "scenario " << s.scenario << ": " << s.status() << "\n";
  for (const auto& [k, v] : s.inputs) os << "  " << k << ": " << v << "\n";
  for (const auto& c : s.claims) {
    os << "  [" << c.status << "] " << c.name << "  (" << c.detail << ")";
    if (!c.certificate.is_certified()) os << "  " << c.certificate.to_string();
    os << "\n";
  }
  for (const auto& a : s.anomalies)
    os << "  anomaly: " << a.ring << " | " << a.ideal << " d3 " << a.d3 << " r_I " << a.r << "\n";
  return os.str();
}

/// Appends one JSON object per line.
inline void append_anomaly_log(const std::string& path, const std::vector<AnomalyRecord>& records) {
  if (records.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open anomaly log " + path);
  for (const auto& r : records) out << to_json(r).dump() << "\n";
}

}  // namespace daolab::report

#endif  // DAOLAB_REPORT_HPP
