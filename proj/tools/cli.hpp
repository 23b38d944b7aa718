#ifndef DAOLAB_TOOLS_CLI_HPP
#define DAOLAB_TOOLS_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <daolab/dao.hpp>
#include <daolab/dsl.hpp>
#include <daolab/lab.hpp>
#include <daolab/report.hpp>

namespace daolab::cli {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kCapLimited = 3 };

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  int trials = 8;
  int cap = 12;
  std::string out;
  std::string field;  // explore override
  std::string log;    // explore anomaly log
  bool certified = false;
  bool seed_set = false, trials_set = false, cap_set = false;
};

using AnyRing = std::variant<RingRef<PrimeField>, RingRef<RationalField>>;
using AnyIdeal = std::variant<Ideal<PrimeField>, Ideal<RationalField>>;

struct Session {
  dsl::SessionScript script;
  std::map<std::string, AnyRing> rings;
  std::map<std::string, AnyIdeal> ideals;
  std::vector<std::string> ring_order, ideal_order;
};

/// A failure whose message is already formatted for the user.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Session load_session(const std::string& path) {
  std::string text = read_file(path);
  Session s;
  try {
    s.script = dsl::parse_session(text);
  } catch (const ParseError& e) {
    throw UsageError(dsl::diagnostic(e, text, path));
  }
  for (const auto* r : s.script.all<dsl::RingDecl>()) {
    RingMode mode = r->mode.value_or(RingMode::Graded);
    if (r->field.rational)
      s.rings[r->name] = make_ring(RationalField(), r->vars, r->relations, mode);
    else
      s.rings[r->name] = make_ring(PrimeField(r->field.prime), r->vars, r->relations, mode);
    s.ring_order.push_back(r->name);
  }
  for (const auto* d : s.script.all<dsl::IdealDecl>()) {
    std::visit([&](const auto& R) { s.ideals.emplace(d->name, AnyIdeal(make_ideal(R, d->gens))); }, s.rings.at(d->ring));
    s.ideal_order.push_back(d->name);
  }
  return s;
}

inline DaoConfig dao_config(const Options& o) {
  DaoConfig c;
  c.trials = o.trials;
  c.cap = o.cap;
  c.seed = o.seed;
  return c;
}

inline report::Json defaults_json() {
  return report::Json{{"field", "F32003"}, {"mode", "graded"}, {"trials", 8}, {"cap", 12}};
}

inline report::Json settings_json(const Options& o) {
  return report::Json{{"seed", o.seed}, {"trials", o.trials}, {"cap", o.cap}};
}

/// Named targets of the given verb, or every ideal when none is named.
inline std::vector<std::string> ideal_targets(const Session& s, const std::string& verb,
                                              const std::string& scenario = "") {
  std::vector<std::string> out;
  bool any_cmd = false;
  for (const auto* c : s.script.all<dsl::Command>()) {
    if (c->verb != verb) continue;
    auto w = c->words();
    if (!scenario.empty() && std::find(w.begin(), w.end(), scenario) == w.end()) continue;
    any_cmd = true;
    for (const auto& x : w)
      if (s.ideals.count(x) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  if (out.empty() && (!any_cmd || verb != "resolve")) out = s.ideal_order;
  return out;
}

struct Output {
  report::Json json = report::Json::object();
  std::string text;
  int code = kOk;
  void raise(int c) {
    if (c == kFailed || (c == kCapLimited && code != kFailed)) code = c;
  }
};

inline bool report_certified(const InvariantReport& r) {
  return r.d1.certificate.is_certified() && r.d2.certificate.is_certified() && r.d3.certificate.is_certified() &&
         r.s_of_m.certificate.is_certified() && r.reduction.verdict.certificate.is_certified();
}

inline Output cmd_compute(const std::string& file, const Options& o) {
  auto s = load_session(file);
  Output out;
  report::Json results = report::Json::array();
  for (const auto& name : ideal_targets(s, "compute")) {
    std::visit(
        [&](const auto& I) {
          auto rep = invariant_report(I.ring(), I, dao_config(o));
          results.push_back(report::Json{{"name", name}, {"report", report::to_json(rep)}});
          out.text += "[" + name + "]\n" + report::text(rep);
          if (!rep.consistent()) out.raise(kFailed);
          if (o.certified && !report_certified(rep)) out.raise(kCapLimited);
        },
        s.ideals.at(name));
  }
  out.json["results"] = results;
  return out;
}

template <class Field>
ScenarioResult run_scenario(const std::string& scenario, const Ideal<Field>& I, const Options& o) {
  const auto& R = I.ring();
  if (scenario == "main_inequality") return check_main_inequality(R, I);
  if (scenario == "identity") return check_identity_theorem(R, I, dao_config(o));
  if (scenario == "monotonicity") return check_monotonicity(R, I, o.cap);
  if (scenario == "socle_exactness") return check_socle_and_exactness(R, I);
  throw UsageError("unknown scenario '" + scenario + "'");
}

inline void add_scenario(Output& out, report::Json& results, const ScenarioResult& r, const std::string& name) {
  results.push_back(report::Json{{"name", name}, {"result", report::to_json(r)}});
  out.text += (name.empty() ? "" : "[" + name + "]\n") + report::text(r);
  if (r.failed()) out.raise(kFailed);
  if (r.uncertified()) out.raise(kCapLimited);
}

inline Output cmd_verify(const std::string& scenario, const std::string& file, const Options& o) {
  if (!dsl::scenario_names().count(scenario)) throw UsageError("unknown scenario '" + scenario + "'");
  Output out;
  report::Json results = report::Json::array();
  if (scenario == "examples") {
    add_scenario(out, results, reproduce_examples(), "");
  } else {
    if (file.empty()) throw UsageError("verify " + scenario + " needs a session file");
    auto s = load_session(file);
    if (scenario == "regular") {
      std::mt19937_64 rng(o.seed);
      for (const auto& name : s.ring_order)
        std::visit([&](const auto& R) {
          add_scenario(out, results, check_regular_characterization(R, o.trials, rng, dao_config(o)), name);
        }, s.rings.at(name));
    } else {
      for (const auto& name : ideal_targets(s, "verify", scenario))
        std::visit([&](const auto& I) { add_scenario(out, results, run_scenario(scenario, I, o), name); },
                   s.ideals.at(name));
    }
  }
  out.json["scenario"] = scenario;
  out.json["results"] = results;
  return out;
}

inline std::pair<int, int> parse_range(const std::string& v) {
  auto dots = v.find("..");
  try {
    if (dots == std::string::npos) {
      int a = std::stoi(v);
      return {a, a};
    }
    return {std::stoi(v.substr(0, dots)), std::stoi(v.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + v + "'");
  }
}

inline Output cmd_explore(const std::string& file, const Options& o) {
  std::string text = read_file(file);
  dsl::SessionScript script;
  try {
    script = dsl::parse_session(text);
  } catch (const ParseError& e) {
    throw UsageError(dsl::diagnostic(e, text, file));
  }
  Output out;
  report::Json results = report::Json::array();
  int index = 0;
  for (const auto* c : script.all<dsl::Command>()) {
    if (c->verb != "explore") continue;
    FamilyConfig cfg;
    cfg.seed = o.seed;
    cfg.cap = o.cap;
    std::string field = "F32003";
    for (const auto& a : c->args) {
      if (!a.value) throw UsageError("explore options are key=value pairs, got '" + a.key + "'");
      const std::string& v = *a.value;
      if (a.key == "family") {
        cfg.family = parse_family(v);
      } else if (a.key == "vars") {
        std::tie(cfg.min_vars, cfg.max_vars) = parse_range(v);
      } else if (a.key == "degrees") {
        std::tie(cfg.min_degree, cfg.max_degree) = parse_range(v);
      } else if (a.key == "trials") {
        cfg.trials = parse_range(v).first;
      } else if (a.key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_range(v).first);
      } else if (a.key == "cap") {
        cfg.cap = parse_range(v).first;
      } else if (a.key == "mode") {
        if (v != "graded" && v != "local") throw UsageError("mode must be graded or local");
        cfg.mode = v == "local" ? RingMode::Local : RingMode::Graded;
      } else if (a.key == "field") {
        field = v;
      } else {
        throw UsageError("unknown explore option '" + a.key + "'");
      }
    }
    if (o.seed_set) cfg.seed = o.seed;
    if (o.trials_set) cfg.trials = o.trials;
    if (o.cap_set) cfg.cap = o.cap;
    if (!o.field.empty()) field = o.field;
    ScenarioResult r;
    if (field == "Q") {
      r = explore_conjecture(RationalField(), cfg);
    } else {
      dsl::SessionScript probe;
      try {
        probe = dsl::parse_session("ring T = " + field + "[t];");
      } catch (const ParseError& e) {
        throw UsageError(std::string("bad field: ") + e.what());
      }
      r = explore_conjecture(PrimeField(std::get<dsl::RingDecl>(probe.statements[0]).field.prime), cfg);
    }
    if (!o.log.empty()) report::append_anomaly_log(o.log, r.anomalies);
    add_scenario(out, results, r, "explore " + std::to_string(++index));
  }
  if (index == 0) throw UsageError(file + ": no explore statements");
  out.json["results"] = results;
  return out;
}

template <class Field>
report::Json resolve_one(const GradedModulePresentation<Field>& M, const std::string& label, Output& out) {
  auto B = minimal_free_resolution(M);
  bool identity = hilbert_identity_holds(M, B);
  if (!identity) out.raise(kFailed);
  out.text += label + "\n" + B.to_text();
  if (!B.empty()) out.text += "regularity " + std::to_string(B.regularity()) + "\n";
  out.text += std::string("hilbert series check ") + (identity ? "pass" : "fail") + "\n";
  auto j = report::to_json(B);
  j["module"] = label;
  j["hilbert_identity"] = identity ? "pass" : "fail";
  return j;
}

inline Output cmd_resolve(const std::string& file, const Options&) {
  auto s = load_session(file);
  Output out;
  report::Json results = report::Json::array();
  std::vector<std::pair<std::string, std::string>> jobs;  // (kind, name)
  for (const auto* c : s.script.all<dsl::Command>()) {
    if (c->verb != "resolve") continue;
    std::string kind = "quotient";
    for (const auto& w : c->words()) {
      if (w == "gr" || w == "quotient")
        kind = w;
      else
        jobs.push_back({kind, w});
    }
  }
  if (jobs.empty())
    for (const auto& n : s.ideal_order) jobs.push_back({"quotient", n});
  for (const auto& [kind, name] : jobs) {
    if (s.rings.count(name)) {
      std::visit([&](const auto& R) {
        detail::require_graded(R, "resolve");
        auto M = cyclic_module(R->ambient(), R->relations_gb().elements());
        results.push_back(resolve_one(M, "S/J for " + name + " = " + R->to_string(), out));
      }, s.rings.at(name));
      continue;
    }
    std::visit([&](const auto& I) {
      detail::require_graded(I.ring(), "resolve");
      if (kind == "gr") {
        auto M = assoc_module_presentation(I.ring(), I);
        results.push_back(resolve_one(M, "gr_m(" + name + ") over K[y], " + name + " = " + I.to_string(), out));
      } else {
        auto M = cyclic_module(I.ambient(), I.gb().elements());
        results.push_back(resolve_one(M, "S/(" + name + " + J), " + name + " = " + I.to_string(), out));
      }
    }, s.ideals.at(name));
  }
  out.json["results"] = results;
  return out;
}

inline void write_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + path);
    f << data;
  }
  std::filesystem::rename(tmp, path);
}

/// Runs the command line; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"daolab: Dao numbers, Rees algebras and Ratliff-Rush closures"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  auto* seed = app.add_option("--seed", o.seed, "random seed");
  auto* trials = app.add_option("--trials", o.trials, "witness trials (explore: sampled rings)")
                     ->check(CLI::PositiveNumber);
  auto* cap = app.add_option("--cap", o.cap, "cap for local-mode scans")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "write the report to PATH");
  std::string file, scenario;
  auto* compute = app.add_subcommand("compute", "invariant reports for every ideal of a session");
  compute->add_option("file", file)->required();
  compute->add_flag("--certified", o.certified, "exit 3 when a value is not certified");
  auto* verify = app.add_subcommand("verify", "run a named scenario");
  verify->add_option("scenario", scenario)->required();
  verify->add_option("file", file);
  auto* explore = app.add_subcommand("explore", "sample rings and compare d3 with r_I");
  explore->add_option("config", file)->required();
  explore->add_option("--field", o.field, "field override, Q or F<p>");
  explore->add_option("--log", o.log, "append anomalies to this JSON-lines file");
  auto* resolve = app.add_subcommand("resolve", "graded Betti tables");
  resolve->add_option("file", file)->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }
  o.seed_set = seed->count() > 0;
  o.trials_set = trials->count() > 0;
  o.cap_set = cap->count() > 0;

  Output res;
  std::string command;
  try {
    if (*compute) {
      command = "compute";
      res = cmd_compute(file, o);
    } else if (*verify) {
      command = "verify";
      res = cmd_verify(scenario, file, o);
    } else if (*explore) {
      command = "explore";
      res = cmd_explore(file, o);
    } else {
      command = "resolve";
      res = cmd_resolve(file, o);
    }
  } catch (const UsageError& e) {
    err << e.what();
    if (std::string(e.what()).back() != '\n') err << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }

  std::string text;
  if (o.format == "json") {
    res.json["command"] = command;
    if (!file.empty()) res.json["input"] = file;
    res.json["defaults"] = defaults_json();
    res.json["settings"] = settings_json(o);
    res.json["exit"] = res.code;
    text = report::dump(res.json);
  } else {
    text = res.text;
  }
  if (o.out.empty()) {
    out << text;
  } else {
    try {
      write_atomic(o.out, text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return res.code;
}

}  // namespace daolab::cli

#endif  // DAOLAB_TOOLS_CLI_HPP
