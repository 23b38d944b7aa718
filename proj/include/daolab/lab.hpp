#ifndef DAOLAB_LAB_HPP
#define DAOLAB_LAB_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dao.hpp"

namespace daolab {

struct Claim {
  std::string name;
  std::string status;  // pass | fail | evidence
  std::string detail;
  Certificate certificate;
};

struct AnomalyRecord {
  std::string ring;
  std::string ideal;
  long d3 = 0;
  long r = 0;
  long s = 0;
  std::uint64_t seed = 0;
  int trial = 0;
  std::string rerun;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Claim> claims;
  std::vector<AnomalyRecord> anomalies;

  void add(std::string name, bool ok, std::string detail, Certificate cert = Certificate::certified()) {
    claims.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail), cert});
  }
  void evidence(std::string name, std::string detail, Certificate cert = Certificate::certified()) {
    claims.push_back({std::move(name), "evidence", std::move(detail), cert});
  }
  void merge(const ScenarioResult& other, const std::string& prefix) {
    for (auto c : other.claims) {
      c.name = prefix + c.name;
      claims.push_back(std::move(c));
    }
    anomalies.insert(anomalies.end(), other.anomalies.begin(), other.anomalies.end());
  }

  bool failed() const {
    return std::any_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == "fail"; });
  }
  /// Some passing claim rests on a probabilistic or cap-limited value.
  bool uncertified() const {
    return std::any_of(claims.begin(), claims.end(), [](const Claim& c) {
      return c.status == "pass" && !c.certificate.is_certified();
    });
  }
  /// verified | failed | evidence. Verified needs every passing claim certified.
  std::string status() const {
    if (failed()) return "failed";
    if (uncertified()) return "evidence";
    bool any_pass = std::any_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == "pass"; });
    return any_pass ? "verified" : "evidence";
  }
};

namespace detail {

inline std::string cmp(long a, const char* op, long b) { return std::to_string(a) + " " + op + " " + std::to_string(b); }

/// Uncertified passes are downgraded to evidence.
inline Claim as_claim(std::string name, bool ok, std::string detail, Certificate cert) {
  std::string st = ok ? (cert.is_certified() ? "pass" : "evidence") : "fail";
  return {std::move(name), st, std::move(detail), cert};
}

template <class Field>
void scenario_inputs(ScenarioResult& res, const RingRef<Field>& R, const Ideal<Field>* I = nullptr) {
  res.inputs.push_back({"ring", R->to_string()});
  if (I) res.inputs.push_back({"ideal", I->to_string()});
}

template <class Field>
void require_depth(const RingRef<Field>& R) {
  if (!depth_positive(R)) throw HypothesisError("depth R = 0: the standing hypothesis depth R > 0 fails");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scenarios

/// d3(I) <= reg R(m, I). The scan runs `window` steps past the bound.
template <class Field>
ScenarioResult check_main_inequality(const RingRef<Field>& R, const Ideal<Field>& I, int window = 3) {
  detail::require_graded(R, "check_main_inequality");
  detail::require_dao_input(R, I);
  ScenarioResult res{"main_inequality", {}, {}, {}};
  detail::scenario_inputs(res, R, &I);
  int U = rees_regularity(R, I);
  auto powers = detail::products_with_powers(I, std::max(U, 0) + window + 1);
  auto m = max_ideal(R);
  int last_fail = -1;
  for (int k = 0; k <= std::max(U, 0) + window; ++k) {
    auto C = ideal_colon(powers[static_cast<std::size_t>(k) + 1], m);
    if (!ideals_equal(C, powers[static_cast<std::size_t>(k)])) last_fail = k;
  }
  long d3 = last_fail + 1;
  res.inputs.push_back({"reg R(m,I)", std::to_string(U)});
  res.inputs.push_back({"d3", std::to_string(d3)});
  res.add("d3 <= reg R(m,I)", d3 <= U, detail::cmp(d3, "<=", U));
  return res;
}

/// d3(I) = max(r_I(m), s(m) - 1) for a reduction I of m.
template <class Field>
ScenarioResult check_identity_theorem(const RingRef<Field>& R, const Ideal<Field>& I, const DaoConfig& cfg = {}) {
  detail::require_dao_input(R, I);
  auto red = reduction_scan(R, I, cfg.cap);
  if (!red.r) throw std::invalid_argument("check_identity_theorem needs a reduction of m: " + I.to_string());
  ScenarioResult res{"identity", {}, {}, {}};
  detail::scenario_inputs(res, R, &I);
  auto d3 = dao_d3(R, I, cfg);
  auto s = s_of_m(R, cfg.cap, cfg.window);
  long rhs = std::max(*red.r, s.value - 1);
  res.inputs.push_back({"d3", std::to_string(d3.scan_value)});
  res.inputs.push_back({"r_I", std::to_string(*red.r)});
  res.inputs.push_back({"s(m)", std::to_string(s.value)});
  Certificate cert = weaker(d3.scan_certificate, s.certificate);
  res.claims.push_back(detail::as_claim("d3 = max(r_I, s - 1)", d3.scan_value == rhs,
                                        std::to_string(d3.scan_value) + " = max(" + std::to_string(*red.r) + ", " +
                                            std::to_string(s.value - 1) + ")",
                                        cert));
  return res;
}

/// reg R(m) <= reg R(m, I), with equality claimed for reductions.
template <class Field>
ScenarioResult check_monotonicity(const RingRef<Field>& R, const Ideal<Field>& I, int cap = 12) {
  detail::require_graded(R, "check_monotonicity");
  detail::require_dao_input(R, I);
  ScenarioResult res{"monotonicity", {}, {}, {}};
  detail::scenario_inputs(res, R, &I);
  int a = rees_ring_regularity(R);
  int b = rees_regularity(R, I);
  auto red = reduction_scan(R, I, cap);
  bool is_red = red.verdict.value == Answer::Yes;
  res.inputs.push_back({"reg R(m)", std::to_string(a)});
  res.inputs.push_back({"reg R(m,I)", std::to_string(b)});
  res.inputs.push_back({"reduction", to_string(red.verdict.value)});
  res.add("reg R(m) <= reg R(m,I)", a <= b, detail::cmp(a, "<=", b));
  if (is_red) {
    res.add("equality for a reduction", a == b, detail::cmp(a, "=", b));
  } else if (a == b) {
    res.evidence("equality without a detected reduction", detail::cmp(a, "=", b), red.verdict.certificate);
  }
  return res;
}

/// (Im^(k+1) : m) inside m^k and dim Q_k = dim gr_k + dim D_k for k <= bound.
template <class Field>
ScenarioResult check_socle_and_exactness(const RingRef<Field>& R, const Ideal<Field>& I) {
  detail::require_graded(R, "check_socle_and_exactness");
  detail::require_dao_input(R, I);
  ScenarioResult res{"socle_exactness", {}, {}, {}};
  detail::scenario_inputs(res, R, &I);
  int U = std::max(rees_regularity(R, I), 0);
  res.inputs.push_back({"bound", std::to_string(U + 1)});
  auto m = max_ideal(R);
  auto powers = detail::products_with_powers(I, U + 2);
  Ideal<Field> mk = unit_ideal(R);
  bool contained = true, additive = true;
  std::string first_bad;
  for (int k = 0; k <= U + 1; ++k) {
    const auto& Ik = powers[static_cast<std::size_t>(k)];
    const auto& Ik1 = powers[static_cast<std::size_t>(k) + 1];
    auto C = ideal_colon(Ik1, m);
    if (!ideal_subset(C, mk)) {
      contained = false;
      if (first_bad.empty()) first_bad = "containment at k = " + std::to_string(k);
    }
    long gr = quotient_length(Ik, Ik1), D = quotient_length(C, Ik), Q = quotient_length(C, Ik1);
    if (Q != gr + D) {
      additive = false;
      if (first_bad.empty()) first_bad = "additivity at k = " + std::to_string(k);
    }
    res.inputs.push_back({"k=" + std::to_string(k), "Q " + std::to_string(Q) + ", gr " + std::to_string(gr) +
                                                         ", D " + std::to_string(D)});
    mk = ideal_product(mk, m);
  }
  std::string range = "k = 0.." + std::to_string(U + 1);
  res.add("(Im^(k+1) : m) inside m^k", contained, contained ? range : first_bad);
  res.add("dim Q_k = dim gr_k + dim D_k", additive, additive ? range : first_bad);
  return res;
}

/// Regular iff m is generated by a d-sequence iff reg R(m) = 0 iff
/// s(m) = 1 and r_I = 0 iff d3(I) = 0, over sampled minimal reductions.
template <class Field>
ScenarioResult check_regular_characterization(const RingRef<Field>& R, int trials, std::mt19937_64& rng,
                                              const DaoConfig& cfg = {}) {
  detail::require_depth(R);
  ScenarioResult res{"regular_characterization", {}, {}, {}};
  detail::scenario_inputs(res, R);
  bool regular = is_regular_ring(R);
  res.inputs.push_back({"embedding dimension", std::to_string(embedding_dimension(R))});
  res.inputs.push_back({"dimension", std::to_string(dimension(R))});
  res.inputs.push_back({"regular", regular ? "yes" : "no"});
  std::vector<Polynomial<Field>> vars;
  for (std::size_t i = 0; i < R->nvars(); ++i) vars.push_back(Polynomial<Field>::variable(R->ambient(), i));
  bool dseq = is_d_sequence(R, vars);
  int reg = ring_regularity(R);
  auto s = s_of_m(R, cfg.cap, cfg.window);
  res.add("regular iff variables form a d-sequence", regular == dseq, std::string("d-sequence: ") + (dseq ? "yes" : "no"));
  res.add("regular iff reg R(m) = 0", regular == (reg == 0), "reg R(m) = " + std::to_string(reg));
  bool all_zero = true, c_holds = s.value == 1;
  Certificate dcert = Certificate::certified();
  for (int t = 0; t < trials; ++t) {
    auto I = sample_minimal_reduction(R, rng, 16, cfg.cap);
    auto d3 = dao_d3(R, I, cfg);
    long r = reduction_number(R, I, cfg.cap);
    dcert = weaker(dcert, d3.d3.certificate);
    if (d3.d3.value != 0) all_zero = false;
    if (r != 0) c_holds = false;
    res.inputs.push_back({"reduction " + std::to_string(t + 1),
                          I.to_string() + ": d3 " + std::to_string(d3.d3.value) + ", r " + std::to_string(r)});
  }
  res.claims.push_back(detail::as_claim("regular iff s(m) = 1 and r_I = 0", regular == c_holds,
                                        "s(m) = " + std::to_string(s.value), s.certificate));
  res.claims.push_back(detail::as_claim("regular iff d3 = 0 for sampled minimal reductions", regular == all_zero,
                                        std::to_string(trials) + " reductions, all d3 = 0: " + (all_zero ? "yes" : "no"),
                                        dcert));
  return res;
}

// ---------------------------------------------------------------------------
// Explorer

enum class Family { Hypersurface, CompleteIntersection, MonomialQuotient };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::Hypersurface: return "hypersurface";
    case Family::CompleteIntersection: return "complete_intersection";
    case Family::MonomialQuotient: return "monomial_quotient";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "hypersurface") return Family::Hypersurface;
  if (s == "complete_intersection" || s == "ci") return Family::CompleteIntersection;
  if (s == "monomial_quotient") return Family::MonomialQuotient;
  throw std::invalid_argument("unknown family: " + s);
}

struct FamilyConfig {
  Family family = Family::Hypersurface;
  int min_vars = 3, max_vars = 3;
  int min_degree = 2, max_degree = 3;
  int trials = 8;
  std::uint64_t seed = 1;
  RingMode mode = RingMode::Graded;
  int cap = 12;
  int window = 3;

  void validate() const {
    if (min_vars < 1 || max_vars < min_vars) throw std::invalid_argument("bad variable range");
    if (min_degree < 2 || max_degree < min_degree) throw std::invalid_argument("bad degree range (need >= 2)");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    int codim = family == Family::CompleteIntersection ? 2 : 1;
    if (family != Family::MonomialQuotient && max_vars - codim < 2)
      throw std::invalid_argument("family has dimension < 2 for every variable count");
  }
};

/// Per-trial generator: depends on (seed, trial) only.
inline std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

namespace detail {

template <class Field>
Polynomial<Field> random_full_form(const RingPtr<Field>& A, std::mt19937_64& rng, int d) {
  std::vector<Term<Field>> ts;
  for (const auto& mono : monomials_of_degree(A->nvars(), d)) ts.push_back({mono, A->field().random(rng)});
  return Polynomial<Field>(A, std::move(ts));
}

/// Adds a few higher-order terms (local mode samples are not homogeneous).
template <class Field>
Polynomial<Field> perturb(const Polynomial<Field>& f, std::mt19937_64& rng, int d) {
  const auto& A = f.ring();
  auto monos = monomials_of_degree(A->nvars(), d + 1);
  std::vector<Term<Field>> ts;
  for (int k = 0; k < 2; ++k) ts.push_back({monos[draw_below(rng, monos.size())], A->field().random(rng)});
  return f + Polynomial<Field>(A, std::move(ts));
}

template <class Field>
std::optional<RingRef<Field>> sample_ring(const Field& F, const FamilyConfig& cfg, std::mt19937_64& rng) {
  int n = cfg.min_vars + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(cfg.max_vars - cfg.min_vars + 1)));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  auto A = PolyRing<Field>::make(F, names);
  auto deg = [&] {
    return cfg.min_degree +
           static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(cfg.max_degree - cfg.min_degree + 1)));
  };
  std::vector<Polynomial<Field>> rels;
  switch (cfg.family) {
    case Family::Hypersurface:
    case Family::CompleteIntersection: {
      int c = cfg.family == Family::Hypersurface ? 1 : 2;
      if (n - c < 2) return std::nullopt;
      for (int i = 0; i < c; ++i) {
        int d = deg();
        auto f = random_full_form(A, rng, d);
        rels.push_back(cfg.mode == RingMode::Local ? perturb(f, rng, d) : f);
      }
      break;
    }
    case Family::MonomialQuotient: {
      int count = 1 + static_cast<int>(draw_below(rng, 2));
      for (int i = 0; i < count; ++i) {
        auto monos = monomials_of_degree(static_cast<std::size_t>(n), deg());
        rels.push_back(Polynomial<Field>::monomial(A, monos[draw_below(rng, monos.size())], F.one()));
      }
      break;
    }
  }
  auto R = PresentedRing<Field>::make(A, rels, cfg.mode);
  if (dimension(R) < 2 || !depth_positive(R)) return std::nullopt;
  // Complete intersections must have the expected dimension.
  if (cfg.family != Family::MonomialQuotient && dimension(R) != n - static_cast<int>(rels.size())) return std::nullopt;
  return R;
}

}  // namespace detail

/// Samples rings from the family, compares d3 with r_I for sampled minimal
/// reductions, and archives every case with d3 != r_I.
template <class Field>
ScenarioResult explore_conjecture(const Field& F, const FamilyConfig& cfg) {
  cfg.validate();
  ScenarioResult res{"explore", {}, {}, {}};
  res.inputs = {{"family", to_string(cfg.family)},
                {"vars", std::to_string(cfg.min_vars) + ".." + std::to_string(cfg.max_vars)},
                {"degrees", std::to_string(cfg.min_degree) + ".." + std::to_string(cfg.max_degree)},
                {"trials", std::to_string(cfg.trials)},
                {"seed", std::to_string(cfg.seed)},
                {"mode", to_string(cfg.mode)},
                {"field", F.name()}};
  DaoConfig dcfg;
  dcfg.cap = cfg.cap;
  dcfg.window = cfg.window;
  bool cm_family = cfg.family != Family::MonomialQuotient;
  long agree = 0, cases = 0, minmult = 0, resampled = 0;
  long r_min = -1;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    std::optional<RingRef<Field>> R;
    for (int attempt = 0; attempt < 16 && !R; ++attempt) {
      R = detail::sample_ring(F, cfg, rng);
      if (!R) ++resampled;
    }
    if (!R) {
      res.evidence("trial " + std::to_string(t), "no admissible ring after 16 draws", Certificate::certified());
      continue;
    }
    auto I = sample_minimal_reduction(*R, rng, 16, cfg.cap);
    auto d3 = dao_d3(*R, I, dcfg);
    long r = reduction_number(*R, I, cfg.cap);
    auto s = s_of_m(*R, cfg.cap, cfg.window);
    bool mm = has_minimal_multiplicity(*R);
    std::mt19937_64 wrng = trial_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, t);
    auto d1 = dao_d1(*R, I, d3.d3, dcfg, wrng);
    auto d2 = dao_d2(*R, I, d1, dcfg, wrng);
    ++cases;
    if (mm) ++minmult;
    r_min = r_min < 0 ? r : std::min(r_min, r);
    bool eq = d3.d3.value == r;
    if (eq) ++agree;
    std::string detail = (*R)->to_string() + " | " + I.to_string() + " | d3 " + std::to_string(d3.d3.value) +
                         ", r_I " + std::to_string(r) + ", s " + std::to_string(s.value) + ", d2 " +
                         std::to_string(d2.value) + (mm ? ", minimal multiplicity" : "");
    Certificate cert = weaker(d3.d3.certificate, s.certificate);
    std::string name = "trial " + std::to_string(t) + ": d3 = r_I";
    if (cm_family && cfg.mode == RingMode::Graded) {
      res.claims.push_back(detail::as_claim(name, eq, detail, cert));
    } else {
      res.evidence(name, detail + (eq ? "" : " (differs)"), cert);
    }
    if (!eq) {
      res.anomalies.push_back({(*R)->to_string(), I.to_string(), d3.d3.value, r, s.value, cfg.seed, t,
                               "daolab explore <config> --seed " + std::to_string(cfg.seed) + " --field Q"});
    }
  }
  res.inputs.push_back({"cases", std::to_string(cases)});
  res.inputs.push_back({"resampled", std::to_string(resampled)});
  res.inputs.push_back({"agreeing", std::to_string(agree)});
  res.inputs.push_back({"minimal multiplicity", std::to_string(minmult)});
  res.inputs.push_back({"min sampled r_I", std::to_string(r_min)});
  return res;
}

// ---------------------------------------------------------------------------
// Fixed example list

template <class Field = PrimeField>
ScenarioResult reproduce_examples(const Field& F = Field()) {
  using S = std::vector<std::string>;
  ScenarioResult res{"examples", {{"field", F.name()}}, {}, {}};
  auto plane = make_ring(F, {"x", "y"}, {});
  res.add("reg R(m) of K[x,y]", rees_ring_regularity(plane) == 0, "reg = " + std::to_string(rees_ring_regularity(plane)));
  for (int a = 2; a <= 4; ++a) {
    auto I = make_ideal(plane, S{"x^" + std::to_string(a), "y^" + std::to_string(a)});
    auto d3 = dao_d3(plane, I);
    int U = rees_regularity(plane, I);
    std::string tag = "(x^" + std::to_string(a) + ", y^" + std::to_string(a) + ")";
    res.add("d3" + tag + " = " + std::to_string(a - 1), d3.d3.value == a - 1, "d3 = " + std::to_string(d3.d3.value),
            d3.d3.certificate);
    res.add("reg R(m," + tag + ") = " + std::to_string(a - 1), U == a - 1, "reg = " + std::to_string(U));
  }
  auto m = max_ideal(plane);
  for (int k = 1; k <= 4; ++k) {
    auto d3 = dao_d3(plane, ideal_power(m, k));
    res.add("d3(m^" + std::to_string(k) + ") = 0", d3.d3.value == 0, "d3 = " + std::to_string(d3.d3.value),
            d3.d3.certificate);
  }
  auto quad = make_ring(F, {"x", "y", "z"}, {"z^2 - x*y"});
  res.merge(check_identity_theorem(quad, make_ideal(quad, S{"x", "y"})), "quadric: ");
  auto dl = make_ring(F, {"x", "y"}, {"y^2"});
  res.merge(check_identity_theorem(dl, make_ideal(dl, S{"x"})), "K[x,y]/(y^2): ");

  auto L = make_ring(F, {"x1", "x2", "x3", "x4", "x5", "x6", "x7"},
                     {"x1^2", "x1*x2", "x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4", "x2^3 - x1*x5", "x3^3 - x1*x6",
                      "x4^3 - x1*x7"},
                     RingMode::Local);
  auto T = rr_powers_of_m(L, 10);
  auto s = s_of_m(T);
  res.add("seven-variable ring: s(m) = 3", s.value == 3, "s(m) = " + std::to_string(s.value), s.certificate);
  auto mL = max_ideal(L);
  auto x1 = poly(L, "x1");
  bool in_tilde = T.top >= 2 && ideal_contains(T.tilde[2], x1) && !ideal_contains(ideal_power(mL, 2), x1);
  res.add("seven-variable ring: x1 in widetilde(m^2) \\ m^2", in_tilde, "descent table top " + std::to_string(T.top),
          T.certificate);
  bool m3 = T.top >= 3 && ideals_equal(T.tilde[3], ideal_power(mL, 3));
  res.add("seven-variable ring: widetilde(m^3) = m^3", m3, "descent table top " + std::to_string(T.top), T.certificate);
  return res;
}

}  // namespace daolab

#endif  // DAOLAB_LAB_HPP
