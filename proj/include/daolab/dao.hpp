#ifndef DAOLAB_DAO_HPP
#define DAOLAB_DAO_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup.hpp"
#include "ideal.hpp"

namespace daolab {

/// The standing hypothesis (depth R > 0) or an input restriction failed.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Answer { Yes, No, ProbablyNo, Unknown };

inline std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::ProbablyNo: return "probably_no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

struct Certificate {
  enum class Kind { Certified, Probabilistic, CapLimited };
  Kind kind = Kind::Certified;
  int trials = 0;
  int cap = 0;
  int window = 0;
  bool stable = false;

  static Certificate certified() { return {}; }
  static Certificate probabilistic(int trials) { return {Kind::Probabilistic, trials, 0, 0, false}; }
  static Certificate cap_limited(int cap, int window, bool stable) { return {Kind::CapLimited, 0, cap, window, stable}; }

  bool is_certified() const { return kind == Kind::Certified; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Certified: return "certified";
      case Kind::Probabilistic: return "probabilistic(" + std::to_string(trials) + ")";
      case Kind::CapLimited:
        return "cap_limited(" + std::to_string(cap) + (window ? ", window " + std::to_string(window) : "") +
               (stable ? ", stable" : ", unstable") + ")";
    }
    return "?";
  }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// The weaker of two certificates (cap-limited < probabilistic < certified).
inline Certificate weaker(const Certificate& a, const Certificate& b) {
  auto rank = [](const Certificate& c) {
    switch (c.kind) {
      case Certificate::Kind::Certified: return 2;
      case Certificate::Kind::Probabilistic: return 1;
      case Certificate::Kind::CapLimited: return 0;
    }
    return 0;
  };
  return rank(a) <= rank(b) ? a : b;
}

struct Verdict {
  Answer value = Answer::Unknown;
  std::optional<std::string> witness;
  Certificate certificate;
};

/// A natural number with its certificate. `witnesses` holds one entry per
/// step that justified the value.
struct Measured {
  long value = 0;
  Certificate certificate;
  std::vector<std::string> witnesses;
};

struct DaoConfig {
  int trials = 8;
  int cap = 12;
  int window = 3;
  int probe = 2;  // extra k checked for m-fullness witnesses above d3
  std::uint64_t seed = 1;
};

namespace detail {

template <class Field>
void require_dao_input(const RingRef<Field>& R, const Ideal<Field>& I) {
  if (I.ring() != R) throw std::invalid_argument("ideal belongs to a different ring");
  if (I.is_zero()) throw HypothesisError("Dao numbers need a nonzero ideal");
  if (!is_proper(I)) throw HypothesisError("Dao numbers need a proper ideal");
  if (!depth_positive(R)) throw HypothesisError("depth R = 0: the standing hypothesis depth R > 0 fails");
}

template <class Field>
std::optional<Polynomial<Field>> element_outside(const Ideal<Field>& big, const Ideal<Field>& small) {
  for (const auto& g : big.essential())
    if (!ideal_contains(small, g)) return g;
  return std::nullopt;
}

/// x in m \ m^2 (its image in R has nonzero linear part).
template <class Field>
Polynomial<Field> draw_linear_form(const Ideal<Field>& m2, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto x = random_linear_form(m2.ambient(), rng);
    if (!ideal_contains(m2, x)) return x;
  }
  throw std::runtime_error("no linear form outside m^2 found");
}

/// Im^k for k = 0..top, built by repeated multiplication.
template <class Field>
std::vector<Ideal<Field>> products_with_powers(const Ideal<Field>& I, int top) {
  auto m = max_ideal(I.ring());
  std::vector<Ideal<Field>> out{I};
  for (int k = 1; k <= top; ++k) out.push_back(ideal_product(out.back(), m));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fullness predicates

/// Am : m = A.
template <class Field>
Verdict is_weakly_m_full(const Ideal<Field>& A) {
  if (!is_proper(A)) throw std::invalid_argument("weak m-fullness needs a proper ideal");
  auto m = max_ideal(A.ring());
  auto C = ideal_colon(ideal_product(A, m), m);
  if (ideals_equal(C, A)) return {Answer::Yes, std::nullopt, Certificate::certified()};
  auto w = detail::element_outside(C, A);
  return {Answer::No, w ? std::optional<std::string>(w->to_string()) : std::nullopt, Certificate::certified()};
}

/// Am : x = A for some x in m \ m^2, searched over random linear forms.
template <class Field>
Verdict is_m_full(const Ideal<Field>& A, int trials, std::mt19937_64& rng) {
  if (!is_proper(A)) throw std::invalid_argument("m-fullness needs a proper ideal");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  auto m = max_ideal(A.ring());
  auto m2 = ideal_power(m, 2);
  auto Am = ideal_product(A, m);
  for (int t = 0; t < trials; ++t) {
    auto x = detail::draw_linear_form(m2, rng);
    if (ideals_equal(ideal_colon(Am, x), A)) return {Answer::Yes, x.to_string(), Certificate::certified()};
  }
  return {Answer::ProbablyNo, std::nullopt, Certificate::probabilistic(trials)};
}

/// A : x = A : m for some x in m \ m^2.
template <class Field>
Verdict is_full(const Ideal<Field>& A, int trials, std::mt19937_64& rng) {
  if (!is_proper(A)) throw std::invalid_argument("fullness needs a proper ideal");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  auto m = max_ideal(A.ring());
  auto m2 = ideal_power(m, 2);
  auto Am = ideal_colon(A, m);
  for (int t = 0; t < trials; ++t) {
    auto x = detail::draw_linear_form(m2, rng);
    if (ideals_equal(ideal_colon(A, x), Am)) return {Answer::Yes, x.to_string(), Certificate::certified()};
  }
  return {Answer::ProbablyNo, std::nullopt, Certificate::probabilistic(trials)};
}

// ---------------------------------------------------------------------------
// Dao module components

/// dim_K (Im^(k+1) : m) / Im^k (graded mode).
template <class Field>
long dao_component_dim(const RingRef<Field>& R, const Ideal<Field>& I, int k) {
  detail::require_graded(R, "Dao component dimension");
  auto Ik = ideal_product(I, ideal_power(max_ideal(R), k));
  auto m = max_ideal(R);
  return quotient_length(ideal_colon(ideal_product(Ik, m), m), Ik);
}

/// The k-th Dao component is zero; both modes.
template <class Field>
bool dao_component_vanishes(const RingRef<Field>& R, const Ideal<Field>& I, int k) {
  auto Ik = ideal_product(I, ideal_power(max_ideal(R), k));
  return is_weakly_m_full(Ik).value == Answer::Yes;
}

// ---------------------------------------------------------------------------
// Ratliff-Rush closures

struct RatliffRushPolicy {
  int window = 3;
  int cap = 12;
};

template <class Field>
struct RatliffRushResult {
  Ideal<Field> closure;
  std::vector<Ideal<Field>> chain;  // C_1, C_2, ... with C_j = A^(j+1) : A^j
  Certificate certificate;
};

/// A contains a non-zerodivisor: 0 : A = 0.
template <class Field>
bool has_regular_element(const Ideal<Field>& A) {
  auto Z = zero_ideal(A.ring());
  return ideals_equal(ideal_colon(Z, A), Z);
}

template <class Field>
RatliffRushResult<Field> ratliff_rush(const Ideal<Field>& A, RatliffRushPolicy policy = {}) {
  if (policy.window < 1 || policy.cap < 1) throw std::invalid_argument("window and cap must be positive");
  if (!has_regular_element(A)) throw HypothesisError("Ratliff-Rush closure needs an ideal with a regular element");
  RatliffRushResult<Field> out{A, {}, {}};
  Ideal<Field> lower = A;
  Ideal<Field> upper = ideal_power(A, 2);
  int equal_run = 1;
  bool stable = false;
  for (int j = 1; j <= policy.cap; ++j) {
    auto C = ideal_colon(upper, lower);
    if (!out.chain.empty() && ideals_equal(C, out.chain.back())) {
      ++equal_run;
    } else {
      equal_run = 1;
    }
    out.chain.push_back(C);
    if (equal_run >= policy.window) {
      stable = true;
      break;
    }
    lower = upper;
    upper = ideal_product(upper, A);
  }
  out.closure = out.chain.back();
  out.certificate = Certificate::cap_limited(policy.cap, policy.window, stable);
  return out;
}

// ---------------------------------------------------------------------------
// Regularity bound for R(m)

/// reg R(m) = reg gr_m(R). Graded mode goes through the Rees algebra,
/// local mode through the tangent cone.
template <class Field>
int ring_regularity(const RingRef<Field>& R) {
  if (R->graded()) return rees_ring_regularity(R);
  return associated_graded_regularity(R);
}

// ---------------------------------------------------------------------------
// Ratliff-Rush closures of powers of m

template <class Field>
struct PowerTable {
  int top = 0;                       // widetilde(m^top) = m^top is the starting point
  std::vector<Ideal<Field>> tilde;   // index k = 1..top; index 0 unused (the unit ideal)
  std::vector<bool> differs;         // widetilde(m^k) != m^k
  std::vector<std::string> witnesses;  // "k: f" with f in widetilde(m^k) \ m^k
  Certificate certificate;
};

/// Descends widetilde(m^k) = widetilde(m^(k+1)) : m from a top N where
/// widetilde(m^N) = m^N. N = max(1, reg R(m)); if that exceeds the cap the
/// top is the cap and the result is only cap-limited.
template <class Field>
PowerTable<Field> rr_powers_of_m(const RingRef<Field>& R, int cap = 12, int window = 3) {
  if (!depth_positive(R)) throw HypothesisError("depth R = 0: the standing hypothesis depth R > 0 fails");
  int N = std::max(1, ring_regularity(R));
  PowerTable<Field> T;
  T.certificate = Certificate::certified();
  if (N > cap) {
    N = cap;
    T.certificate = Certificate::cap_limited(cap, window, false);
  }
  auto m = max_ideal(R);
  std::vector<Ideal<Field>> pw{unit_ideal(R), m};
  for (int k = 2; k <= N; ++k) pw.push_back(ideal_product(pw.back(), m));
  T.top = N;
  T.tilde.assign(static_cast<std::size_t>(N) + 1, unit_ideal(R));
  T.differs.assign(static_cast<std::size_t>(N) + 1, false);
  T.tilde[static_cast<std::size_t>(N)] = pw[static_cast<std::size_t>(N)];
  for (int k = N - 1; k >= 1; --k) {
    auto& cur = T.tilde[static_cast<std::size_t>(k)];
    cur = ideal_colon(T.tilde[static_cast<std::size_t>(k) + 1], m);
    const auto& mk = pw[static_cast<std::size_t>(k)];
    if (!ideals_equal(cur, mk)) {
      T.differs[static_cast<std::size_t>(k)] = true;
      auto w = detail::element_outside(cur, mk);
      T.witnesses.push_back(std::to_string(k) + ": " + (w ? w->to_string() : "?"));
    }
  }
  std::reverse(T.witnesses.begin(), T.witnesses.end());
  if (!T.certificate.is_certified()) {
    int run = 0;
    for (int k = N; k >= 1 && !T.differs[static_cast<std::size_t>(k)]; --k) ++run;
    T.certificate.stable = run >= window;
  }
  return T;
}

/// s(m) = 1 + max{k : widetilde(m^k) != m^k}, or 1.
template <class Field>
Measured s_of_m(const PowerTable<Field>& T) {
  long s = 1;
  for (int k = 1; k <= T.top; ++k)
    if (T.differs[static_cast<std::size_t>(k)]) s = k + 1;
  return {s, T.certificate, T.witnesses};
}

template <class Field>
Measured s_of_m(const RingRef<Field>& R, int cap = 12, int window = 3) {
  return s_of_m(rr_powers_of_m(R, cap, window));
}

// ---------------------------------------------------------------------------
// Reductions of m

struct ReductionResult {
  Verdict verdict;
  std::optional<long> r;  // r_I(m) when I is a reduction
  int bound = 0;          // scan bound used
};

/// Scans Im^k = m^(k+1) for k = 0..B, B = max(1, reg R(m)) (capped).
template <class Field>
ReductionResult reduction_scan(const RingRef<Field>& R, const Ideal<Field>& I, int cap = 12) {
  auto m = max_ideal(R);
  if (!ideal_subset(I, m)) throw std::invalid_argument("reduction test needs I inside m");
  int B = std::max(1, ring_regularity(R));
  Certificate cert = Certificate::certified();
  if (B > cap) {
    B = cap;
    cert = Certificate::cap_limited(cap, 0, false);
  }
  auto Ik = I;
  auto mk1 = m;
  for (int k = 0; k <= B; ++k) {
    if (ideals_equal(Ik, mk1)) {
      return {{Answer::Yes, "r = " + std::to_string(k), Certificate::certified()}, k, B};
    }
    Ik = ideal_product(Ik, m);
    mk1 = ideal_product(mk1, m);
  }
  Answer a = cert.is_certified() ? Answer::No : Answer::Unknown;
  return {{a, std::nullopt, cert}, std::nullopt, B};
}

template <class Field>
Verdict is_reduction_of_m(const RingRef<Field>& R, const Ideal<Field>& I, int cap = 12) {
  return reduction_scan(R, I, cap).verdict;
}

template <class Field>
long reduction_number(const RingRef<Field>& R, const Ideal<Field>& I, int cap = 12) {
  auto res = reduction_scan(R, I, cap);
  if (!res.r) throw std::invalid_argument("ideal is not a reduction of m (" + res.verdict.certificate.to_string() + ")");
  return *res.r;
}

/// d = dim R generic linear forms, redrawn until they form a reduction.
template <class Field>
Ideal<Field> sample_minimal_reduction(const RingRef<Field>& R, std::mt19937_64& rng, int retries = 16, int cap = 12) {
  int d = dimension(R);
  if (d < 1) throw std::invalid_argument("minimal reductions are sampled only when dim R >= 1");
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<Polynomial<Field>> forms;
    for (int i = 0; i < d; ++i) forms.push_back(random_linear_form(R->ambient(), rng));
    auto I = make_ideal(R, forms);
    if (reduction_scan(R, I, cap).verdict.value == Answer::Yes) return I;
  }
  throw std::runtime_error("no minimal reduction found after " + std::to_string(retries) +
                           " draws; raise the retries or use a larger field");
}

// ---------------------------------------------------------------------------
// Dao numbers

struct D3Result {
  Measured d3;
  std::optional<int> bound;       // reg R(m, I) in graded mode
  std::vector<int> failing;       // k with Im^k not weakly m-full
  long scan_value = 0;            // 1 + last failing k
  int scanned = -1;               // last k examined
  Certificate scan_certificate;
};

/// d3(I): Im^k weakly m-full for all k >= d3.
/// Graded: every k below U = reg R(m, I) is checked; k = U must pass.
/// Local: scan until `window` consecutive passes follow the last failure;
/// when I is a certified reduction and s(m) is certified the value is
/// max(r_I, s(m) - 1), certified, and the scan is a cross-check.
template <class Field>
D3Result dao_d3(const RingRef<Field>& R, const Ideal<Field>& I, const DaoConfig& cfg = {}) {
  detail::require_dao_input(R, I);
  auto m = max_ideal(R);
  D3Result out;
  auto step = [&](const Ideal<Field>& Ik, int k) {
    auto v = is_weakly_m_full(Ik);
    if (v.value == Answer::No) {
      out.failing.push_back(k);
      out.d3.witnesses.push_back(std::to_string(k) + ": " + v.witness.value_or("?"));
    }
    return v.value == Answer::Yes;
  };
  if (R->graded()) {
    int U = rees_regularity(R, I);
    out.bound = U;
    Ideal<Field> Ik = I;
    for (int k = 0; k <= std::max(U, 0); ++k) {
      bool ok = step(Ik, k);
      out.scanned = k;
      if (k == std::max(U, 0) && !ok)
        throw std::logic_error("weak m-fullness fails at k = reg R(m, I) = " + std::to_string(U) +
                               ": the scan contradicts the regularity bound");
      Ik = ideal_product(Ik, m);
    }
    out.d3.value = out.scan_value = out.failing.empty() ? 0 : out.failing.back() + 1;
    out.d3.certificate = out.scan_certificate = Certificate::certified();
    return out;
  }
  Ideal<Field> Ik = I;
  int run = 0;
  bool stable = false;
  for (int k = 0; k < cfg.cap; ++k) {
    run = step(Ik, k) ? run + 1 : 0;
    out.scanned = k;
    if (run >= cfg.window) {
      stable = true;
      break;
    }
    Ik = ideal_product(Ik, m);
  }
  out.d3.value = out.scan_value = out.failing.empty() ? 0 : out.failing.back() + 1;
  out.d3.certificate = out.scan_certificate = Certificate::cap_limited(cfg.cap, cfg.window, stable);
  auto red = reduction_scan(R, I, cfg.cap);
  if (red.r) {
    auto s = s_of_m(R, cfg.cap, cfg.window);
    if (s.certificate.is_certified()) {
      out.d3.value = std::max(*red.r, s.value - 1);
      out.d3.certificate = Certificate::certified();
      if (stable && out.scan_value != out.d3.value)
        throw std::logic_error("stable d3 scan disagrees with max(r_I, s(m) - 1)");
    }
  }
  return out;
}

/// d1 from the d3 scan: k < d3 cannot be m-full (m-full implies weakly
/// m-full); k in [d3, d3 + probe] needs a witness.
template <class Field>
Measured dao_d1(const RingRef<Field>& R, const Ideal<Field>& I, const Measured& d3, const DaoConfig& cfg,
                std::mt19937_64& rng) {
  detail::require_dao_input(R, I);
  auto m = max_ideal(R);
  Measured out{d3.value, d3.certificate, {}};
  Ideal<Field> Ik = ideal_product(I, ideal_power(m, static_cast<int>(d3.value)));
  long last_fail = -1;
  for (long k = d3.value; k <= d3.value + cfg.probe; ++k) {
    auto v = is_m_full(Ik, cfg.trials, rng);
    if (v.value == Answer::Yes) {
      out.witnesses.push_back(std::to_string(k) + ": " + *v.witness);
    } else {
      last_fail = k;
    }
    Ik = ideal_product(Ik, m);
  }
  if (last_fail >= 0) {
    out.value = last_fail + 1;
    out.certificate = weaker(d3.certificate, Certificate::probabilistic(cfg.trials));
  }
  return out;
}

/// d2: smallest t <= d1 with fullness witnesses for every k in [t, d1).
/// Above d1 fullness follows from m-fullness.
template <class Field>
Measured dao_d2(const RingRef<Field>& R, const Ideal<Field>& I, const Measured& d1, const DaoConfig& cfg,
                std::mt19937_64& rng) {
  detail::require_dao_input(R, I);
  auto powers = detail::products_with_powers(I, static_cast<int>(std::max(0L, d1.value - 1)));
  Measured out{0, d1.certificate, {}};
  for (long k = d1.value - 1; k >= 0; --k) {
    auto v = is_full(powers[static_cast<std::size_t>(k)], cfg.trials, rng);
    if (v.value != Answer::Yes) {
      out.value = k + 1;
      out.certificate = weaker(d1.certificate, Certificate::probabilistic(cfg.trials));
      break;
    }
    out.witnesses.push_back(std::to_string(k) + ": " + *v.witness);
  }
  std::reverse(out.witnesses.begin(), out.witnesses.end());
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct ConsistencyCheck {
  std::string name;
  std::string status;  // pass | fail | inconclusive | skipped
  std::string detail;
};

struct ComponentEntry {
  int k = 0;
  bool vanishes = true;
  std::optional<long> dim;  // graded mode
};

struct InvariantReport {
  std::string ring;
  std::string ideal;
  std::string field;
  std::string mode;
  bool depth_positive = false;
  DaoConfig config;
  Measured d1, d2, d3;
  Measured s_of_m;
  ReductionResult reduction;
  std::vector<ComponentEntry> components;
  std::optional<int> rees_regularity;  // reg R(m, I), graded mode
  int ring_regularity = 0;             // reg R(m)
  std::vector<ConsistencyCheck> checks;

  bool consistent() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == "fail"; });
  }
};

template <class Field>
InvariantReport invariant_report(const RingRef<Field>& R, const Ideal<Field>& I, const DaoConfig& cfg = {}) {
  detail::require_dao_input(R, I);
  std::mt19937_64 rng(cfg.seed);
  InvariantReport rep;
  rep.ring = R->to_string();
  rep.ideal = I.to_string();
  rep.field = R->field().name();
  rep.mode = to_string(R->mode());
  rep.depth_positive = true;
  rep.config = cfg;

  auto d3 = dao_d3(R, I, cfg);
  rep.d3 = d3.d3;
  rep.rees_regularity = d3.bound;
  rep.ring_regularity = ring_regularity(R);
  rep.d1 = dao_d1(R, I, rep.d3, cfg, rng);
  rep.d2 = dao_d2(R, I, rep.d1, cfg, rng);
  rep.s_of_m = s_of_m(R, cfg.cap, cfg.window);
  rep.reduction = reduction_scan(R, I, cfg.cap);

  int top = d3.bound ? std::max(*d3.bound, 0) : static_cast<int>(rep.d3.value) + cfg.window - 1;
  auto powers = detail::products_with_powers(I, top + 1);
  auto m = max_ideal(R);
  for (int k = 0; k <= top; ++k) {
    ComponentEntry e;
    e.k = k;
    const auto& Ik = powers[static_cast<std::size_t>(k)];
    auto C = ideal_colon(powers[static_cast<std::size_t>(k) + 1], m);
    e.vanishes = ideals_equal(C, Ik);
    if (R->graded()) e.dim = quotient_length(C, Ik);
    rep.components.push_back(e);
  }

  // A mismatch involving an unstable cap-limited value is inconclusive, not a failure.
  auto settled = [](const Certificate& c) { return c.kind != Certificate::Kind::CapLimited || c.stable; };
  bool firm = settled(rep.d1.certificate) && settled(rep.d3.certificate) && settled(rep.s_of_m.certificate) &&
              settled(rep.reduction.verdict.certificate);
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok ? "pass" : (firm ? "fail" : "inconclusive"), std::move(detail)});
  };
  add("d2 <= d1", rep.d2.value <= rep.d1.value,
      std::to_string(rep.d2.value) + " <= " + std::to_string(rep.d1.value));
  add("d1 = d3", rep.d1.value == rep.d3.value, std::to_string(rep.d1.value) + " = " + std::to_string(rep.d3.value));
  {
    bool ok = true;
    for (const auto& e : rep.components) {
      if (e.k > d3.scanned) continue;
      bool fails = std::find(d3.failing.begin(), d3.failing.end(), e.k) != d3.failing.end();
      if (e.vanishes == fails) ok = false;
      if (e.dim && ((*e.dim == 0) != e.vanishes)) ok = false;
    }
    add("components vanish iff weakly m-full", ok, std::to_string(rep.components.size()) + " components");
  }
  if (rep.reduction.r) {
    long rhs = std::max(*rep.reduction.r, rep.s_of_m.value - 1);
    add("d3 = max(r_I, s - 1)", d3.scan_value == rhs,
        std::to_string(d3.scan_value) + " = max(" + std::to_string(*rep.reduction.r) + ", " +
            std::to_string(rep.s_of_m.value - 1) + ")");
  } else {
    rep.checks.push_back({"d3 = max(r_I, s - 1)", "skipped", "not a reduction of m"});
  }
  return rep;
}

}  // namespace daolab

#endif  // DAOLAB_DAO_HPP
