#ifndef DAOLAB_IDEAL_HPP
#define DAOLAB_IDEAL_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"
#include "linalg.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "syzygy.hpp"

namespace daolab {

enum class RingMode { Graded, Local };

inline std::string to_string(RingMode m) { return m == RingMode::Graded ? "graded" : "local"; }

/// Raised when an operation is not defined for the ring's mode.
class ModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dimension and multiplicity read off a Hilbert (or Hilbert-Samuel) series.
struct HilbertData {
  int dimension = 0;
  long multiplicity = 0;
  IntPoly h;
  bool certified = true;
};

/// R = K[x_1..x_n]/J, either standard graded or localized at the origin.
template <class Field>
class PresentedRing {
 public:
  using Poly = Polynomial<Field>;

  PresentedRing(RingPtr<Field> ambient, std::vector<Poly> relations, RingMode mode)
      : ambient_(std::move(ambient)), mode_(mode) {
    for (auto& r : relations) {
      if (r.is_zero()) continue;
      if (!r.ring()->same_signature(*ambient_)) r = r.in_ring(ambient_);
      if (mode_ == RingMode::Graded && !homogeneous_degree(r))
        throw ModeError("graded ring needs homogeneous relations: " + r.to_string());
      if (mode_ == RingMode::Local && !r.ring()->field().is_zero(r.constant_term()))
        throw ModeError("local ring needs relations vanishing at the origin: " + r.to_string());
      relations_.push_back(std::move(r));
    }
    gb_ = buchberger(ambient_, relations_);
    if (gb_.is_unit()) throw std::invalid_argument("defining ideal is the unit ideal");
  }

  static std::shared_ptr<const PresentedRing> make(RingPtr<Field> ambient, std::vector<Poly> relations,
                                                   RingMode mode = RingMode::Graded) {
    return std::make_shared<const PresentedRing>(std::move(ambient), std::move(relations), mode);
  }

  const RingPtr<Field>& ambient() const { return ambient_; }
  const Field& field() const { return ambient_->field(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  RingMode mode() const { return mode_; }
  bool graded() const { return mode_ == RingMode::Graded; }
  const std::vector<Poly>& relations() const { return relations_; }
  const GroebnerBasis<Field>& relations_gb() const { return gb_; }
  bool is_polynomial_ring() const { return gb_.is_zero_ideal(); }

  /// Hilbert series data of R (graded) or of its tangent cone (local).
  const HilbertData& hilbert() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!hilbert_) {
      IntPoly N;
      if (graded()) {
        N = hilbert_numerator(gb_);
      } else {
        N = hilbert_numerator(local_initial_monomials(relations_, ambient_), nvars());
      }
      auto red = reduce_hilbert(N, nvars());
      hilbert_ = HilbertData{red.dim, red.h.at_one().get_si(), red.h, true};
    }
    return *hilbert_;
  }

  std::string to_string() const {
    std::string s = field().name() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->names()[i];
    s += "]";
    if (!relations_.empty()) {
      s += "/(";
      for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + relations_[i].to_string();
      s += ")";
    }
    return s + " " + daolab::to_string(mode_);
  }

 private:
  RingPtr<Field> ambient_;
  std::vector<Poly> relations_;
  RingMode mode_;
  GroebnerBasis<Field> gb_;
  mutable std::mutex mutex_;
  mutable std::optional<HilbertData> hilbert_;
};

template <class Field>
using RingRef = std::shared_ptr<const PresentedRing<Field>>;

/// An ideal of a presented ring, stored through the reduced Groebner basis
/// of (generators) + J in the ambient polynomial ring.
template <class Field>
class Ideal {
 public:
  using Poly = Polynomial<Field>;

  Ideal() = default;
  Ideal(RingRef<Field> R, std::vector<Poly> gens) {
    auto st = std::make_shared<State>();
    st->ring = std::move(R);
    for (auto& g : gens)
      if (!g.is_zero()) st->gens.push_back(g.ring()->same_signature(*st->ring->ambient()) ? g : g.in_ring(st->ring->ambient()));
    st->gb = extend_basis(st->ring->relations_gb(), st->gens);
    state_ = std::move(st);
  }
  /// Trusted constructor: gb must be the reduced basis of gens + J.
  Ideal(RingRef<Field> R, std::vector<Poly> gens, GroebnerBasis<Field> gb) {
    auto st = std::make_shared<State>();
    st->ring = std::move(R);
    st->gens = std::move(gens);
    st->gb = std::move(gb);
    state_ = std::move(st);
  }

  const RingRef<Field>& ring() const { return state_->ring; }
  const RingPtr<Field>& ambient() const { return state_->ring->ambient(); }
  const std::vector<Poly>& gens() const { return state_->gens; }
  const GroebnerBasis<Field>& gb() const { return state_->gb; }
  bool is_unit() const { return state_->gb.is_unit(); }
  /// Equal to J, i.e. the zero ideal of R.
  bool is_zero() const { return state_->gb == state_->ring->relations_gb(); }
  bool contains_globally(const Poly& p) const { return state_->gb.contains(p); }

  /// Basis elements not already in J; they generate the ideal modulo J.
  const std::vector<Poly>& essential() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    if (!state_->essential) {
      std::vector<Poly> out;
      const auto& J = state_->ring->relations_gb();
      for (const auto& g : state_->gb.elements())
        if (!J.contains(g)) out.push_back(g);
      state_->essential = std::move(out);
    }
    return *state_->essential;
  }

  /// Leading monomials contain a pure power of every variable.
  bool zero_dimensional() const {
    std::size_t n = ambient()->nvars();
    std::vector<bool> hit(n, false);
    for (const auto& m : state_->gb.leading_monomials()) {
      if (m.is_one()) return true;
      std::size_t support = 0, var = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (m[v] > 0) {
          ++support;
          var = v;
        }
      if (support == 1) hit[var] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  /// The zero set is the origin alone, so that localizing at the origin
  /// does not change the ideal.
  bool primary_to_origin() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    if (!state_->origin_primary) state_->origin_primary = compute_origin_primary();
    return *state_->origin_primary;
  }

  std::string to_string() const {
    const auto& gs = state_->gens.empty() ? essential() : state_->gens;
    std::string s = "(";
    for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? ", " : "") + gs[i].to_string();
    return s + ")";
  }

 private:
  bool compute_origin_primary() const {
    if (is_unit()) return false;
    if (!zero_dimensional()) return false;
    auto std_monos = standard_monomials(state_->gb.leading_monomials(), ambient()->nvars());
    int D = static_cast<int>(std_monos.size());
    for (std::size_t v = 0; v < ambient()->nvars(); ++v) {
      Poly p = Poly::monomial(ambient(), Monomial::variable(v, std::max(1, D)), ambient()->field().one());
      if (!state_->gb.contains(p)) return false;
    }
    return true;
  }

  struct State {
    RingRef<Field> ring;
    std::vector<Poly> gens;
    GroebnerBasis<Field> gb;
    std::mutex mutex;
    std::optional<std::vector<Poly>> essential;
    std::optional<bool> origin_primary;
  };
  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------
// Construction

/// Convenience constructor from text, e.g. make_ring(F, {"x","y","z"}, {"z^2 - x*y"}).
template <class Field>
RingRef<Field> make_ring(const Field& field, std::vector<std::string> names,
                         const std::vector<std::string>& relations = {}, RingMode mode = RingMode::Graded) {
  auto ambient = PolyRing<Field>::make(field, std::move(names));
  std::vector<Polynomial<Field>> rel;
  for (const auto& r : relations) rel.push_back(parse_polynomial(ambient, r));
  return PresentedRing<Field>::make(ambient, std::move(rel), mode);
}

template <class Field>
Polynomial<Field> poly(const RingRef<Field>& R, const std::string& text) {
  return parse_polynomial(R->ambient(), text);
}

template <class Field>
Ideal<Field> make_ideal(const RingRef<Field>& R, const std::vector<std::string>& gens) {
  std::vector<Polynomial<Field>> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(R->ambient(), g));
  return Ideal<Field>(R, std::move(ps));
}

template <class Field>
Ideal<Field> make_ideal(const RingRef<Field>& R, std::vector<Polynomial<Field>> gens) {
  return Ideal<Field>(R, std::move(gens));
}

template <class Field>
Ideal<Field> max_ideal(const RingRef<Field>& R) {
  std::vector<Polynomial<Field>> vars;
  for (std::size_t i = 0; i < R->nvars(); ++i) vars.push_back(Polynomial<Field>::variable(R->ambient(), i));
  return Ideal<Field>(R, std::move(vars));
}

template <class Field>
Ideal<Field> unit_ideal(const RingRef<Field>& R) {
  return Ideal<Field>(R, {Polynomial<Field>::constant(R->ambient(), R->field().one())});
}

template <class Field>
Ideal<Field> zero_ideal(const RingRef<Field>& R) {
  return Ideal<Field>(R, {}, R->relations_gb());
}

template <class Field>
void check_same_ring(const Ideal<Field>& A, const Ideal<Field>& B) {
  if (A.ring() != B.ring() && !A.ambient()->same_signature(*B.ambient()))
    throw SignatureMismatch("ideals of different rings");
}

// ---------------------------------------------------------------------------
// Arithmetic

template <class Field>
Ideal<Field> ideal_sum(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  auto gens = A.gens();
  gens.insert(gens.end(), B.gens().begin(), B.gens().end());
  auto gb = extend_basis(A.gb(), B.essential());
  return Ideal<Field>(A.ring(), std::move(gens), std::move(gb));
}

/// A*B + J from the products of the essential basis elements.
template <class Field>
Ideal<Field> ideal_product(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  if (A.is_unit()) return B;
  if (B.is_unit()) return A;
  std::vector<Polynomial<Field>> prods;
  const auto& ea = A.essential();
  const auto& eb = B.essential();
  prods.reserve(ea.size() * eb.size());
  for (const auto& a : ea)
    for (const auto& b : eb) prods.push_back(a * b);
  auto gb = extend_basis(A.ring()->relations_gb(), prods);
  return Ideal<Field>(A.ring(), {}, std::move(gb));
}

template <class Field>
Ideal<Field> ideal_power(const Ideal<Field>& A, int k) {
  if (k < 0) throw std::invalid_argument("negative ideal power");
  Ideal<Field> r = unit_ideal(A.ring());
  for (int i = 0; i < k; ++i) r = ideal_product(r, A);
  return r;
}

/// Global inclusion A subset B.
template <class Field>
bool globally_contained(const Ideal<Field>& A, const Ideal<Field>& B) {
  return B.gb().contains_all(A.essential());
}

namespace detail {

/// (A : (b_1..b_r)) for zero-dimensional A by linear algebra on S/A: the
/// kernel of u |-> (u b_1, ..., u b_r) lifted to S, plus A.
template <class Field>
Ideal<Field> colon_zero_dimensional(const Ideal<Field>& A, const std::vector<Polynomial<Field>>& bs) {
  using Poly = Polynomial<Field>;
  const auto& ring = A.ambient();
  auto basis = standard_monomials(A.gb().leading_monomials(), ring->nvars());
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t D = basis.size();
  IncrementalEchelon<Field> ech(ring->field());
  std::vector<Poly> kernel;
  for (std::size_t u = 0; u < D; ++u) {
    SparseVector<Field> v;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      Poly img = A.gb().normal_form(bs[i].times_term(basis[u], ring->field().one()));
      for (const auto& t : img.terms()) v.push_back({i * D + index.at(t.mono), t.coeff});
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto rel = ech.add(std::move(v));
    if (!rel) continue;
    std::vector<Term<Field>> terms;
    for (const auto& [k, c] : *rel) terms.push_back({basis[k], c});
    kernel.push_back(Poly(ring, std::move(terms)));
  }
  auto gb = extend_basis(A.gb(), kernel);
  return Ideal<Field>(A.ring(), {}, std::move(gb));
}

}  // namespace detail

template <class Field>
Ideal<Field> ideal_intersect(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  if (globally_contained(A, B)) return A;
  if (globally_contained(B, A)) return B;
  auto gens = intersect_generators(A.gb().elements(), B.gb().elements(), A.ambient());
  return Ideal<Field>(A.ring(), std::move(gens));
}

/// {u : u*bs subset A} in the ambient ring (J subset A makes this the colon in R).
template <class Field>
Ideal<Field> ideal_colon(const Ideal<Field>& A, const std::vector<Polynomial<Field>>& bs) {
  std::vector<Polynomial<Field>> outside;
  for (const auto& b : bs)
    if (!A.gb().contains(b)) outside.push_back(b);
  if (outside.empty()) return unit_ideal(A.ring());
  if (A.zero_dimensional()) return detail::colon_zero_dimensional(A, outside);
  std::optional<Ideal<Field>> acc;
  for (const auto& b : outside) {
    Ideal<Field> c(A.ring(), colon_by_element(A.gb().elements(), b, A.ambient()));
    acc = acc ? ideal_intersect(*acc, c) : c;
  }
  return *acc;
}

template <class Field>
Ideal<Field> ideal_colon(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  return ideal_colon(A, B.essential());
}

template <class Field>
Ideal<Field> ideal_colon(const Ideal<Field>& A, const Polynomial<Field>& f) {
  return ideal_colon(A, std::vector<Polynomial<Field>>{f});
}

// ---------------------------------------------------------------------------
// Mode-aware comparison

/// Some element of the ideal is a unit at the origin.
template <class Field>
bool meets_units_at_origin(const Ideal<Field>& A) {
  for (const auto& g : A.gb().elements())
    if (!g.field().is_zero(g.constant_term())) return true;
  return false;
}

/// p lies in the localization of A at the origin: (A : p) is not inside m.
template <class Field>
bool locally_contains(const Ideal<Field>& A, const Polynomial<Field>& p) {
  if (A.gb().contains(p)) return true;
  if (A.primary_to_origin()) return false;
  return meets_units_at_origin(ideal_colon(A, p));
}

template <class Field>
bool locally_contained(const Ideal<Field>& A, const Ideal<Field>& B) {
  if (B.primary_to_origin()) return globally_contained(A, B);
  for (const auto& a : A.essential())
    if (!locally_contains(B, a)) return false;
  return true;
}

/// Equality after localization at the origin (local mode only).
template <class Field>
bool localized_equal(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  if (A.ring()->mode() != RingMode::Local) throw ModeError("localized_equal needs a local-mode ring");
  if (A.gb() == B.gb()) return true;
  return locally_contained(A, B) && locally_contained(B, A);
}

/// Equality in R: Groebner bases (graded) or localized equality (local).
template <class Field>
bool ideals_equal(const Ideal<Field>& A, const Ideal<Field>& B) {
  check_same_ring(A, B);
  if (A.ring()->mode() == RingMode::Graded) return A.gb() == B.gb();
  return localized_equal(A, B);
}

/// Inclusion in R, mode-aware.
template <class Field>
bool ideal_subset(const Ideal<Field>& A, const Ideal<Field>& B) {
  if (A.ring()->mode() == RingMode::Graded) return globally_contained(A, B);
  return locally_contained(A, B);
}

template <class Field>
bool ideal_contains(const Ideal<Field>& A, const Polynomial<Field>& p) {
  if (A.ring()->mode() == RingMode::Graded) return A.gb().contains(p);
  return locally_contains(A, p);
}

/// Proper ideal of R (local mode: contained in the maximal ideal).
template <class Field>
bool is_proper(const Ideal<Field>& A) {
  if (A.is_unit()) return false;
  if (A.ring()->mode() == RingMode::Local) return !meets_units_at_origin(A);
  return true;
}

// ---------------------------------------------------------------------------
// Ring invariants

template <class Field>
int dimension(const RingRef<Field>& R) {
  return R->hilbert().dimension;
}

template <class Field>
long multiplicity(const RingRef<Field>& R) {
  return R->hilbert().multiplicity;
}

/// mu(m) = n - rank of the linear parts of J.
template <class Field>
int embedding_dimension(const RingRef<Field>& R) {
  const auto& F = R->field();
  IncrementalEchelon<Field> ech(F);
  std::vector<Polynomial<Field>> gens = R->relations_gb().elements();
  for (const auto& r : R->relations()) gens.push_back(r);
  for (const auto& g : gens) {
    SparseVector<Field> v;
    for (const auto& t : g.terms())
      if (t.mono.degree() == 1)
        for (std::size_t i = 0; i < R->nvars(); ++i)
          if (t.mono[i] == 1) v.push_back({i, t.coeff});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!v.empty()) ech.add(std::move(v));
  }
  return static_cast<int>(R->nvars() - ech.rank());
}

template <class Field>
bool has_minimal_multiplicity(const RingRef<Field>& R) {
  return multiplicity(R) == embedding_dimension(R) - dimension(R) + 1;
}

template <class Field>
bool is_regular_ring(const RingRef<Field>& R) {
  return embedding_dimension(R) == dimension(R);
}

/// m contains a non-zerodivisor: (J : m) = J.
template <class Field>
bool depth_positive(const RingRef<Field>& R) {
  auto Z = zero_ideal(R);
  return ideals_equal(ideal_colon(Z, max_ideal(R)), Z);
}

/// Hilbert-Samuel length dim_K R/m^N.
template <class Field>
long hilbert_samuel(const RingRef<Field>& R, int N) {
  return kbasis_modulo_power(R->relations(), R->ambient(), N);
}

/// Minimal generators of A modulo J. Graded mode: homogeneous, by degree.
/// Local mode: g is kept unless it lies in (kept) + mA after localizing.
template <class Field>
std::vector<Polynomial<Field>> minimal_generators(const Ideal<Field>& A) {
  std::vector<Polynomial<Field>> cand = A.gens().empty() ? A.essential() : A.gens();
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Polynomial<Field>& a, const Polynomial<Field>& b) { return a.degree() < b.degree(); });
  if (A.ring()->mode() == RingMode::Local) {
    std::vector<Polynomial<Field>> out;
    Ideal<Field> cur = ideal_product(max_ideal(A.ring()), A);
    for (const auto& g : cand) {
      if (locally_contains(cur, g)) continue;
      out.push_back(g);
      cur = ideal_sum(cur, make_ideal(A.ring(), std::vector<Polynomial<Field>>{g}));
    }
    return out;
  }
  std::vector<Polynomial<Field>> out;
  GroebnerBasis<Field> cur = A.ring()->relations_gb();
  for (const auto& g : cand) {
    if (cur.contains(g)) continue;
    out.push_back(g);
    cur = extend_basis(cur, {g});
  }
  return out;
}

/// d-sequence test: no element in the ideal of the others, and
/// 0 : x1 xj = 0 : xj, (x1..xi) : x_{i+1} xj = (x1..xi) : xj.
template <class Field>
bool is_d_sequence(const RingRef<Field>& R, const std::vector<Polynomial<Field>>& xs) {
  if (xs.empty()) throw std::invalid_argument("d-sequence test needs at least one element");
  const std::size_t m = xs.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Polynomial<Field>> others;
    for (std::size_t k = 0; k < m; ++k)
      if (k != i) others.push_back(xs[k]);
    if (ideal_contains(make_ideal(R, others), xs[i])) return false;
  }
  auto Z = zero_ideal(R);
  for (std::size_t j = 0; j < m; ++j)
    if (!ideals_equal(ideal_colon(Z, xs[0] * xs[j]), ideal_colon(Z, xs[j]))) return false;
  for (std::size_t i = 1; i < m; ++i) {
    Ideal<Field> P = make_ideal(R, std::vector<Polynomial<Field>>(xs.begin(), xs.begin() + static_cast<long>(i)));
    for (std::size_t j = i; j < m; ++j)
      if (!ideals_equal(ideal_colon(P, xs[i] * xs[j]), ideal_colon(P, xs[j]))) return false;
  }
  return true;
}

}  // namespace daolab

#endif  // DAOLAB_IDEAL_HPP
