#ifndef DAOLAB_POLYNOMIAL_HPP
#define DAOLAB_POLYNOMIAL_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"
#include "order.hpp"

namespace daolab {

/// Thrown when operands live in different rings.
class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Variable names, coefficient field and monomial order. A ring with
/// component shifts models a graded free module over the polynomial ring.
template <class Field>
class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> names, MonomialOrder order)
      : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)) {
    if (names_.size() > kMaxVars) throw std::length_error("too many variables");
    if (order_.nvars() != names_.size()) throw std::invalid_argument("order arity does not match variables");
  }

  static std::shared_ptr<const PolyRing> make(Field field, std::vector<std::string> names) {
    auto n = names.size();
    return std::make_shared<const PolyRing>(std::move(field), std::move(names), MonomialOrder::degrevlex(n));
  }

  const Field& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t nvars() const { return names_.size(); }
  const MonomialOrder& order() const { return order_; }
  std::size_t rank() const { return order_.rank(); }

  /// Same variables and field, different order (or module structure).
  std::shared_ptr<const PolyRing> with_order(MonomialOrder order) const {
    return std::make_shared<const PolyRing>(field_, names_, std::move(order));
  }
  /// Free module of the given rank with degree shifts, term-over-position.
  std::shared_ptr<const PolyRing> free_module(std::vector<int> shifts) const {
    MonomialOrder base(order_.kind(), order_.nvars(), order_.block());
    return with_order(base.with_shifts(std::move(shifts)));
  }
  /// Rank-one ring with the same variables and base order.
  std::shared_ptr<const PolyRing> base_ring() const {
    return with_order(MonomialOrder(order_.kind(), order_.nvars(), order_.block()));
  }

  bool same_signature(const PolyRing& o) const {
    return this == &o || (field_ == o.field_ && names_ == o.names_ && order_ == o.order_);
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

 private:
  Field field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <class Field>
using RingPtr = std::shared_ptr<const PolyRing<Field>>;

template <class Field>
struct Term {
  Monomial mono;
  typename Field::Element coeff;
};

/// Sparse polynomial (or free-module vector) with terms kept strictly
/// decreasing in the ring's order; no zero coefficients are stored.
template <class Field>
class Polynomial {
 public:
  using Coeff = typename Field::Element;
  using TermT = Term<Field>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<Field> ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr<Field> ring, std::vector<TermT> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(RingPtr<Field> ring, const Coeff& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static Polynomial monomial(RingPtr<Field> ring, const Monomial& m, const Coeff& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  static Polynomial variable(RingPtr<Field> ring, std::size_t i) {
    auto one = ring->field().one();
    return monomial(std::move(ring), Monomial::variable(i), one);
  }
  /// Terms are assumed sorted and nonzero already.
  static Polynomial from_sorted(RingPtr<Field> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<Field>& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  const TermT& lead() const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    return terms_.front();
  }
  const Monomial& lead_monomial() const { return lead().mono; }
  const Coeff& lead_coeff() const { return lead().coeff; }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Coefficient of the monomial 1 in component 0 (the value at the origin).
  Coeff constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one() && terms_.back().mono.component() == 0)
      return terms_.back().coeff;
    return field().zero();
  }
  Coeff coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return field().zero();
  }

  /// Highest total degree of a term (module shifts ignored); -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  /// Lowest total degree of a term; -1 for zero.
  int order_at_origin() const {
    if (terms_.empty()) return -1;
    int d = terms_.front().mono.degree();
    for (const auto& t : terms_) d = std::min(d, t.mono.degree());
    return d;
  }
  int shifted_degree() const { return ring_->order().shifted_degree(lead_monomial()); }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const auto& ord = ring_->order();
    int d = ord.shifted_degree(terms_.front().mono);
    for (const auto& t : terms_)
      if (ord.shifted_degree(t.mono) != d) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial scaled(const Coeff& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
    return r;
  }

  /// Product with c*m; m must be a ring monomial (component 0). Monomial
  /// orders are multiplicative, so sortedness is preserved.
  Polynomial times_term(const Monomial& m, const Coeff& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
    return r;
  }

  /// Product of a polynomial or module vector with a ring polynomial `o`
  /// (rank one, same variables). The result lives in this ring.
  Polynomial operator*(const Polynomial& o) const {
    if (ring_->nvars() != o.ring_->nvars() || !(field() == o.field()))
      throw SignatureMismatch("multiplying polynomials from different rings");
    if (o.ring_->rank() != 1 && ring_->rank() == 1) return o * (*this);
    if (is_zero() || o.is_zero()) return Polynomial(ring_);
    if (o.size() == 1) return times_term(o.terms_[0].mono, o.terms_[0].coeff);
    if (size() == 1 && ring_->rank() == 1 && o.ring_->same_signature(*ring_))
      return o.times_term(terms_[0].mono, terms_[0].coeff);
    std::vector<TermT> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, field().mul(a.coeff, b.coeff)});
    return Polynomial(ring_, std::move(prod));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Divide by the leading coefficient.
  Polynomial monic() const {
    if (is_zero() || field().is_one(lead_coeff())) return *this;
    return scaled(field().inv(lead_coeff()));
  }

  /// Re-sort under another ring with the same variables and field.
  Polynomial in_ring(RingPtr<Field> other) const {
    if (other->nvars() != ring_->nvars() || !(other->field() == field()))
      throw SignatureMismatch("cannot move polynomial between incompatible rings");
    return Polynomial(std::move(other), terms_);
  }

  /// Component `c` of a module vector as a rank-one polynomial.
  Polynomial component(int c, const RingPtr<Field>& base) const {
    std::vector<TermT> out;
    for (const auto& t : terms_)
      if (t.mono.component() == c) out.push_back({t.mono.with_component(0), t.coeff});
    return Polynomial(base, std::move(out));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    const auto& names = ring_->names();
    bool module = ring_->rank() > 1;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      bool neg = field().is_negative(t.coeff);
      std::string c = field().to_string(neg ? field().neg(t.coeff) : t.coeff);
      if (i == 0) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      std::string m = t.mono.to_string(names);
      if (m == "1") {
        s += c;
      } else if (c == "1") {
        s += m;
      } else {
        s += c + "*" + m;
      }
      if (module) s += "*e" + std::to_string(t.mono.component() + 1);
    }
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono) return false;
      if (!a.field().equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    }
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Mutable access for algorithms that maintain sortedness themselves.
  std::vector<TermT>& raw_terms() { return terms_; }

 private:
  void normalize() {
    const auto& ord = ring_->order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const TermT& a, const TermT& b) { return ord.greater(a.mono, b.mono); });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = field().add(out.back().coeff, t.coeff);
      } else {
        if (!out.empty() && field().is_zero(out.back().coeff)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && field().is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
  }

  Polynomial combine(const Polynomial& o, bool subtract) const {
    if (!ring_->same_signature(*o.ring_)) throw SignatureMismatch("adding polynomials from different rings");
    const auto& ord = ring_->order();
    const auto& F = field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size()) c = -1;
      else if (j == o.terms_.size()) c = 1;
      else c = ord.compare(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? F.neg(t.coeff) : t.coeff});
      } else {
        Coeff v = subtract ? F.sub(terms_[i].coeff, o.terms_[j].coeff) : F.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!F.is_zero(v)) r.terms_.push_back({terms_[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<Field> ring_;
  std::vector<TermT> terms_;
};

/// p - c*m*g, merging in one pass. m is a ring monomial.
template <class Field>
Polynomial<Field> sub_multiple(const Polynomial<Field>& p, const typename Field::Element& c, const Monomial& m,
                               const Polynomial<Field>& g) {
  const auto& F = p.field();
  const auto& ord = p.ring()->order();
  const auto& a = p.terms();
  const auto& b = g.terms();
  std::vector<Term<Field>> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  std::optional<Monomial> bm;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !bm) bm = b[j].mono * m;
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = ord.compare(a[i].mono, *bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({*bm, F.neg(F.mul(c, b[j].coeff))});
      ++j;
      bm.reset();
    } else {
      auto v = F.sub(a[i].coeff, F.mul(c, b[j].coeff));
      if (!F.is_zero(v)) out.push_back({a[i].mono, std::move(v)});
      ++i;
      ++j;
      bm.reset();
    }
  }
  return Polynomial<Field>::from_sorted(p.ring(), std::move(out));
}

/// Order-maximal term of p under an arbitrary order.
template <class Field>
Term<Field> leading_term(const Polynomial<Field>& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw std::domain_error("leading term of the zero polynomial");
  const Term<Field>* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (ord.greater(t.mono, best->mono)) best = &t;
  return *best;
}

/// Common total degree of all terms: nullopt for inhomogeneous input,
/// kNegativeInfinity for the zero polynomial.
inline constexpr int kNegativeInfinity = -1000000;

template <class Field>
std::optional<int> homogeneous_degree(const Polynomial<Field>& p) {
  if (p.is_zero()) return kNegativeInfinity;
  int d = p.terms().front().mono.degree();
  for (const auto& t : p.terms())
    if (t.mono.degree() != d) return std::nullopt;
  return d;
}

/// Sum c_i x_i with independently drawn coefficients, not all zero.
template <class Field>
Polynomial<Field> random_linear_form(const RingPtr<Field>& ring, std::mt19937_64& rng) {
  if (ring->nvars() == 0) throw std::invalid_argument("random linear form needs at least one variable");
  const auto& F = ring->field();
  for (;;) {
    std::vector<Term<Field>> terms;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      auto c = F.random(rng);
      if (!F.is_zero(c)) terms.push_back({Monomial::variable(i), c});
    }
    if (!terms.empty()) return Polynomial<Field>(ring, std::move(terms));
  }
}

/// Evaluate the substitution x_i -> images[i] (images in a common ring).
template <class Field>
Polynomial<Field> substitute(const Polynomial<Field>& p, const std::vector<Polynomial<Field>>& images,
                             const RingPtr<Field>& target) {
  Polynomial<Field> result(target);
  std::vector<std::vector<Polynomial<Field>>> powers(images.size());
  auto power = [&](std::size_t i, int e) -> const Polynomial<Field>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<Field>::constant(target, target->field().one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  for (const auto& t : p.terms()) {
    auto term = Polynomial<Field>::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

}  // namespace daolab

#endif  // DAOLAB_POLYNOMIAL_HPP
