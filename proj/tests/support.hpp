#ifndef DAOLAB_TESTS_SUPPORT_HPP
#define DAOLAB_TESTS_SUPPORT_HPP

// Independent oracles and generators shared by the test binaries. Nothing
// here calls the Groebner engine: membership and syzygies are decided by
// plain linear algebra over degree-bounded monomial spans.

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <daolab/field.hpp>
#include <daolab/linalg.hpp>
#include <daolab/monomial.hpp>
#include <daolab/parse.hpp>
#include <daolab/polynomial.hpp>

namespace daolab::testing {

using Fp = PrimeField;
using Qf = RationalField;

inline std::vector<std::string> var_names(std::size_t n) {
  static const char* letters[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? letters[i] : "x" + std::to_string(i + 1));
  return out;
}

template <class Field>
RingPtr<Field> ring_of(std::size_t n, Field F = Field()) {
  return PolyRing<Field>::make(F, var_names(n));
}

template <class Field>
Polynomial<Field> P(const RingPtr<Field>& r, const std::string& s) {
  return parse_polynomial(r, s);
}

/// Random polynomial with up to `terms` terms of degree <= maxdeg.
template <class Field>
Polynomial<Field> random_poly(const RingPtr<Field>& r, std::mt19937_64& rng, int maxdeg, int terms) {
  std::vector<Term<Field>> ts;
  for (int k = 0; k < terms; ++k) {
    int d = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(maxdeg) + 1));
    auto monos = monomials_of_degree(r->nvars(), d);
    const auto& m = monos[draw_below(rng, monos.size())];
    ts.push_back({m, r->field().random(rng)});
  }
  return Polynomial<Field>(r, std::move(ts));
}

/// Random homogeneous form of degree d with every monomial present.
template <class Field>
Polynomial<Field> random_form(const RingPtr<Field>& r, std::mt19937_64& rng, int d) {
  std::vector<Term<Field>> ts;
  for (const auto& m : monomials_of_degree(r->nvars(), d)) ts.push_back({m, r->field().random(rng)});
  return Polynomial<Field>(r, std::move(ts));
}

/// Coordinates of polynomials in the monomial basis of degree <= D.
template <class Field>
class MonomialCoordinates {
 public:
  MonomialCoordinates(std::size_t n, int D) {
    for (int d = 0; d <= D; ++d)
      for (const auto& m : monomials_of_degree(n, d)) {
        index_[m] = basis_.size();
        basis_.push_back(m);
      }
  }
  SparseVector<Field> vec(const Polynomial<Field>& p) const {
    SparseVector<Field> v;
    for (const auto& t : p.terms()) v.push_back({index_.at(t.mono), t.coeff});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }
  const std::vector<Monomial>& basis() const { return basis_; }

 private:
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// Is p in the K-span of {u*g : g in gens, u monomial, deg(u*g) <= D}?
/// For homogeneous generators and deg p <= D this is exact ideal membership.
template <class Field>
bool brute_member(const std::vector<Polynomial<Field>>& gens, const Polynomial<Field>& p, int D) {
  const auto& ring = p.ring();
  std::size_t n = ring->nvars();
  MonomialCoordinates<Field> coords(n, D);
  IncrementalEchelon<Field> ech(ring->field());
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int room = D - g.degree();
    for (int d = 0; d <= room; ++d)
      for (const auto& u : monomials_of_degree(n, d)) ech.add(coords.vec(g.times_term(u, ring->field().one())));
  }
  std::size_t before = ech.rank();
  ech.add(coords.vec(p));
  return ech.rank() == before;
}

/// Dimension of the degree-d part of the span of monomial multiples of gens.
template <class Field>
long brute_ideal_dim_in_degree(const std::vector<Polynomial<Field>>& gens, std::size_t n, int d, const Field& F) {
  MonomialCoordinates<Field> coords(n, d);
  IncrementalEchelon<Field> ech(F);
  for (const auto& g : gens) {
    auto hd = homogeneous_degree(g);
    if (!hd || *hd > d || *hd < 0) continue;
    for (const auto& u : monomials_of_degree(n, d - *hd)) ech.add(coords.vec(g.times_term(u, F.one())));
  }
  return static_cast<long>(ech.rank());
}

inline long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace daolab::testing

#endif  // DAOLAB_TESTS_SUPPORT_HPP
