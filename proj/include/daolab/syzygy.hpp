#ifndef DAOLAB_SYZYGY_HPP
#define DAOLAB_SYZYGY_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"
#include "polynomial.hpp"

namespace daolab {

/// Generators of the syzygy module of a tuple (f_1..f_s), as vectors in a
/// free module of rank s whose k-th basis vector has degree deg f_k.
template <class Field>
struct SyzygyBasis {
  RingPtr<Field> module_ring;
  std::vector<Polynomial<Field>> generators;
};

/// Schreyer syzygies read off the Groebner trace of the tuple.
template <class Field>
SyzygyBasis<Field> syzygy_basis(const std::vector<Polynomial<Field>>& tuple, const RingPtr<Field>& ring) {
  std::vector<int> shifts;
  shifts.reserve(tuple.size());
  for (const auto& f : tuple) shifts.push_back(f.is_zero() ? 0 : f.shifted_degree());
  if (shifts.empty()) return {ring->base_ring()->free_module({0}), {}};
  auto trace_ring = ring->base_ring()->free_module(shifts);
  GroebnerEngine<Field> engine(ring, trace_ring);
  for (const auto& f : tuple) engine.add_generator(f);
  engine.run();
  auto syz = engine.syzygies(tuple);
  return {trace_ring, std::move(syz)};
}

/// Rename/reorder variables: variable i of p becomes variable perm[i] of target.
template <class Field>
Polynomial<Field> remap_variables(const Polynomial<Field>& p, const std::vector<std::size_t>& perm,
                                  const RingPtr<Field>& target) {
  std::vector<Term<Field>> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (t.mono[i] != 0) m.set(perm[i], t.mono[i]);
    terms.push_back({m.with_component(t.mono.component()), t.coeff});
  }
  return Polynomial<Field>(target, std::move(terms));
}

/// A name not clashing with any variable of the ring.
inline std::string fresh_name(const std::vector<std::string>& names, const std::string& base) {
  std::string s = base;
  while (std::find(names.begin(), names.end(), s) != names.end()) s = "_" + s;
  return s;
}

/// Generators of (gens) intersected with the subring of variables not in
/// `block`, computed with a block-elimination order. Results live in the
/// input ring.
template <class Field>
std::vector<Polynomial<Field>> eliminate(const std::vector<Polynomial<Field>>& gens, const RingPtr<Field>& ring,
                                         const std::vector<std::size_t>& block) {
  std::size_t n = ring->nvars();
  std::vector<bool> in_block(n, false);
  for (auto b : block) in_block.at(b) = true;
  std::vector<std::size_t> perm(n), inverse(n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (in_block[i]) perm[i] = pos++;
  std::size_t nb = pos;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_block[i]) perm[i] = pos++;
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[perm[i]] = ring->names()[i];
    inverse[perm[i]] = i;
  }
  auto elim = std::make_shared<const PolyRing<Field>>(ring->field(), names, MonomialOrder::elimination(n, nb));
  std::vector<Polynomial<Field>> moved;
  for (const auto& g : gens) moved.push_back(remap_variables(g, perm, elim));
  auto G = buchberger(elim, moved);
  std::vector<Polynomial<Field>> out;
  for (const auto& g : G.elements()) {
    bool free = true;
    for (const auto& t : g.terms())
      if (t.mono.partial_degree(0, nb) != 0) {
        free = false;
        break;
      }
    if (free) out.push_back(remap_variables(g, inverse, ring));
  }
  return out;
}

/// Ring with the fresh variables placed before the existing ones.
template <class Field>
RingPtr<Field> prepend_variables(const RingPtr<Field>& ring, const std::vector<std::string>& fresh,
                                 MonomialOrder order) {
  std::vector<std::string> names = fresh;
  for (const auto& n : ring->names()) names.push_back(n);
  return std::make_shared<const PolyRing<Field>>(ring->field(), std::move(names), std::move(order));
}

inline std::vector<std::size_t> shift_map(std::size_t n, std::size_t by) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i + by;
  return perm;
}

/// Ideal intersection via t*A + (1-t)*B and elimination of t.
template <class Field>
std::vector<Polynomial<Field>> intersect_generators(const std::vector<Polynomial<Field>>& A,
                                                    const std::vector<Polynomial<Field>>& B,
                                                    const RingPtr<Field>& ring) {
  using Poly = Polynomial<Field>;
  std::size_t n = ring->nvars();
  auto big = prepend_variables(ring, {fresh_name(ring->names(), "t")}, MonomialOrder::elimination(n + 1, 1));
  auto up = shift_map(n, 1);
  Poly t = Poly::variable(big, 0);
  Poly one_minus_t = Poly::constant(big, big->field().one()) - t;
  std::vector<Poly> gens;
  for (const auto& a : A)
    if (!a.is_zero()) gens.push_back(t * remap_variables(a, up, big));
  for (const auto& b : B)
    if (!b.is_zero()) gens.push_back(one_minus_t * remap_variables(b, up, big));
  auto G = buchberger(big, gens);
  std::vector<Poly> out;
  for (const auto& g : G.elements()) {
    bool free = true;
    for (const auto& term : g.terms())
      if (term.mono[0] != 0) {
        free = false;
        break;
      }
    if (!free) continue;
    std::vector<Term<Field>> terms;
    for (const auto& term : g.terms()) {
      Monomial m;
      for (std::size_t i = 0; i < n; ++i)
        if (term.mono[i + 1] != 0) m.set(i, term.mono[i + 1]);
      terms.push_back({m, term.coeff});
    }
    out.push_back(Poly(ring, std::move(terms)));
  }
  return out;
}

/// Exact quotient p / f; throws if f does not divide p.
template <class Field>
Polynomial<Field> exact_divide(Polynomial<Field> p, const Polynomial<Field>& f) {
  if (f.is_zero()) throw std::domain_error("division by zero polynomial");
  const auto& F = p.field();
  Polynomial<Field> q(p.ring());
  while (!p.is_zero()) {
    const auto& lt = p.lead();
    if (!f.lead_monomial().divides(lt.mono)) throw std::domain_error("inexact polynomial division");
    Monomial m = f.lead_monomial().quotient_of(lt.mono);
    auto c = F.div(lt.coeff, f.lead_coeff());
    q += Polynomial<Field>::monomial(p.ring(), m, c);
    p = sub_multiple(p, c, m, f);
  }
  return q;
}

/// Generators of (A : f) for a polynomial f, via (A intersect (f)) / f.
template <class Field>
std::vector<Polynomial<Field>> colon_by_element(const std::vector<Polynomial<Field>>& A, const Polynomial<Field>& f,
                                                const RingPtr<Field>& ring) {
  if (f.is_zero()) return {Polynomial<Field>::constant(ring, ring->field().one())};
  auto inter = intersect_generators(A, {f}, ring);
  std::vector<Polynomial<Field>> out;
  for (const auto& g : inter) out.push_back(exact_divide(g, f));
  return out;
}

/// Standard basis for the local degree order, by Lazard's method: the
/// reduced basis of the homogenized generators under a degree-then-largest-h
/// order, dehomogenized. Lowest-degree terms lead.
template <class Field>
std::vector<Polynomial<Field>> local_standard_basis(const std::vector<Polynomial<Field>>& gens, const RingPtr<Field>& ring) {
  using Poly = Polynomial<Field>;
  std::size_t n = ring->nvars();
  auto names = ring->names();
  names.push_back(fresh_name(names, "h"));
  auto hring = std::make_shared<const PolyRing<Field>>(ring->field(), names, MonomialOrder::homogenized_local(n + 1));
  std::vector<Poly> hom;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int d = g.degree();
    std::vector<Term<Field>> terms;
    for (const auto& t : g.terms()) {
      Monomial m = t.mono;
      m.set(n, d - t.mono.degree());
      terms.push_back({m, t.coeff});
    }
    hom.push_back(Poly(hring, std::move(terms)));
  }
  auto G = buchberger(hring, hom);
  std::vector<Poly> out;
  for (const auto& g : G.elements()) {
    std::vector<Term<Field>> terms;
    for (const auto& t : g.terms()) {
      Monomial m = t.mono;
      m.set(n, 0);
      terms.push_back({m, t.coeff});
    }
    out.push_back(Poly(ring, std::move(terms)));
  }
  return out;
}

/// Lowest-degree homogeneous part.
template <class Field>
Polynomial<Field> initial_form(const Polynomial<Field>& p) {
  if (p.is_zero()) return p;
  int lo = p.degree();
  for (const auto& t : p.terms()) lo = std::min(lo, static_cast<int>(t.mono.degree()));
  std::vector<Term<Field>> ts;
  for (const auto& t : p.terms())
    if (static_cast<int>(t.mono.degree()) == lo) ts.push_back(t);
  return Polynomial<Field>(p.ring(), std::move(ts));
}

/// Local initial monomial ideal of (gens); computes Hilbert-Samuel
/// functions exactly.
template <class Field>
std::vector<Monomial> local_initial_monomials(const std::vector<Polynomial<Field>>& gens, const RingPtr<Field>& ring) {
  std::vector<Monomial> out;
  for (const auto& g : local_standard_basis(gens, ring)) out.push_back(initial_form(g).lead_monomial());
  return out;
}

/// dim_K S/((gens) + m^N) with m the ideal of the origin.
template <class Field>
long kbasis_modulo_power(const std::vector<Polynomial<Field>>& gens, const RingPtr<Field>& ring, int N) {
  if (N <= 0) return 0;
  return count_standard_below(local_initial_monomials(gens, ring), ring->nvars(), N);
}

template <class Field>
long kbasis_modulo_power(const GroebnerBasis<Field>& G, int N) {
  return kbasis_modulo_power(G.elements(), G.ring(), N);
}

}  // namespace daolab

#endif  // DAOLAB_SYZYGY_HPP
