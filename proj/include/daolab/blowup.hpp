#ifndef DAOLAB_BLOWUP_HPP
#define DAOLAB_BLOWUP_HPP

#include <string>
#include <vector>

#include "ideal.hpp"
#include "resolution.hpp"
#include "syzygy.hpp"

namespace daolab {

/// R(m) = K[x, y]/L with y_i -> t*x_i. Variables x_1..x_n come first.
template <class Field>
struct ReesPresentation {
  RingPtr<Field> ring;
  std::size_t n = 0;
  std::vector<Polynomial<Field>> relations;  // reduced basis of L

  std::vector<std::string> y_names() const {
    return std::vector<std::string>(ring->names().begin() + static_cast<long>(n), ring->names().end());
  }
};

/// K[y_1..y_n]/L0 presenting the fiber cone R(m)/mR(m).
template <class Field>
struct FiberCone {
  RingPtr<Field> ring;
  std::vector<Polynomial<Field>> relations;
};

namespace detail {

template <class Field>
void require_graded(const RingRef<Field>& R, const char* what) {
  if (R->mode() != RingMode::Graded)
    throw ModeError(std::string(what) + " is unavailable in local mode: use the cap-based invariants");
}

inline std::vector<std::string> rees_y_names(const std::vector<std::string>& xs) {
  std::vector<std::string> ys;
  std::vector<std::string> taken = xs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto y = fresh_name(taken, "y" + std::to_string(i + 1));
    taken.push_back(y);
    ys.push_back(y);
  }
  return ys;
}

/// Drop the x-part: terms divisible by some x vanish, y-exponents move to
/// K[y]. Components are kept when they are below `rank`, else dropped.
template <class Field>
Polynomial<Field> specialize_x_to_zero(const Polynomial<Field>& p, std::size_t n, const RingPtr<Field>& target,
                                       int rank = -1) {
  std::vector<Term<Field>> ts;
  for (const auto& t : p.terms()) {
    if (rank >= 0 && t.mono.component() >= rank) continue;
    if (t.mono.partial_degree(0, n) != 0) continue;
    Monomial m;
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono[n + i] != 0) m.set(i, t.mono[n + i]);
    ts.push_back({m.with_component(t.mono.component()), t.coeff});
  }
  return Polynomial<Field>(target, std::move(ts));
}

}  // namespace detail

/// L = ker(K[x,y] -> R[t]) by eliminating t from (y_i - t x_i) + J.
template <class Field>
ReesPresentation<Field> rees_presentation(const RingRef<Field>& R) {
  detail::require_graded(R, "Rees algebra presentation");
  using Poly = Polynomial<Field>;
  const auto& S = R->ambient();
  std::size_t n = R->nvars();
  auto xs = S->names();
  auto ys = detail::rees_y_names(xs);
  std::vector<std::string> xy = xs;
  xy.insert(xy.end(), ys.begin(), ys.end());
  auto B = PolyRing<Field>::make(R->field(), xy);
  auto T = prepend_variables(B, {fresh_name(xy, "t")}, MonomialOrder::degrevlex(2 * n + 1));
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Poly y = Poly::variable(T, 1 + n + i);
    Poly tx = Poly::variable(T, 0) * Poly::variable(T, 1 + i);
    gens.push_back(y - tx);
  }
  auto up = shift_map(n, 1);
  for (const auto& g : R->relations_gb().elements()) gens.push_back(remap_variables(g, up, T));
  auto L = eliminate(gens, T, {0});
  std::vector<Poly> moved;
  for (const auto& g : L) {
    std::vector<Term<Field>> ts;
    for (const auto& t : g.terms()) {
      Monomial m;
      for (std::size_t i = 1; i <= 2 * n; ++i)
        if (t.mono[i] != 0) m.set(i - 1, t.mono[i]);
      ts.push_back({m, t.coeff});
    }
    moved.push_back(Poly(B, std::move(ts)));
  }
  auto G = buchberger(B, moved);
  return {B, n, G.elements()};
}

/// L0 = L + (x) intersected with K[y], the image of L under x -> 0.
template <class Field>
FiberCone<Field> fiber_cone_presentation(const RingRef<Field>& R) {
  auto rees = rees_presentation(R);
  auto Ky = PolyRing<Field>::make(R->field(), rees.y_names());
  std::vector<Polynomial<Field>> img;
  for (const auto& g : rees.relations) {
    auto h = detail::specialize_x_to_zero(g, rees.n, Ky);
    if (!h.is_zero()) img.push_back(h);
  }
  return {Ky, buchberger(Ky, img).elements()};
}

/// gr_m(I) = (+)_k I m^k / I m^(k+1) over K[y], generators (minimal
/// generators of I) in Rees degree 0. Relations: syzygies of the
/// generators modulo L, with x set to 0.
template <class Field>
GradedModulePresentation<Field> assoc_module_presentation(const RingRef<Field>& R, const Ideal<Field>& I) {
  detail::require_graded(R, "gr_m(I)");
  using Poly = Polynomial<Field>;
  std::vector<Poly> f;
  if (I.is_unit()) {
    f.push_back(Poly::constant(R->ambient(), R->field().one()));
  } else {
    f = minimal_generators(I);
    for (const auto& g : f)
      if (!homogeneous_degree(g)) throw std::invalid_argument("gr_m(I) needs a homogeneous ideal");
  }
  auto rees = rees_presentation(R);
  auto Ky = PolyRing<Field>::make(R->field(), rees.y_names());
  GradedModulePresentation<Field> M{Ky, std::vector<int>(f.size(), 0), {}};
  if (f.empty()) return M;
  std::size_t n = rees.n;
  std::vector<std::size_t> into(n);
  for (std::size_t i = 0; i < n; ++i) into[i] = i;
  std::vector<Poly> tuple;
  for (const auto& g : f) tuple.push_back(remap_variables(g, into, rees.ring));
  for (const auto& l : rees.relations) tuple.push_back(l);
  auto syz = syzygy_basis(tuple, rees.ring);
  auto mr = M.module_ring();
  for (const auto& v : syz.generators) {
    auto r = detail::specialize_x_to_zero(v, n, mr, static_cast<int>(f.size()));
    if (!r.is_zero()) M.relations.push_back(r);
  }
  return M;
}

template <class Field>
int rees_regularity(const RingRef<Field>& R, const Ideal<Field>& I) {
  if (I.is_zero()) throw std::invalid_argument("regularity of R(m, I) needs a nonzero ideal");
  return regularity(assoc_module_presentation(R, I));
}

/// reg R(m) = reg gr_m(R).
template <class Field>
int rees_ring_regularity(const RingRef<Field>& R) {
  return rees_regularity(R, unit_ideal(R));
}

/// gr_m(R) = S/J* with J* spanned by the initial forms of J. In local mode
/// the initial forms of a local standard basis generate J*.
template <class Field>
RingRef<Field> tangent_cone(const RingRef<Field>& R) {
  if (R->graded()) return R;
  std::vector<Polynomial<Field>> forms;
  for (const auto& g : local_standard_basis(R->relations(), R->ambient())) forms.push_back(initial_form(g));
  return PresentedRing<Field>::make(R->ambient(), forms, RingMode::Graded);
}

/// reg gr_m(R); in local mode through the tangent cone.
template <class Field>
int associated_graded_regularity(const RingRef<Field>& R) {
  auto G = tangent_cone(R);
  return regularity(cyclic_module(G->ambient(), G->relations_gb().elements()));
}

/// K-length of B/A for ideals A subset B with finite-length quotient.
template <class Field>
long quotient_length(const Ideal<Field>& B, const Ideal<Field>& A) {
  detail::require_graded(A.ring(), "graded component count");
  std::size_t n = A.ring()->nvars();
  return finite_length_difference(hilbert_numerator(A.gb()), hilbert_numerator(B.gb()), n).get_si();
}

struct PQDims {
  long gr = 0;  // Im^k / Im^(k+1)
  long D = 0;   // (Im^(k+1) : m) / Im^k
  long Q = 0;   // (Im^(k+1) : m) / Im^(k+1)
};

template <class Field>
PQDims pq_component_dims(const RingRef<Field>& R, const Ideal<Field>& I, int k) {
  detail::require_graded(R, "pq component dimensions");
  auto m = max_ideal(R);
  auto Ik = ideal_product(I, ideal_power(m, k));
  auto Ik1 = ideal_product(Ik, m);
  auto C = ideal_colon(Ik1, m);
  return {quotient_length(Ik, Ik1), quotient_length(C, Ik), quotient_length(C, Ik1)};
}

}  // namespace daolab

#endif  // DAOLAB_BLOWUP_HPP
