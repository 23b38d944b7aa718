#ifndef DAOLAB_RESOLUTION_HPP
#define DAOLAB_RESOLUTION_HPP

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"
#include "polynomial.hpp"
#include "syzygy.hpp"

namespace daolab {

/// coker(relations) for a graded free module over a standard graded
/// polynomial ring. Relations live in ring->free_module(degrees).
template <class Field>
struct GradedModulePresentation {
  RingPtr<Field> ring;
  std::vector<int> degrees;
  std::vector<Polynomial<Field>> relations;

  RingPtr<Field> module_ring() const { return ring->free_module(degrees); }

  void check_homogeneous() const {
    for (const auto& r : relations)
      if (!r.is_homogeneous()) throw std::invalid_argument("relation is not homogeneous: " + r.to_string());
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "generators in degrees (";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? ", " : "") << degrees[i];
    os << "), " << relations.size() << " relations";
    return os.str();
  }
};

/// M(j): the generator of degree d moves to degree d - j.
template <class Field>
GradedModulePresentation<Field> twist(const GradedModulePresentation<Field>& M, int j) {
  GradedModulePresentation<Field> out{M.ring, M.degrees, {}};
  for (auto& d : out.degrees) d -= j;
  auto mr = out.module_ring();
  for (const auto& r : M.relations) out.relations.push_back(r.in_ring(mr));
  return out;
}

/// The cyclic module S/(gens).
template <class Field>
GradedModulePresentation<Field> cyclic_module(const RingPtr<Field>& ring, const std::vector<Polynomial<Field>>& gens) {
  GradedModulePresentation<Field> out{ring->base_ring(), {0}, {}};
  auto mr = out.module_ring();
  for (const auto& g : gens)
    if (!g.is_zero()) out.relations.push_back(g.in_ring(mr));
  return out;
}

class BettiTable {
 public:
  void add(int i, int j, long count = 1) {
    if (count == 0) return;
    table_[{i, j}] += count;
  }
  long at(int i, int j) const {
    auto it = table_.find({i, j});
    return it == table_.end() ? 0 : it->second;
  }
  bool empty() const { return table_.empty(); }
  const std::map<std::pair<int, int>, long>& entries() const { return table_; }

  long total(int i) const {
    long s = 0;
    for (const auto& [k, v] : table_)
      if (k.first == i) s += v;
    return s;
  }
  int projective_dimension() const {
    int p = -1;
    for (const auto& [k, v] : table_) p = std::max(p, k.first);
    return p;
  }
  /// max{j - i}; INT_MIN for the zero module.
  int regularity() const {
    int r = INT_MIN;
    for (const auto& [k, v] : table_) r = std::max(r, k.second - k.first);
    return r;
  }
  /// Sum_i (-1)^i sum_j beta_ij t^(j + offset).
  IntPoly alternating_series(int offset = 0) const {
    IntPoly s;
    for (const auto& [k, v] : table_) {
      int e = k.second + offset;
      if (e < 0) throw std::invalid_argument("negative exponent in Betti series");
      IntPoly term = IntPoly::constant(k.first % 2 ? -v : v).shifted(e);
      s = s + term;
    }
    return s;
  }

  /// Triangular layout: columns are homological degrees, rows j - i.
  std::string to_text() const {
    if (table_.empty()) return "zero module\n";
    int pd = projective_dimension();
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& [k, v] : table_) {
      lo = std::min(lo, k.second - k.first);
      hi = std::max(hi, k.second - k.first);
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""}, tot{"total:"};
    for (int i = 0; i <= pd; ++i) {
      head.push_back(std::to_string(i));
      tot.push_back(std::to_string(total(i)));
    }
    rows.push_back(head);
    rows.push_back(tot);
    for (int r = lo; r <= hi; ++r) {
      std::vector<std::string> row{std::to_string(r) + ":"};
      for (int i = 0; i <= pd; ++i) {
        long b = at(i, i + r);
        row.push_back(b ? std::to_string(b) : ".");
      }
      rows.push_back(row);
    }
    std::vector<std::size_t> width(static_cast<std::size_t>(pd) + 2, 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ' ';
        os << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
      os << '\n';
    }
    return os.str();
  }

  friend bool operator==(const BettiTable& a, const BettiTable& b) { return a.table_ == b.table_; }

 private:
  std::map<std::pair<int, int>, long> table_;
};

namespace detail {

/// Rewrites vectors into a free module with component `drop` removed.
template <class Field>
Polynomial<Field> drop_component(const Polynomial<Field>& v, int drop, const RingPtr<Field>& target) {
  std::vector<Term<Field>> ts;
  for (const auto& t : v.terms()) {
    int c = t.mono.component();
    if (c == drop) throw std::logic_error("dropping a component still in use");
    ts.push_back({t.mono.with_component(c > drop ? c - 1 : c), t.coeff});
  }
  return Polynomial<Field>(target, std::move(ts));
}

/// Splits off unit entries: while some relation has a constant coefficient
/// at a generator, that generator and relation are eliminated. Pivots are
/// taken in (generator, relation) order.
template <class Field>
GradedModulePresentation<Field> prune(GradedModulePresentation<Field> M) {
  const auto& F = M.ring->field();
  for (;;) {
    bool found = false;
    int gen = -1;
    std::size_t rel = 0;
    typename Field::Element c{};
    for (int i = 0; i < static_cast<int>(M.degrees.size()) && !found; ++i)
      for (std::size_t k = 0; k < M.relations.size() && !found; ++k)
        for (const auto& t : M.relations[k].terms())
          if (t.mono.component() == i && t.mono.is_one()) {
            found = true;
            gen = i;
            rel = k;
            c = t.coeff;
            break;
          }
    if (!found) break;
    Polynomial<Field> pivot = M.relations[rel].scaled(F.inv(c));
    std::vector<Polynomial<Field>> rest;
    for (std::size_t k = 0; k < M.relations.size(); ++k) {
      if (k == rel) continue;
      auto a = M.relations[k].component(gen, M.ring);
      auto r = a.is_zero() ? M.relations[k] : M.relations[k] - pivot * a;
      if (!r.is_zero()) rest.push_back(std::move(r));
    }
    M.degrees.erase(M.degrees.begin() + gen);
    if (M.degrees.empty()) return {M.ring, {}, {}};
    auto mr = M.module_ring();
    M.relations.clear();
    for (const auto& r : rest) M.relations.push_back(drop_component(r, gen, mr));
  }
  return M;
}

/// Minimal homogeneous generators of the submodule spanned by `cand`,
/// chosen greedily in degree order.
template <class Field>
std::vector<Polynomial<Field>> minimal_homogeneous(std::vector<Polynomial<Field>> cand, const RingPtr<Field>& ring) {
  std::vector<Polynomial<Field>> nonzero;
  for (auto& c : cand)
    if (!c.is_zero()) nonzero.push_back(std::move(c));
  std::stable_sort(nonzero.begin(), nonzero.end(), [](const auto& a, const auto& b) {
    return a.shifted_degree() < b.shifted_degree();
  });
  std::vector<Polynomial<Field>> out;
  std::optional<GroebnerBasis<Field>> cur;
  for (const auto& g : nonzero) {
    if (cur && cur->contains(g)) continue;
    out.push_back(g);
    cur = cur ? extend_basis(*cur, {g}) : buchberger(ring, out);
  }
  return out;
}

}  // namespace detail

/// Minimal presentation: no unit entries, relations minimal.
template <class Field>
GradedModulePresentation<Field> minimal_presentation(const GradedModulePresentation<Field>& M) {
  M.check_homogeneous();
  auto P = detail::prune(M);
  if (P.degrees.empty()) return P;
  P.relations = detail::minimal_homogeneous(P.relations, P.module_ring());
  return P;
}

/// Graded Betti numbers by iterated syzygies of minimal generators.
template <class Field>
BettiTable minimal_free_resolution(const GradedModulePresentation<Field>& M) {
  BettiTable B;
  auto P = minimal_presentation(M);
  for (int d : P.degrees) B.add(0, d);
  std::vector<Polynomial<Field>> cur = P.relations;
  RingPtr<Field> cur_ring = P.degrees.empty() ? nullptr : P.module_ring();
  const std::size_t limit = M.ring->nvars() + 2;
  for (int i = 1; !cur.empty(); ++i) {
    if (static_cast<std::size_t>(i) > limit) throw std::logic_error("resolution longer than the syzygy bound");
    for (const auto& r : cur) B.add(i, r.shifted_degree());
    auto syz = syzygy_basis(cur, cur_ring);
    cur_ring = syz.module_ring;
    cur = detail::minimal_homogeneous(syz.generators, cur_ring);
  }
  return B;
}

/// Hilbert series numerator of coker M over (1-t)^n, degrees moved up by
/// `offset` so that every generator sits in degree >= 0.
template <class Field>
IntPoly module_hilbert_numerator(const GradedModulePresentation<Field>& M, int offset) {
  if (M.degrees.empty()) return IntPoly();
  auto T = twist(M, -offset);
  auto G = buchberger(T.module_ring(), T.relations);
  return hilbert_numerator(G);
}

/// Checks sum (-1)^i beta_ij t^j = numerator of the Hilbert series of M.
template <class Field>
bool hilbert_identity_holds(const GradedModulePresentation<Field>& M, const BettiTable& B) {
  int offset = 0;
  for (int d : M.degrees) offset = std::max(offset, -d);
  for (const auto& [k, v] : B.entries()) offset = std::max(offset, -k.second);
  return module_hilbert_numerator(M, offset) == B.alternating_series(offset);
}

template <class Field>
int regularity(const GradedModulePresentation<Field>& M) {
  return minimal_free_resolution(M).regularity();
}

}  // namespace daolab

#endif  // DAOLAB_RESOLUTION_HPP
