#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <daolab/groebner.hpp>
#include <daolab/hilbert.hpp>
#include <daolab/syzygy.hpp>

#include "support.hpp"

using namespace daolab;
using namespace daolab::testing;

namespace {

template <class Field>
std::vector<Polynomial<Field>> Ps(const RingPtr<Field>& r, const std::string& s) {
  return parse_polynomials(r, s);
}

template <class Field>
void expect_reduced(const GroebnerBasis<Field>& G) {
  const auto& es = G.elements();
  for (std::size_t i = 0; i < es.size(); ++i) {
    EXPECT_TRUE(G.ring()->field().is_one(es[i].lead_coeff()));
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : es[j].terms()) EXPECT_FALSE(es[i].lead_monomial().divides(t.mono));
    }
  }
  // Every S-pair reduces to zero.
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const auto& a = es[i];
      const auto& b = es[j];
      if (a.lead_monomial().component() != b.lead_monomial().component()) continue;
      Monomial l = a.lead_monomial().lcm(b.lead_monomial());
      auto one = G.ring()->field().one();
      auto s = sub_multiple(a.times_term(a.lead_monomial().quotient_of(l), one), one,
                            b.lead_monomial().quotient_of(l), b);
      EXPECT_TRUE(G.normal_form(s).is_zero());
    }
}

/// Syzygies of a homogeneous tuple with all total degrees <= D, by linear algebra.
template <class Field>
std::vector<Polynomial<Field>> brute_syzygies(const std::vector<Polynomial<Field>>& f, const RingPtr<Field>& mod,
                                              int D) {
  const auto& F = mod->field();
  std::size_t n = mod->nvars();
  std::vector<Polynomial<Field>> out;
  for (int d = 0; d <= D; ++d) {
    MonomialCoordinates<Field> coords(n, d);
    IncrementalEchelon<Field> ech(F);
    std::vector<std::pair<Monomial, int>> cols;
    for (std::size_t i = 0; i < f.size(); ++i) {
      int room = d - f[i].degree();
      if (room < 0) continue;
      for (const auto& u : monomials_of_degree(n, room)) {
        cols.push_back({u, static_cast<int>(i)});
        auto rel = ech.add(coords.vec(f[i].times_term(u, F.one())));
        if (!rel) continue;
        std::vector<Term<Field>> ts;
        for (const auto& [k, c] : *rel) ts.push_back({cols[k].first.with_component(cols[k].second), c});
        out.push_back(Polynomial<Field>(mod, std::move(ts)));
      }
    }
  }
  return out;
}

template <class Field>
void expect_syzygies_complete(const std::vector<Polynomial<Field>>& f, const RingPtr<Field>& r, int D) {
  auto syz = syzygy_basis(f, r);
  for (const auto& v : syz.generators) {
    Polynomial<Field> acc(r);
    for (std::size_t i = 0; i < f.size(); ++i) acc += v.component(static_cast<int>(i), r) * f[i];
    EXPECT_TRUE(acc.is_zero());
  }
  auto M = buchberger(syz.module_ring, syz.generators);
  for (const auto& s : brute_syzygies(f, syz.module_ring, D)) EXPECT_TRUE(M.contains(s)) << s.to_string();
}

}  // namespace

TEST(NormalForm, Examples) {
  auto r = ring_of<Fp>(2);
  auto G = buchberger(r, Ps(r, "x^2 - y"));
  EXPECT_EQ(G.normal_form(P(r, "x^2")), P(r, "y"));
  EXPECT_EQ(G.normal_form(P(r, "y")), P(r, "y"));
  auto H = buchberger(r, Ps(r, "y^2 - x, x*y - 1, x^2 - y"));
  EXPECT_EQ(H.normal_form(P(r, "x^3")), P(r, "1"));
  EXPECT_TRUE(brute_member(Ps(r, "y^2 - x, x*y - 1, x^2 - y"), P(r, "x^3 - 1"), 4));
}

TEST(Buchberger, Examples) {
  auto r = ring_of<Fp>(2);
  auto G = buchberger(r, Ps(r, "x^2 - y, x*y - 1"));
  ASSERT_EQ(G.size(), 3u);
  EXPECT_EQ(G.elements()[0], P(r, "y^2 - x"));
  EXPECT_EQ(G.elements()[1], P(r, "x*y - 1"));
  EXPECT_EQ(G.elements()[2], P(r, "x^2 - y"));
  for (const auto& g : G.elements()) EXPECT_TRUE(brute_member(Ps(r, "x^2 - y, x*y - 1"), g, 4));
  expect_reduced(G);

  auto U = buchberger(ring_of<Fp>(1), Ps(ring_of<Fp>(1), "x, 1 + x"));
  EXPECT_TRUE(U.is_unit());

  auto M = buchberger(r, Ps(r, "x^2, x*y, y^2"));
  EXPECT_EQ(M.size(), 3u);
  for (const auto& g : M.elements()) EXPECT_EQ(g.size(), 1u);
}

TEST(Buchberger, RationalsAgreeOnExample) {
  auto r = ring_of<Qf>(2);
  auto G = buchberger(r, Ps(r, "x^2 - y, x*y - 1"));
  ASSERT_EQ(G.size(), 3u);
  EXPECT_EQ(G.elements()[0], P(r, "y^2 - x"));
}

TEST(Buchberger, UniqueUnderShuffleAndAugmentation) {
  std::mt19937_64 rng(21);
  auto r = ring_of<Fp>(3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Polynomial<Fp>> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_poly(r, rng, 3, 3));
    set_groebner_cache<Fp>(false);
    auto G = buchberger(r, gens);
    expect_reduced(G);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(gens[0] * random_poly(r, rng, 2, 2) + gens[1]);
    EXPECT_EQ(buchberger(r, shuffled), G);
    set_groebner_cache<Fp>(true);
    EXPECT_EQ(buchberger(r, shuffled), G);
    EXPECT_EQ(buchberger(r, gens), G);
  }
}

TEST(Buchberger, ExtendMatchesFromScratch) {
  std::mt19937_64 rng(5);
  auto r = ring_of<Fp>(3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Polynomial<Fp>> a{random_form(r, rng, 2), random_form(r, rng, 2)};
    std::vector<Polynomial<Fp>> b{random_form(r, rng, 3)};
    auto all = a;
    all.insert(all.end(), b.begin(), b.end());
    EXPECT_EQ(extend_basis(buchberger(r, a), b), buchberger(r, all));
  }
}

TEST(NormalForm, IdempotentLinearAndInIdeal) {
  std::mt19937_64 rng(8);
  auto r = ring_of<Fp>(3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Polynomial<Fp>> gens{random_form(r, rng, 2), random_form(r, rng, 2)};
    auto G = buchberger(r, gens);
    auto p = random_poly(r, rng, 4, 6), q = random_poly(r, rng, 4, 6);
    auto np = G.normal_form(p);
    EXPECT_EQ(G.normal_form(np), np);
    EXPECT_EQ(G.normal_form(p + q), np + G.normal_form(q));
    EXPECT_TRUE(G.contains(p - np));
    for (const auto& t : np.terms())
      for (const auto& g : G.elements()) EXPECT_FALSE(g.lead_monomial().divides(t.mono));
  }
}

TEST(Properties, MembershipMatchesLinearAlgebra) {
  std::mt19937_64 rng(2024);
  int disagreements = 0, members = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + draw_below(rng, 3);
    auto r = ring_of<Fp>(n);
    std::size_t ngens = 1 + draw_below(rng, 3);
    std::vector<Polynomial<Fp>> gens;
    for (std::size_t i = 0; i < ngens; ++i) gens.push_back(random_form(r, rng, 1 + static_cast<int>(draw_below(rng, 3))));
    auto G = buchberger(r, gens);
    for (int c = 0; c < 4; ++c) {
      Polynomial<Fp> p(r);
      if (c % 2 == 0) {
        int d = 3 + static_cast<int>(draw_below(rng, 3));
        for (const auto& g : gens)
          if (g.degree() <= d) p += g * random_form(r, rng, d - g.degree());
      } else {
        p = random_form(r, rng, 1 + static_cast<int>(draw_below(rng, 5)));
      }
      bool gb = G.contains(p);
      members += gb;
      if (gb != brute_member(gens, p, 5)) ++disagreements;
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(members, 100);
}

TEST(Syzygy, Examples) {
  auto r = ring_of<Fp>(2);
  {
    auto f = Ps(r, "x, y");
    auto syz = syzygy_basis(f, r);
    auto M = buchberger(syz.module_ring, syz.generators);
    auto expected = Polynomial<Fp>(syz.module_ring, {{Monomial({0, 1}, 0), 1}, {Monomial({1, 0}, 1), 32002}});
    EXPECT_EQ(M, buchberger(syz.module_ring, {expected}));
  }
  {
    auto f = Ps(r, "x^2, y^2");
    auto syz = syzygy_basis(f, r);
    auto expected = Polynomial<Fp>(syz.module_ring, {{Monomial({0, 2}, 0), 1}, {Monomial({2, 0}, 1), 32002}});
    EXPECT_EQ(buchberger(syz.module_ring, syz.generators), buchberger(syz.module_ring, {expected}));
  }
  {
    auto f = Ps(r, "x^2, x*y, y^2");
    auto syz = syzygy_basis(f, r);
    auto m = syz.module_ring;
    Polynomial<Fp> a(m, {{Monomial({0, 1}, 0), 1}, {Monomial({1, 0}, 1), 32002}});
    Polynomial<Fp> b(m, {{Monomial({0, 1}, 1), 1}, {Monomial({1, 0}, 2), 32002}});
    EXPECT_EQ(buchberger(m, syz.generators), buchberger(m, {a, b}));
    expect_syzygies_complete(f, r, 4);
  }
}

TEST(Syzygy, RandomHomogeneousTuplesComplete) {
  std::mt19937_64 rng(99);
  auto r = ring_of<Fp>(3);
  for (int k = 0; k < 6; ++k) {
    std::vector<Polynomial<Fp>> f;
    for (int i = 0; i < 3; ++i) f.push_back(random_form(r, rng, 1 + static_cast<int>(draw_below(rng, 2))));
    f.push_back(f[0] * P(r, "x"));
    expect_syzygies_complete(f, r, 4);
  }
}

TEST(Syzygy, ModuleInput) {
  auto r = ring_of<Fp>(2);
  auto m = r->free_module({0, 0});
  // Columns (x, y) and (y, 0): syzygies of module elements.
  Polynomial<Fp> u(m, {{Monomial({1, 0}, 0), 1}, {Monomial({0, 1}, 1), 1}});
  Polynomial<Fp> v(m, {{Monomial({0, 1}, 0), 1}});
  auto syz = syzygy_basis<Fp>({u, v}, m);
  for (const auto& s : syz.generators) {
    auto acc = u * s.component(0, r) + v * s.component(1, r);
    EXPECT_TRUE(acc.is_zero());
  }
  EXPECT_TRUE(syz.generators.empty());
}

TEST(Eliminate, Examples) {
  auto r = PolyRing<Fp>::make(Fp(), {"t", "x", "y", "y1", "y2"});
  auto out = eliminate(Ps(r, "y1 - t*x, y2 - t*y"), r, {0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].monic(), P(r, "x*y2 - y*y1").monic());
  for (const auto& g : out) {
    auto s = substitute(g, {P(r, "t"), P(r, "x"), P(r, "y"), P(r, "t*x"), P(r, "t*y")}, r);
    EXPECT_TRUE(s.is_zero());
  }
  auto r2 = ring_of<Fp>(2);
  EXPECT_TRUE(eliminate(Ps(r2, "x - y"), r2, {0}).empty());
  auto e2 = eliminate(Ps(r2, "x^2, x - y"), r2, {0});
  ASSERT_EQ(e2.size(), 1u);
  EXPECT_EQ(e2[0], P(r2, "y^2"));
}

TEST(Eliminate, SubstitutionKillsEveryOutput) {
  // Image of (s, u) -> (s^2, s*u, u^2): eliminating s, u leaves the cone relation.
  auto r = PolyRing<Fp>::make(Fp(), {"s", "u", "a", "b", "c"});
  auto out = eliminate(Ps(r, "a - s^2, b - s*u, c - u^2"), r, {0, 1});
  ASSERT_FALSE(out.empty());
  for (const auto& g : out) {
    auto img = substitute(g, {P(r, "s"), P(r, "u"), P(r, "s^2"), P(r, "s*u"), P(r, "u^2")}, r);
    EXPECT_TRUE(img.is_zero()) << g.to_string();
  }
}

TEST(Intersection, Examples) {
  auto r = ring_of<Fp>(2);
  auto i1 = buchberger(r, intersect_generators(Ps(r, "x"), Ps(r, "y"), r));
  EXPECT_EQ(i1, buchberger(r, Ps(r, "x*y")));
  auto i2 = buchberger(r, intersect_generators(Ps(r, "x^2, y"), Ps(r, "x"), r));
  EXPECT_EQ(i2, buchberger(r, Ps(r, "x^2, x*y")));
}

TEST(KDim, ComponentCounts) {
  auto r2 = ring_of<Fp>(2);
  auto G = buchberger(r2, Ps(r2, "x^2, x*y, y^2"));
  EXPECT_EQ(kdim_component(G, 1), 2);
  EXPECT_EQ(kdim_component(G, 2), 0);
  auto r3 = ring_of<Fp>(3);
  auto H = buchberger(r3, Ps(r3, "z^2 - x*y"));
  EXPECT_EQ(kdim_component(H, 2), 5);
}

TEST(KDim, MatchesLinearAlgebraOnRandomForms) {
  std::mt19937_64 rng(17);
  auto r = ring_of<Fp>(3);
  for (int k = 0; k < 10; ++k) {
    std::vector<Polynomial<Fp>> gens{random_form(r, rng, 2), random_form(r, rng, 2), random_form(r, rng, 3)};
    auto G = buchberger(r, gens);
    for (int d = 0; d <= 5; ++d) {
      long total = binom(d + 2, 2);
      EXPECT_EQ(kdim_component(G, d), total - brute_ideal_dim_in_degree(gens, 3, d, Fp()));
    }
  }
}

TEST(KDim, ModuloPowerOfMaximalIdeal) {
  auto r2 = ring_of<Fp>(2);
  EXPECT_EQ(kbasis_modulo_power(std::vector<Polynomial<Fp>>{}, r2, 2), 3);
  EXPECT_EQ(kbasis_modulo_power(Ps(r2, "y"), r2, 3), 3);
  auto r3 = ring_of<Fp>(3);
  EXPECT_EQ(kbasis_modulo_power(buchberger(r3, Ps(r3, "z^2 - x*y")), 2), 4);
  // Non-homogeneous: y - x^2 is a smooth curve, length N at every N.
  for (int N = 1; N <= 6; ++N) EXPECT_EQ(kbasis_modulo_power(Ps(r2, "y - x^2"), r2, N), N);
  // A unit at the origin kills the local ring.
  EXPECT_EQ(kbasis_modulo_power(Ps(r2, "1 + x"), r2, 4), 0);
}

TEST(Hilbert, NumeratorOfCompleteIntersection) {
  auto r = ring_of<Fp>(3);
  auto G = buchberger(r, Ps(r, "x^2, y^3"));
  auto N = hilbert_numerator(G);
  EXPECT_EQ(N, IntPoly::one_minus_power(2) * IntPoly::one_minus_power(3));
  auto red = reduce_hilbert(N, 3);
  EXPECT_EQ(red.dim, 1);
  EXPECT_EQ(red.h.at_one(), 6);
}

TEST(StandardMonomials, ZeroDimensional) {
  auto r = ring_of<Fp>(2);
  auto G = buchberger(r, Ps(r, "x^2, x*y, y^3"));
  auto sm = standard_monomials(G.leading_monomials(), 2);
  EXPECT_EQ(sm.size(), 4u);
  EXPECT_THROW(standard_monomials({Monomial({2, 0})}, 2), std::domain_error);
}
