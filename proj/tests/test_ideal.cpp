#include <gtest/gtest.h>

#include <random>

#include <daolab/ideal.hpp>

#include "support.hpp"

using namespace daolab;
using namespace daolab::testing;

namespace {

RingRef<Fp> ring(std::vector<std::string> names, std::vector<std::string> rel = {}, RingMode mode = RingMode::Graded) {
  return make_ring(Fp(), std::move(names), rel, mode);
}

Ideal<Fp> I(const RingRef<Fp>& R, std::vector<std::string> gens) { return make_ideal(R, gens); }

bool same(const Ideal<Fp>& a, const Ideal<Fp>& b) { return ideals_equal(a, b); }

/// Random homogeneous ideal with generators of degree 1..3.
Ideal<Fp> random_ideal(const RingRef<Fp>& R, std::mt19937_64& rng, int ngens) {
  std::vector<Polynomial<Fp>> gens;
  for (int i = 0; i < ngens; ++i) {
    int d = 1 + static_cast<int>(draw_below(rng, 3));
    // Sparse forms keep the ideals from always being m-primary.
    auto f = random_poly(R->ambient(), rng, d, 2);
    Polynomial<Fp> h(R->ambient());
    for (const auto& t : f.terms())
      if (t.mono.degree() == d) h += Polynomial<Fp>::monomial(R->ambient(), t.mono, t.coeff);
    if (h.is_zero()) h = Polynomial<Fp>::variable(R->ambient(), draw_below(rng, R->nvars()));
    gens.push_back(h);
  }
  return make_ideal(R, gens);
}

}  // namespace

TEST(PresentedRing, Validation) {
  EXPECT_THROW(ring({"x", "y"}, {"x^2 + y"}), std::invalid_argument);
  EXPECT_THROW(ring({"x", "y"}, {"1 + x"}, RingMode::Local), std::invalid_argument);
  EXPECT_THROW(ring({"x", "y"}, {"x", "x - 1"}), std::invalid_argument);
  EXPECT_NO_THROW(ring({"x", "y"}, {"y - x^2"}, RingMode::Local));
  EXPECT_NO_THROW(ring({"x", "y"}, {"x"}));
}

TEST(MaxIdeal, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(same(max_ideal(R), I(R, {"x", "y"})));
  auto Q = ring({"x", "y"}, {"x^2"});
  EXPECT_TRUE(same(max_ideal(Q), I(Q, {"x", "y"})));
  auto L = ring({"x", "y"}, {"y^2 - x^3"}, RingMode::Local);
  EXPECT_TRUE(same(max_ideal(L), I(L, {"x", "y"})));
}

TEST(Combine, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(same(ideal_product(I(R, {"x"}), I(R, {"y"})), I(R, {"x*y"})));
  EXPECT_TRUE(same(ideal_product(max_ideal(R), max_ideal(R)), I(R, {"x^2", "x*y", "y^2"})));
  EXPECT_TRUE(same(ideal_sum(I(R, {"x"}), I(R, {"y"})), max_ideal(R)));
  auto Q = ring({"x", "y"}, {"x^2"});
  EXPECT_TRUE(same(ideal_product(I(Q, {"x"}), max_ideal(Q)), I(Q, {"x*y"})));
}

TEST(Power, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(same(ideal_power(max_ideal(R), 3), I(R, {"x^3", "x^2*y", "x*y^2", "y^3"})));
  EXPECT_TRUE(ideal_power(max_ideal(R), 0).is_unit());
  auto C = ring({"x", "y", "z"}, {"z^2 - x*y"});
  auto m2 = ideal_power(max_ideal(C), 2);
  EXPECT_TRUE(ideal_contains(m2, poly(C, "z^2")));
  EXPECT_TRUE(ideal_contains(m2, poly(C, "x*z")));
  EXPECT_FALSE(ideal_contains(m2, poly(C, "z")));
}

TEST(Colon, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(same(ideal_colon(I(R, {"x^2", "x*y"}), I(R, {"x"})), max_ideal(R)));
  auto m = max_ideal(R);
  auto c = ideal_colon(ideal_power(m, 2), m);
  EXPECT_TRUE(ideal_subset(c, m));
  EXPECT_TRUE(ideal_subset(m, c));
  auto Q = ring({"x", "y"}, {"x^2"});
  auto z = ideal_colon(zero_ideal(Q), I(Q, {"x"}));
  EXPECT_TRUE(same(z, I(Q, {"x"})));
  EXPECT_TRUE(ideal_contains(z, poly(Q, "x")));
  EXPECT_FALSE(ideal_contains(z, poly(Q, "y")));
}

TEST(Colon, NonZeroDimensionalPath) {
  auto R = ring({"x", "y", "z"});
  // (xz, yz) : (x, y) = (z)
  EXPECT_TRUE(same(ideal_colon(I(R, {"x*z", "y*z"}), I(R, {"x", "y"})), I(R, {"z"})));
  EXPECT_TRUE(ideal_colon(I(R, {"x"}), I(R, {"x"})).is_unit());
}

TEST(Intersect, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(same(ideal_intersect(I(R, {"x"}), I(R, {"y"})), I(R, {"x*y"})));
  EXPECT_TRUE(same(ideal_intersect(I(R, {"x^2", "y"}), I(R, {"x"})), I(R, {"x^2", "x*y"})));
  auto A = I(R, {"x^2 + y^2", "x*y^3"});
  EXPECT_TRUE(same(ideal_intersect(A, A), A));
}

TEST(Intersect, DimensionCountsMatchLinearAlgebra) {
  std::mt19937_64 rng(31);
  auto R = ring({"x", "y", "z"});
  for (int k = 0; k < 15; ++k) {
    auto A = random_ideal(R, rng, 2), B = random_ideal(R, rng, 2);
    auto C = ideal_intersect(A, B);
    for (int d = 0; d <= 4; ++d) {
      long a = brute_ideal_dim_in_degree(A.gens(), 3, d, Fp());
      long b = brute_ideal_dim_in_degree(B.gens(), 3, d, Fp());
      auto ab = A.gens();
      ab.insert(ab.end(), B.gens().begin(), B.gens().end());
      long s = brute_ideal_dim_in_degree(ab, 3, d, Fp());
      long total = binom(d + 2, 2);
      EXPECT_EQ(total - kdim_component(C.gb(), d), a + b - s) << A.to_string() << " " << B.to_string();
    }
  }
}

TEST(LocalizedEqual, Examples) {
  auto L = ring({"x"}, {}, RingMode::Local);
  EXPECT_TRUE(localized_equal(I(L, {"x"}), I(L, {"x*(1+x)"})));
  EXPECT_FALSE(localized_equal(I(L, {"x"}), I(L, {"x^2"})));
  EXPECT_TRUE(localized_equal(I(L, {"x^2"}), I(L, {"x^2"})));
  auto G = ring({"x"});
  EXPECT_THROW(localized_equal(I(G, {"x"}), I(G, {"x"})), ModeError);
}

TEST(LocalizedEqual, NonPrimaryIdeals) {
  auto L = ring({"x", "y"}, {}, RingMode::Local);
  // (x(1+y)) and (x) agree locally but not globally.
  EXPECT_TRUE(localized_equal(I(L, {"x + x*y"}), I(L, {"x"})));
  EXPECT_FALSE(I(L, {"x + x*y"}).gb() == I(L, {"x"}).gb());
  EXPECT_FALSE(localized_equal(I(L, {"x*y"}), I(L, {"x"})));
  // (x) ∩ (x - 1, y) is (x) near the origin.
  auto far = ideal_intersect(I(L, {"x"}), I(L, {"x - 1", "y"}));
  EXPECT_TRUE(localized_equal(far, I(L, {"x"})));
  EXPECT_TRUE(is_proper(I(L, {"x"})));
  EXPECT_FALSE(is_proper(I(L, {"x - 1"})));
}

TEST(Dimension, Examples) {
  EXPECT_EQ(dimension(ring({"x", "y", "z"}, {"z^2 - x*y"})), 2);
  EXPECT_EQ(dimension(ring({"x", "y"})), 2);
  auto L = ring({"x", "y"}, {"y^2"}, RingMode::Local);
  EXPECT_EQ(dimension(L), 1);
  for (int N = 1; N <= 6; ++N) EXPECT_EQ(hilbert_samuel(L, N), 2 * N - 1);
  EXPECT_TRUE(L->hilbert().certified);
}

TEST(Dimension, LocalSeesOnlyTheOrigin) {
  // x(1 + y) = 0 cuts out the line x = 0 near the origin.
  auto L = ring({"x", "y"}, {"x + x*y"}, RingMode::Local);
  EXPECT_EQ(dimension(L), 1);
  EXPECT_EQ(multiplicity(L), 1);
  auto cusp = ring({"x", "y"}, {"y^2 - x^3"}, RingMode::Local);
  EXPECT_EQ(dimension(cusp), 1);
  EXPECT_EQ(multiplicity(cusp), 2);
  // Local dimension agrees with the Hilbert-Samuel growth.
  long prev = 0;
  for (int N = 1; N <= 8; ++N) {
    long v = hilbert_samuel(cusp, N);
    if (N >= 3) {
      EXPECT_EQ(v - prev, 2);
    }
    prev = v;
  }
}

TEST(Multiplicity, Examples) {
  auto C = ring({"x", "y", "z"}, {"z^2 - x*y"});
  EXPECT_EQ(embedding_dimension(C), 3);
  EXPECT_EQ(multiplicity(C), 2);
  EXPECT_TRUE(has_minimal_multiplicity(C));
  auto S = ring({"x", "y"});
  EXPECT_EQ(embedding_dimension(S), 2);
  EXPECT_EQ(multiplicity(S), 1);
  EXPECT_TRUE(is_regular_ring(S));
  auto T = ring({"x", "y"}, {"x^3"});
  EXPECT_EQ(embedding_dimension(T), 2);
  EXPECT_EQ(multiplicity(T), 3);
  EXPECT_FALSE(has_minimal_multiplicity(T));
  EXPECT_EQ(embedding_dimension(ring({"x", "y", "z"}, {"z - x^2"}, RingMode::Local)), 2);
  EXPECT_EQ(embedding_dimension(ring({"x", "y", "z"}, {"z"})), 2);
}

TEST(DepthPositive, Examples) {
  EXPECT_FALSE(depth_positive(ring({"x", "y"}, {"x*y", "x^2"})));
  EXPECT_TRUE(depth_positive(ring({"x", "y"}, {"y^2"})));
  EXPECT_TRUE(depth_positive(ring({"x", "y"})));
  EXPECT_FALSE(depth_positive(ring({"x", "y"}, {"x^2", "x*y"}, RingMode::Local)));
}

TEST(DSequence, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(is_d_sequence(R, {poly(R, "x"), poly(R, "y")}));
  EXPECT_TRUE(is_d_sequence(R, {poly(R, "x + y"), poly(R, "y")}));
  auto Q = ring({"x", "y"}, {"x^2"});
  EXPECT_FALSE(is_d_sequence(Q, {poly(Q, "x")}));
  EXPECT_FALSE(is_d_sequence(R, {poly(R, "x"), poly(R, "x*y")}));
  EXPECT_THROW(is_d_sequence(R, {}), std::invalid_argument);
}

TEST(MinimalGenerators, GradedAndLocal) {
  auto R = ring({"x", "y"});
  EXPECT_EQ(minimal_generators(I(R, {"x^2", "x^2 + x*y", "x*y", "y^2", "x^3"})).size(), 3u);
  auto L = ring({"x", "y"}, {}, RingMode::Local);
  EXPECT_EQ(minimal_generators(I(L, {"x", "x + x*y", "y - x^2", "y"})).size(), 2u);
  EXPECT_EQ(minimal_generators(I(L, {"x*(1+y)", "x^2"})).size(), 1u);
}

TEST(Properties, ColonContainments) {
  std::mt19937_64 rng(77);
  auto R = ring({"x", "y", "z"}, {"z^2 - x*y"});
  for (int k = 0; k < 15; ++k) {
    auto A = random_ideal(R, rng, 3), B = random_ideal(R, rng, 2);
    auto C = ideal_colon(A, B);
    EXPECT_TRUE(ideal_subset(A, C));
    EXPECT_TRUE(ideal_subset(ideal_product(B, C), A)) << A.to_string() << " : " << B.to_string();
  }
}

TEST(Properties, ColonIsLargest) {
  // Every degree-<=3 element u with u*B in A lies in A:B (checked on monomials).
  std::mt19937_64 rng(78);
  auto R = ring({"x", "y", "z"});
  for (int k = 0; k < 10; ++k) {
    auto A = random_ideal(R, rng, 3), B = random_ideal(R, rng, 2);
    auto C = ideal_colon(A, B);
    for (int d = 0; d <= 3; ++d)
      for (const auto& u : monomials_of_degree(3, d)) {
        auto up = Polynomial<Fp>::monomial(R->ambient(), u, 1);
        bool kills = true;
        for (const auto& b : B.gens()) kills = kills && A.gb().contains(up * b);
        EXPECT_EQ(kills, C.gb().contains(up));
      }
  }
}

TEST(Properties, PowerRecursion) {
  std::mt19937_64 rng(79);
  auto R = ring({"x", "y", "z"}, {"z^2 - x*y"});
  for (int k = 0; k < 5; ++k) {
    auto A = random_ideal(R, rng, 2);
    for (int e = 0; e < 3; ++e) EXPECT_TRUE(same(ideal_power(A, e + 1), ideal_product(A, ideal_power(A, e))));
  }
}

TEST(Properties, EqualityMatchesMutualMembership) {
  std::mt19937_64 rng(80);
  auto R = ring({"x", "y", "z"});
  for (int k = 0; k < 15; ++k) {
    auto A = random_ideal(R, rng, 2);
    auto B = ideal_sum(A, make_ideal(R, std::vector<Polynomial<Fp>>{A.gens()[0] * poly(R, "x + z")}));
    auto C = random_ideal(R, rng, 2);
    EXPECT_TRUE(same(A, B));
    EXPECT_TRUE(same(B, A));
    bool mutual = globally_contained(A, C) && globally_contained(C, A);
    EXPECT_EQ(same(A, C), mutual);
  }
}

TEST(Properties, LocalizedEqualityIsImpliedByGlobal) {
  std::mt19937_64 rng(81);
  auto L = ring({"x", "y", "z"}, {}, RingMode::Local);
  for (int k = 0; k < 10; ++k) {
    auto A = random_ideal(L, rng, 2);
    EXPECT_TRUE(localized_equal(A, A));
    auto shuffled = A.gens();
    std::reverse(shuffled.begin(), shuffled.end());
    auto B = make_ideal(L, shuffled);
    EXPECT_TRUE(localized_equal(A, B));
    EXPECT_TRUE(localized_equal(B, A));
    // Multiplying a generator by a unit does not change the local ideal.
    shuffled[0] = shuffled[0] * poly(L, "1 + x + y*z");
    EXPECT_TRUE(localized_equal(A, make_ideal(L, shuffled)));
  }
}
