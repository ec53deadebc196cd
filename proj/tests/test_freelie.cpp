#include <gtest/gtest.h>

#include <random>

#include "cbhd/dynkin.hpp"
#include "cbhd/dynkin_recursion.hpp"
#include "cbhd/error.hpp"
#include "support.hpp"

using namespace cbhd;

namespace {

const NcPoly X = NcPoly::x();
const NcPoly Y = NcPoly::y();

NcPoly br(const NcPoly& p, const NcPoly& q) { return nc_bracket(p, q); }

NcPoly poly(std::initializer_list<std::pair<const char*, Rational>> terms) {
  NcPoly p;
  for (const auto& [w, c] : terms) p.add_term(w, c);
  return p;
}

}  // namespace

TEST(NcPoly, Products) {
  EXPECT_EQ(nc_mul(X, Y), NcPoly::monomial("xy"));
  const NcPoly p = poly({{"x", 2}, {"xy", make_rational(1, 3)}});
  EXPECT_EQ(nc_mul(NcPoly::one(), p), p);
  EXPECT_EQ(nc_mul(p, NcPoly::one()), p);
  EXPECT_EQ(nc_mul(X + Y, X - Y), poly({{"xx", 1}, {"xy", -1}, {"yx", 1}, {"yy", -1}}));
}

TEST(NcPoly, Brackets) {
  EXPECT_EQ(br(X, Y), poly({{"xy", 1}, {"yx", -1}}));
  const NcPoly p = poly({{"x", 1}, {"yxy", make_rational(-2, 7)}});
  EXPECT_TRUE(br(p, p).is_zero());
  EXPECT_EQ(br(X, br(X, Y)), poly({{"xxy", 1}, {"xyx", -2}, {"yxx", 1}}));
}

TEST(NcPoly, NoZeroCoefficientsStored) {
  NcPoly p = X + Y;
  p -= X;
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coeff("x"), Rational(0));
  EXPECT_TRUE((Rational(0) * p).is_zero());
}

TEST(NcPoly, RejectsForeignLetters) { EXPECT_THROW(NcPoly::monomial("xz"), Error); }

TEST(NcPoly, CanonicalRendering) {
  EXPECT_EQ(NcPoly().to_string(), "0");
  EXPECT_EQ(dynkin_Z({1, 1}).to_string(), "1/2 xy\n-1/2 yx");
  EXPECT_EQ(poly({{"yy", 1}, {"x", 3}, {"", -1}}).to_string(), "-1\n3 x\n1 yy");
}

TEST(NcPoly, JacobiOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const NcPoly p = fixtures::random_poly(rng, 4, 3);
    const NcPoly q = fixtures::random_poly(rng, 4, 3);
    const NcPoly r = fixtures::random_poly(rng, 4, 3);
    EXPECT_TRUE((br(p, br(q, r)) + br(q, br(r, p)) + br(r, br(p, q))).is_zero());
  }
}

TEST(NcPoly, TruncatedProductMatchesFilteredProduct) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const NcPoly p = fixtures::random_poly(rng, 6, 4);
    const NcPoly q = fixtures::random_poly(rng, 6, 4);
    const NcPoly full = nc_mul(p, q);
    NcPoly kept;
    for (std::size_t n = 0; n <= 5; ++n) kept += full.degree_part(n);
    EXPECT_EQ(nc_mul_truncated(p, q, 5), kept);
  }
}

TEST(DynkinZ, Examples) {
  EXPECT_EQ(dynkin_Z({1, 0}), X);
  EXPECT_EQ(dynkin_Z({0, 1}), Y);
  EXPECT_TRUE(dynkin_Z({0, 0}).is_zero());
  EXPECT_EQ(dynkin_Z({1, 1}), poly({{"xy", make_rational(1, 2)}, {"yx", make_rational(-1, 2)}}));
  for (int i = 2; i <= 6; ++i) {
    EXPECT_TRUE(dynkin_Z({i, 0}).is_zero()) << i;
    EXPECT_TRUE(dynkin_Z({0, i}).is_zero()) << i;
  }
}

TEST(DynkinZ, BidegreePurity) {
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; i + j <= 7; ++j) {
      const NcPoly z = dynkin_Z({i, j});
      for (const auto& [w, c] : z.terms()) EXPECT_EQ(bidegree_of(w), (Bidegree{i, j}));
    }
  }
}

TEST(DynkinZ, DegreeThreeBrackets) {
  const Rational twelfth = make_rational(1, 12);
  EXPECT_EQ(dynkin_Z({2, 1}), twelfth * br(X, br(X, Y)));
  EXPECT_EQ(dynkin_Z({1, 2}), twelfth * br(Y, br(Y, X)));
}

TEST(DynkinZ, DegreeFourTerm) {
  // -1/24 [y,[x,[x,y]]] and -1/24 [x,[y,[x,y]]] coincide: by Jacobi the
  // difference is [[x,y],[x,y]] = 0.
  const NcPoly expected = make_rational(-1, 24) * br(Y, br(X, br(X, Y)));
  EXPECT_EQ(bch_homogeneous(4), expected);
  EXPECT_EQ(make_rational(-1, 24) * br(X, br(Y, br(X, Y))), expected);
}

TEST(RecursiveZ, Examples) {
  EXPECT_EQ(recursive_Z_free({0, 1}), Y);
  EXPECT_EQ(recursive_Z_free({1, 0}), X);
  EXPECT_EQ(recursive_Z_free({1, 1}), dynkin_Z({1, 1}));
  EXPECT_EQ(recursive_Z_free({2, 1}), make_rational(1, 12) * br(X, br(X, Y)));
  EXPECT_TRUE(recursive_Z_free({0, 0}).is_zero());
}

TEST(RecursiveZ, MatchesExplicitSumUpToDegreeSix) {
  // The acceptance binary covers degree 8.
  for (int n = 0; n <= 6; ++n) {
    for (int i = 0; i <= n; ++i) EXPECT_EQ(recursive_Z_free({i, n - i}), dynkin_Z({i, n - i})) << i << "," << n - i;
  }
}

TEST(RecursiveZ, RoutesAgree) {
  const FreeAlgebra free;
  const DynkinTable<FreeAlgebra> by_x(free, X, Y, 5, 5, RecursionRoute::IncrementX);
  const DynkinTable<FreeAlgebra> by_y(free, X, Y, 5, 5, RecursionRoute::IncrementY);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5 && i + j <= 7; ++j) EXPECT_EQ(by_x(i, j), by_y(i, j)) << i << "," << j;
}

TEST(Bch, HomogeneousExamples) {
  EXPECT_EQ(bch_homogeneous(1), X + Y);
  EXPECT_EQ(bch_homogeneous(2), make_rational(1, 2) * br(X, Y));
  EXPECT_EQ(bch_homogeneous(3), make_rational(1, 12) * (br(X, br(X, Y)) + br(Y, br(Y, X))));
  EXPECT_TRUE(bch_homogeneous(0).is_zero());
}

TEST(Bch, OracleLowDegrees) {
  const auto oracle = log_expexp_oracle(6);
  ASSERT_EQ(oracle.size(), 7u);
  EXPECT_TRUE(oracle[0].is_zero());
  EXPECT_EQ(oracle[1], X + Y);
  EXPECT_EQ(oracle[2], make_rational(1, 2) * (NcPoly::monomial("xy") - NcPoly::monomial("yx")));
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(bch_homogeneous(n), oracle[n]) << n;
}

TEST(Bch, HomogeneousPartsAreLiePolynomials) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(is_lie_polynomial(bch_homogeneous(n))) << n;
}

TEST(LiePolynomial, RejectsAssociativeMonomials) {
  EXPECT_FALSE(is_lie_polynomial(NcPoly::monomial("xy")));
  EXPECT_FALSE(is_lie_polynomial(NcPoly::monomial("xx")));
  EXPECT_FALSE(is_lie_polynomial(NcPoly::one()));
  EXPECT_TRUE(is_lie_polynomial(X + br(X, br(X, Y))));
}

TEST(LiePolynomial, BracketsOfRandomLieElementsStayLie) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    NcPoly p = pick(rng) ? X : Y;
    for (int depth = 0; depth < 4; ++depth) p = pick(rng) ? br(p, X) : br(Y, p);
    EXPECT_TRUE(is_lie_polynomial(p));
  }
}
