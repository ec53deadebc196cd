#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "cbhd/coeffs.hpp"
#include "cbhd/error.hpp"

using namespace cbhd;

namespace {

Integer factorial(unsigned long n) {
  Integer f = 1;
  for (unsigned long k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TEST(Kn, FirstValues) {
  EXPECT_EQ(kn(0), Rational(1));
  EXPECT_EQ(kn(1), make_rational(-1, 2));
  EXPECT_EQ(kn(2), make_rational(1, 12));
  EXPECT_EQ(kn(3), Rational(0));
  EXPECT_EQ(kn(4), make_rational(-1, 720));
}

TEST(Kn, MatchesBernoulliOracle) {
  for (unsigned long n = 0; n <= 30; ++n) {
    EXPECT_EQ(kn(n) * Rational(factorial(n)), bernoulli_oracle(n)) << "n = " << n;
  }
}

TEST(Kn, ConvolutionIdentity) {
  // Checked in reverse order so the cache is exercised from the top down.
  for (unsigned long n = 40; n >= 1; --n) {
    Rational sum = 0;
    for (unsigned long i = 0; i <= n; ++i) sum += kn(i) / Rational(factorial(n + 1 - i));
    EXPECT_EQ(sum, Rational(0)) << "n = " << n;
  }
}

TEST(Kn, OddIndicesVanish) {
  for (std::size_t m = 1; m <= 14; ++m) EXPECT_EQ(kn(2 * m + 1), Rational(0)) << "m = " << m;
}

TEST(Kn, EvenSignsAlternate) {
  for (std::size_t m = 1; m <= 14; ++m) {
    const int expected = (m % 2 == 1) ? 1 : -1;
    EXPECT_EQ(sgn(kn(2 * m)), expected) << "m = " << m;
  }
}

TEST(KnValues, MatchExactRationalsPastTheSwitch) {
  const auto d = kn_values(160);
  for (std::size_t n = 0; n <= 160; ++n) {
    const double exact = kn(n).get_d();
    EXPECT_NEAR(d[n], exact, 1e-13 * std::abs(exact)) << "n = " << n;
  }
  EXPECT_EQ(kn_values(2001).size(), 2002u);
}

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli_oracle(0), Rational(1));
  EXPECT_EQ(bernoulli_oracle(1), make_rational(-1, 2));
  EXPECT_EQ(bernoulli_oracle(4), make_rational(-1, 30));
  EXPECT_EQ(bernoulli_oracle(12), make_rational(-691, 2730));
}

TEST(CoeffTable, Examples) {
  const auto t = coeff_table(CoeffKind::T, 1).values;
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], Rational(1));
  EXPECT_EQ(t[1], make_rational(1, 2));

  const auto alpha = coeff_table(CoeffKind::Alpha, 0).values;
  ASSERT_EQ(alpha.size(), 1u);
  EXPECT_EQ(alpha[0], Rational(-1));

  const auto g = coeff_table(CoeffKind::GAbs, 2).values;
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], Rational(1));
  EXPECT_EQ(g[1], make_rational(1, 2));
  EXPECT_EQ(g[2], make_rational(1, 12));
}

TEST(CoeffTable, SignMaps) {
  const std::size_t n_max = 30;
  const auto k = coeff_table(CoeffKind::K, n_max).values;
  const auto t = coeff_table(CoeffKind::T, n_max).values;
  const auto alpha = coeff_table(CoeffKind::Alpha, n_max).values;
  const auto g = coeff_table(CoeffKind::GAbs, n_max).values;
  for (std::size_t n = 0; n <= n_max; ++n) {
    EXPECT_EQ(t[n], n % 2 == 0 ? k[n] : Rational(-k[n]));
    EXPECT_EQ(alpha[n], Rational(-k[n]));
    EXPECT_EQ(g[n], abs(k[n]));
    EXPECT_GE(g[n], 0);
  }
}

TEST(CoeffTable, ExtensionKeepsPrefix) {
  const auto small = coeff_table(CoeffKind::K, 10).values;
  const auto large = coeff_table(CoeffKind::K, 50).values;
  ASSERT_EQ(large.size(), 51u);
  for (std::size_t n = 0; n < small.size(); ++n) EXPECT_EQ(small[n], large[n]);
}

TEST(CoeffTable, ConcurrentReaders) {
  std::vector<std::vector<Rational>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < results.size(); ++i) {
    threads.emplace_back([&, i] { results[i] = coeff_table(CoeffKind::K, 60 + 10 * i).values; });
  }
  for (auto& t : threads) t.join();
  for (std::size_t n = 0; n <= 60; ++n) {
    for (const auto& r : results) EXPECT_EQ(r[n], results[0][n]);
  }
}

TEST(CoeffKindNames, RoundTrip) {
  for (auto kind : {CoeffKind::K, CoeffKind::T, CoeffKind::Alpha, CoeffKind::GAbs}) {
    EXPECT_EQ(parse_coeff_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_coeff_kind("B").has_value());
}

TEST(ZetaCrosscheck, SingleTerm) {
  const double expected = std::abs(1.0 / 12.0 - 2.0 / std::pow(2.0 * std::numbers::pi, 2));
  EXPECT_NEAR(zeta_crosscheck(1, 1), expected, 1e-15);
}

TEST(ZetaCrosscheck, Converges) {
  EXPECT_LT(zeta_crosscheck(1, 1'000'000), 1e-6);
  EXPECT_LT(zeta_crosscheck(2, 10'000), 1e-10);
  // The residual is the truncated zeta tail, ~ 2 / ((2k-1) N^{2k-1} (2 pi)^{2k}).
  for (std::size_t k = 2; k <= 5; ++k) EXPECT_LT(zeta_crosscheck(k, 1'000'000), 1e-12) << "k = " << k;
}

TEST(ZetaCrosscheck, RejectsZero) {
  EXPECT_THROW(zeta_crosscheck(0, 10), Error);
  EXPECT_THROW(zeta_crosscheck(1, 0), Error);
}
