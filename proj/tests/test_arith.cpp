#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "reslab/arith.hpp"
#include "reslab/error.hpp"

#ifndef RESLAB_TEST_DATA
#define RESLAB_TEST_DATA "tests/data"
#endif

namespace reslab {
namespace {

TEST(Sieve, CountsAndMembership) {
  const auto primes = sieve_primes(100000);
  EXPECT_EQ(primes.size(), 9592u);
  EXPECT_TRUE(primes.contains(99991));
  EXPECT_FALSE(primes.contains(99993));
  EXPECT_EQ(primes.count_up_to(100), 25u);
  EXPECT_THROW(sieve_primes(1), Error);
}

TEST(FactorTable, WalksFactorizations) {
  const FactorTable table(1000);
  std::vector<std::pair<std::uint64_t, unsigned>> seen;
  table.for_each_prime_power(720, [&](std::uint64_t p, unsigned k) { seen.emplace_back(p, k); });
  const std::vector<std::pair<std::uint64_t, unsigned>> expected{{2, 4}, {3, 2}, {5, 1}};
  EXPECT_EQ(seen, expected);
  EXPECT_TRUE(table.is_squarefree(30));
  EXPECT_FALSE(table.is_squarefree(18));
  EXPECT_TRUE(table.is_prime(997));
}

TEST(Multiplicative, FractionalDivisorValues) {
  const auto d = d_z_coefficients(0.5, 1000);
  EXPECT_DOUBLE_EQ(d(1), 1.0);
  EXPECT_DOUBLE_EQ(d(7), 0.5);
  EXPECT_DOUBLE_EQ(d(49), 0.375);
  EXPECT_DOUBLE_EQ(d(8), 0.3125);
  EXPECT_DOUBLE_EQ(d(7 * 4), 0.5 * 0.375);
  EXPECT_THROW(d(1001), Error);
  EXPECT_THROW(d(0), Error);
}

TEST(Multiplicative, ConvolutionOfHalvesIsOne) {
  const auto d = d_z_coefficients(0.5, 5000);
  const auto one = dirichlet_convolve(d, d, 5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) ASSERT_NEAR(one(n), 1.0, 1e-13) << n;
  // The convolved rule also answers beyond the cached range.
  EXPECT_NEAR(one.prime_power(10007, 5), 1.0, 1e-13);
}

TEST(Multiplicative, ConvolutionOfQuartersIsHalf) {
  const auto quarter = d_z_coefficients(0.25, 5000);
  const auto half = d_z_coefficients(0.5, 5000);
  const auto conv = dirichlet_convolve(quarter, quarter, 5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) ASSERT_NEAR(conv(n), half(n), 1e-12) << n;
}

TEST(Multiplicative, UnitIsNeutral) {
  const auto d = d_z_coefficients(0.25, 2000);
  const auto same = dirichlet_convolve(d, dirichlet_unit(2000), 2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_NEAR(same(n), d(n), 1e-15);
}

TEST(Multiplicative, GeneralizedBinomial) {
  EXPECT_DOUBLE_EQ(generalized_binomial(5, 2), 10.0);
  EXPECT_DOUBLE_EQ(generalized_binomial(-0.5, 2), 0.375);
  EXPECT_DOUBLE_EQ(generalized_binomial(3, 0), 1.0);
}

TEST(DeltaTable, KnownEigenvalues) {
  const auto table = build_delta_table(10000);
  EXPECT_NEAR(table(2), -0.530330085889911, 1e-14);
  EXPECT_NEAR(table(4), -0.71875, 1e-14);
  EXPECT_DOUBLE_EQ(table(1), 1.0);
  EXPECT_EQ(table.kind(), FormKind::kHolomorphicDelta);
  EXPECT_EQ(table.spectral(), 12.0);
}

TEST(DeltaTable, HeckeRelations) {
  const auto table = build_delta_table(10000);
  const FactorTable factors(10000);
  for (std::uint64_t m = 2; m <= 100; ++m) {
    for (std::uint64_t n = 2; m * n <= 10000; ++n) {
      if (std::gcd(m, n) == 1) ASSERT_NEAR(table(m * n), table(m) * table(n), 1e-12);
    }
  }
  for (const std::uint64_t p : {2ull, 3ull, 7ull, 97ull}) {
    for (unsigned k = 1; k < 6; ++k) {
      EXPECT_NEAR(table.prime_power(p, k + 1), table(p) * table.prime_power(p, k) - table.prime_power(p, k - 1), 1e-12);
    }
  }
  for (std::uint64_t p = 2; p <= 10000; ++p) {
    if (factors.is_prime(p)) ASSERT_LE(std::abs(table(p)), 2.0);
  }
}

TEST(DeltaTable, AsMultiplicativeAgrees) {
  const auto table = build_delta_table(3000);
  const auto f = table.as_multiplicative();
  for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_DOUBLE_EQ(f(n), table(n));
}

TEST(MaassTable, ParsesSyntheticFile) {
  const auto table = load_maass_table(RESLAB_TEST_DATA "/maass_synthetic.txt", 500);
  EXPECT_EQ(table.kind(), FormKind::kMaassEven);
  EXPECT_NEAR(table.spectral(), 9.53369526135355755, 1e-15);
  EXPECT_NEAR(table(2), 2 * std::cos(1.4), 1e-15);
  EXPECT_NEAR(table(6), table(2) * table(3), 1e-15);
  EXPECT_NEAR(table(4), table(2) * table(2) - 1.0, 1e-15);
}

TEST(MaassTable, ReportsParseErrorsWithLine) {
  try {
    load_maass_table(RESLAB_TEST_DATA "/maass_corrupted.txt", 10);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(MaassTable, RejectsMalformedInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_maass_table(in, 3);
  };
  EXPECT_THROW(parse("2 0.5\n"), ParseError);                      // missing r line
  EXPECT_THROW(parse("r 1.0\n2 0.5 extra\n3 0.1\n"), ParseError);  // trailing text
  EXPECT_THROW(parse("r 1.0\n2 0.5\n2 0.4\n3 0.1\n"), ParseError); // duplicate
  EXPECT_THROW(parse("r 1.0\n0 0.5\n"), ParseError);               // index zero
  EXPECT_THROW(parse("r 1.0\n2 nan\n3 0.1\n"), ParseError);
  EXPECT_THROW(parse("r 1.0\n2 0.5\n"), IncompleteSourceError);    // lambda(3) missing
  EXPECT_NO_THROW(parse("# comment\n\nr 1.0\n2 0.5\n3 0.1\n"));
  EXPECT_THROW(load_maass_table("/nonexistent/file.txt", 10), Error);
}

TEST(RankinMertens, ResidualSettles) {
  const auto table = build_delta_table(100000);
  const auto a = rankin_mertens_sum(table, 1e4);
  const auto b = rankin_mertens_sum(table, 1e5);
  EXPECT_LT(std::abs(b.residual - a.residual), 0.05);
  EXPECT_THROW(rankin_mertens_sum(table, 2.0), Error);
  EXPECT_THROW(rankin_mertens_sum(table, 2e5), Error);
}

}  // namespace
}  // namespace reslab
