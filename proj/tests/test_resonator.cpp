#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "reslab/error.hpp"
#include "reslab/resonator.hpp"

namespace reslab {
namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kConfig;
}

// Trial division: squarefree with every prime factor in [lo, hi].
bool window_squarefree(std::uint64_t n, double lo, double hi) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0 || p < lo || p > hi) return false;
  }
  return n == 1 || (n >= lo && n <= hi);
}

TEST(Profile, PaperExamples) {
  const auto small = make_profile(1e8, 0.01, ProfileMode::kPaper);
  EXPECT_NEAR(small.L, 7.1773, 1e-4);
  EXPECT_TRUE(small.window_empty());
  const auto big = make_profile(std::exp(100.0), 0.01, ProfileMode::kPaper);
  EXPECT_NEAR(big.L, 21.0653, 1e-4);
  EXPECT_NEAR(big.p_lo, 443.747, 1e-3);
  EXPECT_NEAR(big.p_hi, 10807.9, 0.1);
  EXPECT_FALSE(big.window_empty());
  EXPECT_NEAR(big.N, std::exp(97.0), 1e-12 * big.N);
}

TEST(Profile, Errors) {
  EXPECT_EQ(kind_of([] { make_profile(10.0, 0.01, ProfileMode::kPaper); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { make_profile(100.0, 0.4, ProfileMode::kPaper); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { make_profile(16.0, 0.3, ProfileMode::kPaper); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { make_profile(200.0, 0.01, ProfileMode::kCustom); }), ErrorKind::kConfig);
  auto custom = [](double lo, double hi, double L) {
    return [=] { make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{lo, hi, L}); };
  };
  EXPECT_EQ(kind_of(custom(2, 100, 5)), ErrorKind::kProfileRejected);  // r(2) > 1
  EXPECT_EQ(kind_of(custom(24, 28, 5)), ErrorKind::kProfileRejected);  // no primes
  EXPECT_EQ(kind_of(custom(100, 50, 5)), ErrorKind::kProfileRejected);
  EXPECT_EQ(kind_of(custom(100, 1e4, 0)), ErrorKind::kProfileRejected);
  EXPECT_NO_THROW(custom(100, 1e4, 5)());
}

TEST(Profile, ResonatorValues) {
  const auto p = make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{100, 1e4, 5});
  EXPECT_DOUBLE_EQ(p.r_at_prime(101), 5.0 / (std::sqrt(101.0) * std::log(101.0)));
  EXPECT_EQ(p.r_at_prime(97), 0.0);
  EXPECT_EQ(p.r_at_prime(10007), 0.0);
  const auto r = resonator_coefficients(p, 200000);
  EXPECT_DOUBLE_EQ(r(101 * 103), p.r_at_prime(101) * p.r_at_prime(103));
  EXPECT_EQ(r(101 * 101), 0.0);
  EXPECT_EQ(r(2 * 101), 0.0);
}

TEST(Profile, KeyValueRoundTrip) {
  for (const auto& p : {make_profile(std::exp(100.0), 0.01, ProfileMode::kPaper),
                        make_profile(1234.5, 0.07, ProfileMode::kCustom, CustomWindow{100, 1e4, 5.25})}) {
    const auto q = profile_from_key_value(profile_to_key_value(p));
    EXPECT_EQ(q.T, p.T);
    EXPECT_EQ(q.xi, p.xi);
    EXPECT_EQ(q.mode, p.mode);
    EXPECT_EQ(q.p_lo, p.p_lo);
    EXPECT_EQ(q.p_hi, p.p_hi);
    EXPECT_EQ(q.L, p.L);
  }
  EXPECT_THROW(profile_from_key_value("T=100\nxi=0.01\n"), ParseError);
  EXPECT_THROW(profile_from_key_value("T=100\nxi=0.01\nmode=other\nP_lo=1\nP_hi=2\nL=1\n"), ParseError);
}

TEST(DirichletPolynomial, MergesAndEvaluates) {
  const DirichletPolynomial a({{3, 1.0}, {1, 2.0}, {3, 0.5}});
  EXPECT_EQ(a.indices(), (std::vector<std::uint64_t>{1, 3}));
  EXPECT_EQ(a.coefficient(3), 1.5);
  EXPECT_EQ(a.coefficient(2), 0.0);
  EXPECT_EQ(a.degree(), 3u);
  EXPECT_DOUBLE_EQ(a.sum_of_squares(), 4.0 + 2.25);
  const cplx s(0.5, 7.0);
  EXPECT_LT(std::abs(a.evaluate(s) - (2.0 + 1.5 * std::exp(-s * std::log(3.0)))), 1e-15);
  const auto sum = a + DirichletPolynomial({{2, 1.0}, {3, -1.5}});
  EXPECT_EQ(sum.coefficient(2), 1.0);
  EXPECT_EQ(sum.coefficient(3), 0.0);
  EXPECT_THROW(DirichletPolynomial({{0, 1.0}}), Error);
}

TEST(SquarefreeProducts, MatchTrialDivision) {
  const auto p = make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{20, 60, 5});
  const auto products = squarefree_window_products(p, 5000);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    if (window_squarefree(n, 20, 60)) expected.push_back(n);
  }
  EXPECT_EQ(products, expected);
}

class Polynomials : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { table_ = new EigenvalueTable(build_delta_table(20000)); }
  static void TearDownTestSuite() {
    delete table_;
    table_ = nullptr;
  }
  static const EigenvalueTable& table() { return *table_; }
  static inline EigenvalueTable* table_ = nullptr;
};

TEST_F(Polynomials, CoefficientsMatchBruteForce) {
  const auto p = make_profile(1e5, 0.1, ProfileMode::kCustom, CustomWindow{20, 200, 5});
  const auto polys = build_polynomials(p, table());
  const auto d_half = d_z_coefficients(0.5, 10);
  const auto a_len = static_cast<std::uint64_t>(std::floor(p.a_half_length()));
  ASSERT_EQ(a_len, 3u);
  EXPECT_EQ(polys.A_half.size(), 3u);

  std::size_t support = 0;
  double brute_squares = 0.0;
  for (std::uint64_t n = 1; n <= polys.R.degree(); ++n) {
    double expected = 0.0;
    for (std::uint64_t m = 1; m <= a_len; ++m) {
      if (n % m) continue;
      const std::uint64_t l = n / m;
      if (static_cast<double>(l) > p.N || !window_squarefree(l, 20, 200)) continue;
      double r = 1.0;
      std::uint64_t rest = l;
      for (std::uint64_t q = 2; q <= rest; ++q) {
        if (rest % q == 0) {
          r *= p.r_at_prime(q);
          rest /= q;
        }
      }
      expected += r * table()(l) * d_half(m) * table()(m) / std::sqrt(static_cast<double>(m));
    }
    if (expected != 0.0) ++support;
    brute_squares += expected * expected;
    ASSERT_NEAR(polys.R.coefficient(n), expected, 1e-15) << n;
  }
  EXPECT_EQ(polys.R.size(), support);

  const auto check = sum_an_squared_check(polys.R, p, table());
  EXPECT_NEAR(check.direct, brute_squares, 1e-12 * brute_squares);
  EXPECT_GT(check.product_form, 0.0);
}

TEST_F(Polynomials, ShortTableIsIncomplete) {
  const auto p = make_profile(1e5, 0.1, ProfileMode::kCustom, CustomWindow{20, 200, 5});
  const auto short_table = build_delta_table(5000);
  EXPECT_THROW(build_polynomials(p, short_table), IncompleteSourceError);
}

TEST_F(Polynomials, LemmaChecksExactBeyondFullProduct) {
  // Z exceeds the product of every window prime, so truncated sums are complete.
  const auto p = make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{20, 60, 5});
  LemmaInputs in;
  in.alpha = 0.05;
  in.Z = 1e16;
  const auto report = lemma_product_checks(p, table(), in);
  for (const char* name : {"truncated-square-sum", "head-sum"}) {
    const auto& c = report.find(name);
    EXPECT_TRUE(c.satisfied) << name;
    EXPECT_LT(c.margin, 1e-14) << name;
    EXPECT_TRUE(c.advisory) << name;
  }
  EXPECT_NEAR(report.find("tail-sum").lhs, 0.0, 1e-13);
  EXPECT_TRUE(report.find("product-shift").satisfied || report.find("product-shift").advisory);
  EXPECT_THROW(report.find("missing"), Error);
}

TEST_F(Polynomials, LemmaCoprimeRestriction) {
  const auto p = make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{20, 60, 5});
  LemmaInputs in;
  in.alpha = 0.05;
  in.Z = 1e16;
  in.l = 23 * 29;
  const auto all = lemma_product_checks(p, table(), LemmaInputs{0.05, 1e16});
  const auto some = lemma_product_checks(p, table(), in);
  const double w23 = std::pow(p.r_at_prime(23) * table()(23), 2);
  const double w29 = std::pow(p.r_at_prime(29) * table()(29), 2);
  EXPECT_NEAR(some.find("truncated-square-sum").rhs * (1 + w23) * (1 + w29),
              all.find("truncated-square-sum").rhs, 1e-12 * all.find("truncated-square-sum").rhs);
}

TEST_F(Polynomials, EnumerationBudget) {
  const auto p = make_profile(200.0, 0.01, ProfileMode::kCustom, CustomWindow{20, 60, 5});
  LemmaInputs in;
  in.alpha = 0.05;
  in.Z = 1e16;
  in.enumeration_budget = 10;
  EXPECT_EQ(kind_of([&] { lemma_product_checks(p, table(), in); }), ErrorKind::kBudget);
}

}  // namespace
}  // namespace reslab
