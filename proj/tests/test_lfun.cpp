#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "reslab/error.hpp"
#include "reslab/lfun.hpp"

namespace reslab {
namespace {

class DeltaL : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { table_ = new EigenvalueTable(build_delta_table(1 << 20)); }
  static void TearDownTestSuite() {
    delete table_;
    table_ = nullptr;
  }
  static const EigenvalueTable& table() { return *table_; }
  static inline EigenvalueTable* table_ = nullptr;
};

TEST_F(DeltaL, WeightLimits) {
  const AfeContext ctx(GammaSignature::holomorphic(12), table());
  EXPECT_NEAR(std::abs(ctx.v_weight(50.0, 1e-6) - 1.0), 0.0, 1e-8);
  EXPECT_LT(std::abs(ctx.v_weight(50.0, 1e5)), 1e-8);
  EXPECT_THROW(ctx.v_weight(50.0, 0.0), Error);
}

TEST_F(DeltaL, WeightConjugateSymmetry) {
  const AfeContext ctx(GammaSignature::holomorphic(12), table());
  for (const double y : {0.5, 3.0, 40.0}) {
    EXPECT_LT(std::abs(ctx.v_weight(-70.0, y) - std::conj(ctx.v_weight(70.0, y))), 1e-13);
  }
}

TEST_F(DeltaL, CentralValue) {
  const AfeContext ctx(GammaSignature::holomorphic(12), table());
  const auto v = ctx.evaluate(0.0);
  EXPECT_NEAR(v.value.real(), 0.792122838633, 1e-9);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
  EXPECT_LE(v.tail_bound, ctx.options().tail_tol);
}

TEST_F(DeltaL, AfeAgreesWithSmoothedSeries) {
  const AfeContext ctx(GammaSignature::holomorphic(12), table());
  const SmoothCutoff cutoff{0.5, SmoothCutoff::Shape::kExponential};
  for (const double t : {0.0, 30.0}) {
    const cplx afe = ctx.evaluate(t).value;
    const cplx smooth = evaluate_L_smoothed(table(), cutoff, cplx(0.5, t), 1e6);
    EXPECT_LT(std::abs(afe - smooth), 1e-7 * std::max(1.0, std::abs(afe))) << t;
  }
}

TEST_F(DeltaL, SeriesMatchesEulerProduct) {
  const cplx series = evaluate_L_smoothed(table(), {}, cplx(3.0, 0.0), 1e5);
  const cplx euler = euler_product_L(table(), cplx(3.0, 0.0), 100000);
  EXPECT_LT(std::abs(series - euler), 1e-8);
}

TEST_F(DeltaL, AfeNeedsLongEnoughTable) {
  const auto short_table = build_delta_table(1000);
  const AfeContext ctx(GammaSignature::holomorphic(12), short_table);
  EXPECT_THROW(ctx.evaluate(400.0), IncompleteSourceError);
  EXPECT_GT(ctx.truncation(400.0), ctx.truncation(100.0));
}

TEST_F(DeltaL, LocalFactorization) {
  for (const std::uint64_t p : {2ull, 3ull, 101ull, 7919ull}) {
    const auto f = local_factors(table()(p), p, cplx(1.5, 4.0));
    EXPECT_LT(std::abs(f.rs - f.zeta * f.sym2), 1e-14 * std::abs(f.rs)) << p;
    const auto roots = satake_roots(table()(p));
    EXPECT_NEAR(std::abs(roots.alpha * roots.beta - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(roots.alpha + roots.beta - table()(p)), 0.0, 1e-14);
  }
  const auto products = symmetric_square_tools(table(), cplx(2.0, 0.0), 10000);
  EXPECT_LT(products.max_local_mismatch, 1e-14);
  EXPECT_THROW(symmetric_square_tools(table(), cplx(1.0, 3.0), 100), Error);
}

TEST_F(DeltaL, FractionalPowerCoefficients) {
  const std::uint64_t limit = 20000;
  const auto rs = rankin_selberg_coeffs(table(), limit);
  const auto quarter = fractional_power_coeffs(table(), FractionalPower::kQuarter, limit);
  const auto half = fractional_power_coeffs(table(), FractionalPower::kHalf, limit);
  for (const std::uint64_t p : {2ull, 13ull, 9973ull}) {
    const double l2 = table()(p) * table()(p);
    EXPECT_NEAR(rs(p), l2, 1e-13);
    EXPECT_NEAR(quarter(p), l2 / 4, 1e-13);
    EXPECT_NEAR(half(p), l2 / 2, 1e-13);
  }
  const auto half_squared = dirichlet_convolve(half, half, limit);
  const auto quarter_squared = dirichlet_convolve(quarter, quarter, limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    ASSERT_NEAR(half_squared(n), rs(n), 1e-11 * std::max(1.0, std::abs(rs(n)))) << n;
    ASSERT_NEAR(quarter_squared(n), half(n), 1e-11 * std::max(1.0, std::abs(half(n)))) << n;
  }
}

TEST(ShiftedLocalFactor, ZeroShiftsGiveOne) {
  const std::vector<ShiftedFactor> factors{{[](std::uint64_t, unsigned k) { return 1.0 / (k + 1); }, 0},
                                           {[](std::uint64_t, unsigned k) { return k % 2 ? -0.5 : 1.0; }, 0}};
  EXPECT_LT(std::abs(shifted_local_factor(factors, 5, cplx(0.5, 2.0)) - 1.0), 1e-15);
}

TEST(ShiftedLocalFactor, GeometricOracle) {
  // With f(p^k) = x^k the shifted series is x^shift times the unshifted one.
  const std::vector<ShiftedFactor> one{{[](std::uint64_t, unsigned k) { return std::pow(0.5, k); }, 2}};
  EXPECT_NEAR(std::abs(shifted_local_factor(one, 3, cplx(0.5, 0.0), 6) - 0.25), 0.0, 1e-15);
  const std::vector<ShiftedFactor> two{{[](std::uint64_t, unsigned k) { return std::pow(0.5, k); }, 1},
                                       {[](std::uint64_t, unsigned k) { return std::pow(-0.3, k); }, 0}};
  EXPECT_NEAR(std::abs(shifted_local_factor(two, 7, cplx(1.0, 5.0), 6) - 0.5), 0.0, 1e-15);
}

TEST(ShiftedLocalFactor, TruncationConverges) {
  const auto d = d_z_coefficients(0.5, 10);
  const std::vector<ShiftedFactor> factors{{d.rule(), 1}};
  double previous = INFINITY;
  const cplx reference = shifted_local_factor(factors, 2, cplx(0.5, 0.0), 40, true);
  for (unsigned k = 2; k <= 12; k += 2) {
    const double gap = std::abs(shifted_local_factor(factors, 2, cplx(0.5, 0.0), k, true) - reference);
    EXPECT_LT(gap, previous) << k;
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(SelbergDelange, ConstantFunction) {
  const MultiplicativeFunction one([](std::uint64_t, unsigned) { return 1.0; }, 100000);
  EXPECT_NEAR(selberg_delange_constant(one, 1.0, 1000), 1.0, 1e-9);  // k <= 30 drops 2^{-31}
  const auto check = selberg_delange_check(one, 1.0, 1e5, 1.0);
  EXPECT_DOUBLE_EQ(check.empirical, 1e5);
  EXPECT_NEAR(check.ratio, 1.0, 1e-12);
  EXPECT_THROW(selberg_delange_check(one, 1.0, 2.0, 1.0), Error);
  EXPECT_THROW(selberg_delange_check(one, 1.0, 2e5, 1.0), IncompleteSourceError);
}

TEST(SmoothCutoff, Shapes) {
  for (const auto shape : {SmoothCutoff::Shape::kSmoothstep, SmoothCutoff::Shape::kExponential}) {
    const SmoothCutoff phi{0.5, shape};
    EXPECT_EQ(phi(0.0), 1.0);
    EXPECT_EQ(phi(0.5), 1.0);
    EXPECT_EQ(phi(1.0), 0.0);
    EXPECT_EQ(phi(3.0), 0.0);
    EXPECT_EQ(phi(-0.3), phi(0.3));
    double previous = 1.0;
    for (double x = 0.5; x <= 1.0; x += 0.01) {
      EXPECT_LE(phi(x), previous);
      previous = phi(x);
    }
    EXPECT_NEAR(phi(0.75), 0.5, 1e-15);
  }
}

}  // namespace
}  // namespace reslab
