#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "reslab/archimedean.hpp"
#include "reslab/error.hpp"
#include "reslab/quadrature.hpp"

namespace reslab {
namespace {

constexpr double kPi = std::numbers::pi;
const GammaSignature kDelta = GammaSignature::holomorphic(12);
const GammaSignature kMaass = GammaSignature::maass(9.53369526135355755);

TEST(Signature, Parameters) {
  EXPECT_EQ(kDelta.mu1, cplx(5.5, 0.0));
  EXPECT_EQ(kDelta.mu2, cplx(6.5, 0.0));
  EXPECT_EQ(kMaass.mu1, cplx(0.0, 9.53369526135355755));
  EXPECT_EQ(kMaass.describe(), "maass r=9.533695261353557");
  EXPECT_EQ(kDelta.describe(), "holomorphic weight 12");
  EXPECT_THROW(GammaSignature::holomorphic(1), Error);
  EXPECT_EQ(min_height(kMaass), 20.0);
  EXPECT_EQ(min_height(GammaSignature::maass(15.0)), 30.0);
}

TEST(LogLInf, MatchesReference) {
  // -s log pi + log Gamma((s + mu1)/2) + log Gamma((s + mu2)/2) at s = 1/2 + 100i, from mpmath.
  EXPECT_LT(std::abs(log_L_inf(kDelta, cplx(0.5, 100.0)) - cplx(-134.29524647023682292, 185.2179333307734029)), 1e-12);
  EXPECT_LT(std::abs(log_L_inf(kMaass, cplx(0.5, 100.0)) - cplx(-157.767842962073747, 176.39948196382975266)), 1e-12);
}

TEST(DeltaRatio, MatchesReferenceAndIsUnimodular) {
  EXPECT_LT(std::abs(delta_ratio(kDelta, cplx(0.0, 123.4)) - cplx(-0.76374461948091852966, -0.64551851732847057062)),
            1e-12);
  for (const auto& sig : {kDelta, kMaass}) {
    for (double t = 20.0; t < 2000.0; t += 37.3) {
      EXPECT_NEAR(std::abs(delta_ratio(sig, cplx(0.0, t))), 1.0, 1e-14);
      // Functional equation: Delta(s) Delta(-s) = 1.
      const cplx s(0.2, t);
      EXPECT_NEAR(std::abs(delta_ratio(sig, s) * delta_ratio(sig, -s) - 1.0), 0.0, 1e-12);
    }
  }
}

TEST(DeltaRatio, PhaseMatchesArgument) {
  for (const double t : {25.0, 80.0, 640.0}) {
    const cplx d = delta_ratio(kMaass, cplx(0.0, t));
    EXPECT_LT(std::abs(d - std::polar(1.0, delta_phase(kMaass, t))), 1e-12);
  }
}

TEST(LogDerivative, ExactMatchesReference) {
  EXPECT_NEAR(delta_logderiv(kDelta, 50.0, LogDerivMode::kExact).real(), -4.1602871088593533131, 1e-13);
  EXPECT_NEAR(delta_logderiv(kMaass, 50.0, LogDerivMode::kExact).real(), -4.1112207680678835488, 1e-13);
  EXPECT_NEAR(delta_logderiv(kMaass, 50.0, LogDerivMode::kExact).imag(), 0.0, 1e-13);
}

TEST(LogDerivative, PhaseDerivativeAgrees) {
  const double t = 150.0, h = 1e-4;
  const double numeric = (delta_phase(kDelta, t + h) - delta_phase(kDelta, t - h)) / (2 * h);
  EXPECT_NEAR(numeric, delta_logderiv(kDelta, t, LogDerivMode::kExact).real(), 1e-7);
}

TEST(LogDerivative, AsymptoticThreshold) {
  EXPECT_THROW(delta_logderiv(kMaass, 10.0, LogDerivMode::kAsymptotic), Error);
  EXPECT_NO_THROW(delta_logderiv(kMaass, 21.0, LogDerivMode::kAsymptotic));
}

// Composite Simpson rule over a fine grid: an oracle independent of the
// adaptive Gauss-Kronrod panels.
double simpson_I_T(const GammaSignature& sig, const WeightSpec& w) {
  const double a = std::max(min_height(sig), w.T - w.support_halfwidth());
  const double b = w.T + w.support_halfwidth();
  const int n = 20000;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = a + h * i;
    const double f = -2.0 * delta_logderiv(sig, t, LogDerivMode::kExact).real() * w(t);
    sum += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return sum * h / 3.0;
}

TEST(IT, MatchesSimpsonAndReference) {
  const WeightSpec w(100.0);
  const double value = compute_I_T(kDelta, w);
  EXPECT_NEAR(value, 163.89940064209704038, 1e-8);  // mpmath quad
  EXPECT_NEAR(value, simpson_I_T(kDelta, w), 1e-8);
  const WeightSpec w2(300.0);
  EXPECT_NEAR(compute_I_T(kMaass, w2), simpson_I_T(kMaass, w2), 1e-8);
  EXPECT_THROW(compute_I_T(kDelta, WeightSpec(30.0)), Error);
}

TEST(IT, ApproachesMainTerm) {
  double previous = INFINITY;
  for (const double T : {100.0, 400.0, 1600.0}) {
    const WeightSpec w(T);
    const double ratio = compute_I_T(kDelta, w) / (4 * kPi * w.H * std::log(T / (2 * kPi)));
    EXPECT_GT(ratio, 0.8);
    EXPECT_LT(ratio, 1.2);
    EXPECT_LT(std::abs(ratio - 1), previous);
    previous = std::abs(ratio - 1);
  }
}

// Counts level crossings of the unwrapped phase on a dense grid.
std::int64_t dense_crossings(const GammaSignature& sig, double theta, double a, double b) {
  const int n = 200000;
  std::int64_t count = 0;
  double prev = delta_phase(sig, a);
  for (int i = 1; i <= n; ++i) {
    const double cur = delta_phase(sig, a + (b - a) * i / n);
    count += static_cast<std::int64_t>(std::floor((prev - 2 * theta) / (2 * kPi)) -
                                       std::floor((cur - 2 * theta) / (2 * kPi)));
    prev = cur;
  }
  return count;
}

TEST(PhaseSolver, CountsMatchDenseOracle) {
  for (const double theta : {0.0, kPi / 4, kPi / 2}) {
    const auto set = solve_T_theta(kDelta, theta, 100.0, 400.0);
    EXPECT_EQ(static_cast<std::int64_t>(set.points.size()), set.predicted_count);
    EXPECT_EQ(static_cast<std::int64_t>(set.points.size()), dense_crossings(kDelta, theta, 100.0, 400.0));
    for (const auto& p : set.points) {
      EXPECT_LT(p.residual, 1e-10);
      EXPECT_GE(p.t, 100.0);
      EXPECT_LE(p.t, 400.0);
    }
    for (std::size_t i = 1; i < set.points.size(); ++i) EXPECT_LT(set.points[i - 1].t, set.points[i].t);
  }
}

TEST(PhaseSolver, PeriodPi) {
  const auto a = solve_T_theta(kMaass, 0.3, 50.0, 150.0);
  const auto b = solve_T_theta(kMaass, 0.3 + kPi, 50.0, 150.0);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].t, b.points[i].t);
  EXPECT_NEAR(b.theta, 0.3, 1e-15);
}

TEST(PhaseSolver, Preconditions) {
  EXPECT_THROW(solve_T_theta(kMaass, 0.0, 10.0, 100.0), Error);
  EXPECT_THROW(solve_T_theta(kDelta, 0.0, 100.0, 100.0), Error);
  try {
    solve_T_theta(kDelta, 0.0, 100.0, 200.0, 0.0);
    FAIL() << "zero tolerance should be unattainable";
  } catch (const AccuracyError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAccuracy);
  }
}

TEST(CriticalLineIntegral, DiagonalIdentity) {
  const auto res = offdiag_integral_check(3, 3, WeightSpec(80.0), kDelta);
  EXPECT_LT(std::abs(res.value / res.prediction - 1.0), 1e-2);
  EXPECT_EQ(res.prediction.imag(), 0.0);
}

TEST(CriticalLineIntegral, OffDiagonalDecays) {
  const auto a = offdiag_integral_check(2, 1, WeightSpec(80.0), kDelta);
  const auto b = offdiag_integral_check(2, 1, WeightSpec(160.0), kDelta);
  EXPECT_LT(std::abs(b.value), std::abs(a.value));
  EXPECT_EQ(a.prediction, cplx(0.0, 0.0));
  // The mirrored weight centred at -T sees the same phase structure.
  const auto c = offdiag_integral_check(2, 1, WeightSpec(160.0), kDelta, {}, CoshShift::kPlus);
  EXPECT_NEAR(std::abs(c.value), std::abs(b.value), 1e-9 * b.I_T);
}

TEST(Quadrature, GaussKronrodAndFailure) {
  const auto r = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, {});
  EXPECT_NEAR(r.value, std::sqrt(kPi), 1e-13);
  QuadratureSpec strict;
  strict.rel_tol = 1e-300;
  strict.max_depth = 1;
  EXPECT_THROW(integrate([](double x) { return std::sin(50 * x) / (x + 1e-3); }, 0.0, 10.0, strict), AccuracyError);
}

}  // namespace
}  // namespace reslab
