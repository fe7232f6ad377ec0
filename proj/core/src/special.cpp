#include "reslab/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "reslab/error.hpp"

namespace reslab {
namespace {

// B_{2k} for k = 1..10.
constexpr std::array<double, 10> kBernoulli{
    1.0 / 6.0,   -1.0 / 30.0,      1.0 / 42.0,   -1.0 / 30.0,     5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
};

// Stirling series is used once Re z reaches this value.
constexpr double kShift = 15.0;

void check_pole(cplx z) {
  if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-12) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z.real() - nearest) < 1e-12) {
      throw Error(ErrorKind::kPole, "Gamma pole at " + std::to_string(nearest));
    }
  }
}

}  // namespace

cplx log_gamma(cplx z) {
  check_pole(z);
  // log Gamma(z) = log Gamma(z + n) - sum_{k<n} log(z + k); each principal log
  // keeps the result on the principal branch off the negative real axis.
  cplx shift_sum = 0.0;
  while (z.real() < kShift) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double two_k = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / (two_k * (two_k - 1.0)) * power;
    power *= inv2;
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift_sum;
}

cplx digamma(cplx z) {
  check_pole(z);
  cplx shift_sum = 0.0;
  while (z.real() < kShift) {
    shift_sum += 1.0 / z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double two_k = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / two_k * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - shift_sum;
}

}  // namespace reslab
