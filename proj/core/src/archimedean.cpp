#include "reslab/archimedean.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "reslab/error.hpp"
#include "reslab/summation.hpp"

namespace reslab {
namespace {

constexpr double kPi = std::numbers::pi;

double distance_to_pole(cplx z) {
  if (z.real() > 0.5) return std::abs(z.imag()) + z.real();
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - cplx(nearest, 0.0));
}

void check_conditioning(const GammaSignature& sig, cplx w) {
  for (const cplx mu : {sig.mu1, sig.mu2}) {
    if (distance_to_pole((w + mu) / 2.0) < 1e-8) {
      throw Error(ErrorKind::kConditioning, "Gamma factor too close to a pole");
    }
  }
}

}  // namespace

GammaSignature GammaSignature::maass(double r) {
  GammaSignature sig;
  sig.mu1 = cplx(0.0, r);
  sig.mu2 = cplx(0.0, -r);
  sig.r = r;
  return sig;
}

GammaSignature GammaSignature::holomorphic(int weight) {
  if (weight < 2) throw Error(ErrorKind::kDomain, "holomorphic weight must be at least 2");
  GammaSignature sig;
  sig.mu1 = cplx((weight - 1) / 2.0, 0.0);
  sig.mu2 = cplx((weight + 1) / 2.0, 0.0);
  sig.weight = weight;
  return sig;
}

std::string GammaSignature::describe() const {
  if (weight > 0) return "holomorphic weight " + std::to_string(weight);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), r);
  return "maass r=" + std::string(buf, res.ptr);
}

GammaSignature signature_for(const EigenvalueTable& table) {
  if (table.kind() == FormKind::kHolomorphicDelta) {
    return GammaSignature::holomorphic(static_cast<int>(table.spectral()));
  }
  return GammaSignature::maass(table.spectral());
}

WeightSpec::WeightSpec(double T) : WeightSpec(T, T / (std::log(T) * std::log(T))) {}

WeightSpec::WeightSpec(double T_, double H_) : T(T_), H(H_) {
  if (!(T > 1.0) || !(H > 0.0)) throw Error(ErrorKind::kDomain, "weight needs T > 1 and H > 0");
}

double WeightSpec::operator()(double t) const { return 1.0 / std::cosh((t - T) / H); }

double WeightSpec::support_halfwidth(double floor) const { return H * std::acosh(1.0 / floor); }

cplx log_L_inf(const GammaSignature& sig, cplx s) {
  return -s * std::log(kPi) + log_gamma((s + sig.mu1) / 2.0) + log_gamma((s + sig.mu2) / 2.0);
}

cplx delta_ratio(const GammaSignature& sig, cplx s) {
  const cplx lo = 0.5 - s;
  const cplx hi = 0.5 + s;
  check_conditioning(sig, lo);
  check_conditioning(sig, hi);
  if (s.real() == 0.0) {
    // On the axis L_inf(1/2 - it) is the conjugate of L_inf(1/2 + it).
    return std::exp(cplx(0.0, -2.0 * log_L_inf(sig, hi).imag()));
  }
  return std::exp(log_L_inf(sig, lo) - log_L_inf(sig, hi));
}

double delta_phase(const GammaSignature& sig, double t) {
  return -2.0 * log_L_inf(sig, cplx(0.5, t)).imag();
}

double asymptotic_threshold(const GammaSignature& sig) {
  return std::max(std::abs(sig.r) + 1.0, 20.0);
}

double min_height(const GammaSignature& sig) { return std::max(20.0, 2.0 * std::abs(sig.r)); }

cplx delta_logderiv(const GammaSignature& sig, double t, LogDerivMode mode) {
  const double two_log_pi = 2.0 * std::log(kPi);
  const cplx it(0.0, t);
  if (mode == LogDerivMode::kExact) {
    const cplx psi_sum = digamma((0.5 - it + sig.mu1) / 2.0) + digamma((0.5 - it + sig.mu2) / 2.0) +
                         digamma((0.5 + it + sig.mu1) / 2.0) + digamma((0.5 + it + sig.mu2) / 2.0);
    return two_log_pi - 0.5 * psi_sum;
  }
  if (!(std::abs(t) > asymptotic_threshold(sig))) {
    throw Error(ErrorKind::kDomain, "asymptotic log-derivative below its validity threshold");
  }
  // psi(z) + psi(conj z) ~ 2 log|z| for each conjugate pair of arguments.
  const double logs = std::log(std::abs((0.5 + sig.mu1 + it) / 2.0)) +
                      std::log(std::abs((0.5 + sig.mu2 + it) / 2.0));
  return two_log_pi - logs;
}

double compute_I_T(const GammaSignature& sig, const WeightSpec& weight, const QuadratureSpec& quad) {
  if (!(weight.T > 40.0)) throw Error(ErrorKind::kDomain, "I_T needs T > 40");
  const double half = weight.support_halfwidth();
  const double a = std::max(min_height(sig), weight.T - half);
  const double b = weight.T + half;
  auto integrand = [&](double t) {
    return -2.0 * delta_logderiv(sig, t, LogDerivMode::kExact).real() * weight(t);
  };
  // Panels of a few H keep the adaptive scheme from missing the peak.
  CompensatedSum<double> total;
  const double panel = 4.0 * weight.H;
  for (double lo = a; lo < b; lo += panel) {
    total += integrate(integrand, lo, std::min(b, lo + panel), quad).value;
  }
  return total.value();
}

PhasePointSet solve_T_theta(const GammaSignature& sig, double theta, double t_lo, double t_hi,
                            double tol) {
  if (!(t_lo >= min_height(sig))) {
    throw Error(ErrorKind::kDomain, "phase solver needs t_lo >= max(20, 2|r|)");
  }
  if (!(t_hi > t_lo)) throw Error(ErrorKind::kEmptyDomain, "empty height interval");

  PhasePointSet out;
  out.theta = theta - kPi * std::floor(theta / kPi);
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  out.signature = sig.describe();
  const double target = 2.0 * out.theta;
  const double two_pi = 2.0 * kPi;

  // |Phi'(t)| is about 2 log(t / 2 pi); the step below keeps each phase
  // increment near pi/8 and the check enforces pi/2.
  std::vector<double> grid;
  std::vector<double> phase;
  for (int attempt = 0;; ++attempt) {
    const double scale = attempt == 0 ? 1.0 : 0.5;
    grid.assign(1, t_lo);
    phase.assign(1, delta_phase(sig, t_lo));
    bool ok = true;
    while (grid.back() < t_hi) {
      const double t = grid.back();
      const double h = scale * kPi / (2.0 * 4.0 * std::log(std::max(t, kPi)));
      const double next = std::min(t_hi, t + h);
      const double p = delta_phase(sig, next);
      const double step = p - phase.back();
      if (!(step < 0.0)) {
        throw Error(ErrorKind::kGridRefinement, "phase is not decreasing on the solver grid");
      }
      if (std::abs(step) >= kPi / 2.0) {
        ok = false;
        break;
      }
      grid.push_back(next);
      phase.push_back(p);
    }
    if (ok) break;
    if (attempt == 1) throw Error(ErrorKind::kGridRefinement, "phase step exceeds pi/2 after refinement");
  }
  out.grid_steps = grid.size() - 1;
  out.predicted_count = static_cast<std::int64_t>(std::floor((phase.front() - target) / two_pi)) -
                        static_cast<std::int64_t>(std::floor((phase.back() - target) / two_pi));

  const cplx want = std::polar(1.0, target);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    // Crossings in the half-open phase range (phase[i+1], phase[i]].
    const double k_hi = std::floor((phase[i] - target) / two_pi);
    const double k_lo = std::floor((phase[i + 1] - target) / two_pi);
    for (double k = k_hi; k > k_lo; k -= 1.0) {
      const double level = target + two_pi * k;
      auto f = [&](double t) { return delta_phase(sig, t) - level; };
      double root = grid[i];
      if (phase[i] != level) {
        std::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            f, grid[i], grid[i + 1], phase[i] - level, phase[i + 1] - level,
            boost::math::tools::eps_tolerance<double>(52), iters);
        root = 0.5 * (bracket.first + bracket.second);
      }
      PhasePoint point;
      point.t = root;
      point.phase = delta_phase(sig, root);
      point.residual = std::abs(delta_ratio(sig, cplx(0.0, root)) - want);
      if (!(point.residual < tol)) {
        throw AccuracyError(root, point.residual, "phase root misses the solver tolerance");
      }
      out.points.push_back(point);
    }
  }
  return out;
}

OffdiagResult offdiag_integral_check(std::uint64_t m, std::uint64_t n, const WeightSpec& weight,
                                     const GammaSignature& sig, const QuadratureSpec& quad,
                                     CoshShift shift) {
  if (m == 0 || n == 0) throw Error(ErrorKind::kDomain, "indices must be positive");
  const double log_ratio = std::log(static_cast<double>(m)) - std::log(static_cast<double>(n));
  const double center = shift == CoshShift::kMinus ? weight.T : -weight.T;
  const double half = weight.support_halfwidth();
  auto integrand = [&](double t) {
    const double w = 1.0 / std::cosh((t - center) / weight.H);
    return std::polar(w / (2.0 * kPi), log_ratio * t) *
           delta_logderiv(sig, t, LogDerivMode::kExact).real();
  };
  CompensatedSum<cplx> total;
  const double panel = 2.0 * weight.H;
  for (double lo = center - half; lo < center + half; lo += panel) {
    total += integrate_complex(integrand, lo, std::min(center + half, lo + panel), quad).value;
  }
  OffdiagResult out;
  out.value = total.value();
  out.I_T = compute_I_T(sig, weight, quad);
  out.prediction = m == n ? cplx(-out.I_T / (4.0 * kPi), 0.0) : cplx(0.0, 0.0);
  return out;
}

}  // namespace reslab
