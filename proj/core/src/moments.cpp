#include "reslab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reslab/error.hpp"
#include "reslab/summation.hpp"

namespace reslab {
namespace {

constexpr double kPi = std::numbers::pi;

using ld = long double;

// h(x) = (x/2) log|x / 2e|, the Stirling phase of one Gamma factor.
ld stirling_phase(ld x) { return 0.5L * x * (std::log(std::abs(x) / 2.0L) - 1.0L); }

double half_log(double x) { return 0.5 * (std::log(std::abs(x) / 2.0) - 1.0); }

// log(m2 l2 / (n m1 l1)) for K, log(m2 l2 n / (m1 l1)) for K~.
ld log_index_ratio(const KernelSpec& s) {
  const ld sign = s.variant == KernelVariant::kK ? -1.0L : 1.0L;
  return std::log(static_cast<ld>(s.m2)) + std::log(static_cast<ld>(s.l2)) - std::log(static_cast<ld>(s.m1)) -
         std::log(static_cast<ld>(s.l1)) + sign * std::log(static_cast<ld>(s.n));
}

ld phase_ld(const KernelSpec& s, ld nu) {
  const ld r = s.r;
  const ld u = s.u;
  if (s.variant == KernelVariant::kK) {
    const ld log_pi2 = 2.0L * std::log(std::numbers::pi_v<ld>);
    return nu * (log_index_ratio(s) - log_pi2) + stirling_phase(r + nu) + stirling_phase(nu - r) +
           stirling_phase(r + u + nu) + stirling_phase(nu + u - r);
  }
  return nu * log_index_ratio(s) + stirling_phase(u + r - nu) + stirling_phase(u - nu - r) +
         stirling_phase(nu - r) + stirling_phase(nu + r);
}

// log of (1/16 + ((r + nu)^2 + (nu - r)^2)/4 + (nu^2 - r^2)^2) / (16 pi^4).
double log_conductor(double r, double nu) {
  const double q = 1.0 / 16.0 + 0.25 * ((r + nu) * (r + nu) + (nu - r) * (nu - r)) +
                   (nu * nu - r * r) * (nu * nu - r * r);
  return std::log(q / (16.0 * std::pow(kPi, 4)));
}

bool in_range(const WeightSpec& w, double t) { return t >= 0.5 * w.T && t <= 2.0 * w.T; }

}  // namespace

NormalizingWeight normalizing_weight(const DirichletPolynomial& R, const PhasePointSet& points,
                                     const WeightSpec& weight, const GammaSignature& sig,
                                     const QuadratureSpec& quad) {
  if (points.t_lo > 0.5 * weight.T || points.t_hi < 2.0 * weight.T) {
    throw Error(ErrorKind::kDomain, "point set must cover [T/2, 2T]");
  }
  NormalizingWeight nw;
  CompensatedSum<double> direct;
  for (const auto& p : points.points) {
    if (!in_range(weight, p.t)) continue;
    direct += std::norm(R.evaluate(cplx(0.0, p.t))) * weight(p.t);
    ++nw.point_count;
  }
  if (nw.point_count == 0) throw Error(ErrorKind::kInsufficientPoints, "no phase points in [T/2, 2T]");
  nw.direct = direct.value();
  nw.I_T = compute_I_T(sig, weight, quad);
  nw.sum_an_squared = R.sum_of_squares();
  nw.diagonal = nw.sum_an_squared * nw.I_T / (4.0 * kPi);
  nw.ratio = nw.direct / nw.diagonal;
  nw.tail_bound = std::max(weight(0.5 * weight.T), weight(2.0 * weight.T));
  return nw;
}

MomentReport moment_sums(const AfeContext& ctx, const ResonatorPolynomials& polys, const PhasePointSet& points,
                         const WeightSpec& weight, const QuadratureSpec& quad) {
  MomentReport rep;
  rep.theta = points.theta;
  rep.weight = weight;
  rep.nw = normalizing_weight(polys.R, points, weight, ctx.signature(), quad);
  rep.point_count = rep.nw.point_count;
  rep.diagnostics.tail_bound = rep.nw.tail_bound;

  CompensatedSum<double> unsigned_sum;
  CompensatedSum<double> weight_sum;
  CompensatedSum<cplx> signed_sum;
  CompensatedSum<cplx> rotated_sum;
  for (const auto& p : points.points) {
    if (!in_range(weight, p.t)) continue;
    const double omega = std::norm(polys.R.evaluate(cplx(0.0, p.t))) * weight(p.t) / rep.nw.direct;
    const AfeValue L = ctx.evaluate(p.t);
    rep.diagnostics.afe_max_terms = std::max(rep.diagnostics.afe_max_terms, L.n_max);
    rep.diagnostics.afe_max_tail = std::max(rep.diagnostics.afe_max_tail, L.tail_bound);
    weight_sum += omega;
    unsigned_sum += std::abs(L.value) * omega;
    signed_sum += L.value * omega;
    const cplx a = polys.A_half.evaluate(cplx(0.5, p.t));
    const double a2 = std::norm(a);
    if (!(a2 > 1e-300)) {
      ++rep.diagnostics.rotated_skipped;
      continue;
    }
    rotated_sum += std::conj(L.value) * (a * a / a2) * omega;
  }
  rep.unsigned_moment = unsigned_sum.value();
  rep.signed_moment = signed_sum.value();
  rep.rotated_moment = rotated_sum.value();
  rep.diagnostics.weight_sum = weight_sum.value();
  return rep;
}

double diagonal_main_term(const DirichletPolynomial& R_star, const DirichletPolynomial& A_half,
                          const EigenvalueTable& eigen, DiagonalVariant variant, double max_tuples) {
  const double tuples = std::pow(static_cast<double>(R_star.size()), 2) * std::pow(static_cast<double>(A_half.size()), 2);
  if (tuples > max_tuples) {
    throw Error(ErrorKind::kBudget, "diagonal enumeration needs " + std::to_string(tuples) +
                                        " tuples; use a smaller toy profile");
  }
  const auto& ls = R_star.indices();
  const auto& lc = R_star.coefficients();
  const auto& ms = A_half.indices();
  const auto& mc = A_half.coefficients();
  CompensatedSum<double> total;
  for (std::size_t i1 = 0; i1 < ls.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < ls.size(); ++i2) {
      for (std::size_t j1 = 0; j1 < ms.size(); ++j1) {
        for (std::size_t j2 = 0; j2 < ms.size(); ++j2) {
          std::uint64_t num, den;
          if (variant == DiagonalVariant::kUnsigned) {
            num = ms[j1] * ms[j2] * ls[i2];
            den = ls[i1];
          } else {
            num = ms[j2] * ls[i2];
            den = ms[j1] * ls[i1];
          }
          if (num % den != 0) continue;
          const std::uint64_t n = num / den;
          if (n > eigen.limit()) throw IncompleteSourceError(n, "diagonal term needs lambda beyond the table");
          const double scale = std::sqrt(static_cast<double>(n) * static_cast<double>(ms[j1]) *
                                         static_cast<double>(ms[j2]));
          total += lc[i1] * lc[i2] * mc[j1] * mc[j2] * eigen(n) / scale;
        }
      }
    }
  }
  return total.value();
}

double kernel_window(double T, double nu) {
  // Centre -5T/4, half-width 3T/4, flat on the inner 2/3: transitions of width T/4.
  const SmoothCutoff bump{2.0 / 3.0, SmoothCutoff::Shape::kExponential};
  return bump(std::abs(nu + 1.25 * T) / (0.75 * T));
}

double kernel_phase(const KernelSpec& s, double nu) {
  return static_cast<double>(phase_ld(s, nu) / (2.0L * std::numbers::pi_v<ld>));
}

double kernel_phase_deriv(const KernelSpec& s, double nu) {
  const double r = s.r;
  const double u = s.u;
  double d;
  if (s.variant == KernelVariant::kK) {
    d = static_cast<double>(log_index_ratio(s)) - 2.0 * std::log(kPi) + half_log(r + nu) + half_log(nu - r) + half_log(r + u + nu) +
        half_log(nu + u - r) + 2.0;
  } else {
    d = static_cast<double>(log_index_ratio(s)) -
        0.5 * (std::log(std::abs(1.0 + u / (r - nu))) + std::log(std::abs(1.0 - u / (nu + r))));
  }
  return d / (2.0 * kPi);
}

double kernel_amplitude(const KernelSpec& s, double nu) {
  const double T = s.weight.T;
  const double w = kernel_window(T, nu);
  if (w == 0.0) return 0.0;
  const double r = s.r;
  const double u = s.u;
  const double common = log_conductor(r, nu) * w / std::cosh((T + nu) / s.weight.H);
  if (s.variant == KernelVariant::kK) {
    return common * std::pow(std::abs((r + u + nu) / 2.0), 1.25) * std::pow(std::abs((nu + u - r) / 2.0), 1.25) *
           std::pow(std::abs((r + nu) / 2.0), 0.25) * std::pow(std::abs((nu - r) / 2.0), 0.25) * std::exp(kPi * u);
  }
  return common * std::exp(-kPi * u / 2.0) * std::pow(std::abs((u + r - nu) / 2.0), 1.25) *
         std::pow(std::abs((u - nu - r) / 2.0), 1.25) * std::pow(std::abs((r - nu) / 2.0), 0.25) *
         std::pow(std::abs((r + nu) / 2.0), 0.25);
}

KernelResult oscillatory_kernel(const KernelSpec& spec) {
  for (const auto i : {spec.n, spec.m1, spec.m2, spec.l1, spec.l2}) {
    if (i == 0) throw Error(ErrorKind::kDomain, "kernel indices must be positive");
  }
  const double T = spec.weight.T;
  const double u_bound = spec.u_bound > 0.0 ? spec.u_bound : std::log(T);
  if (std::abs(spec.u) > u_bound) throw Error(ErrorKind::kDomain, "|u| exceeds the kernel window bound");
  if (!(2.0 * std::abs(spec.r) + std::abs(spec.u) < 0.5 * T)) {
    throw Error(ErrorKind::kDomain, "kernel support must stay clear of |nu| = |r| +- u");
  }
  const double a = -2.0 * T;
  const double b = -0.5 * T;

  KernelResult out;
  out.min_abs_phase_deriv = INFINITY;
  double max_rate = 0.0;
  constexpr int kSamples = 4000;
  for (int i = 0; i <= kSamples; ++i) {
    const double nu = a + (b - a) * i / kSamples;
    const double d = std::abs(kernel_phase_deriv(spec, nu));
    out.min_abs_phase_deriv = std::min(out.min_abs_phase_deriv, d);
    max_rate = std::max(max_rate, 2.0 * kPi * d);
  }
  double h = spec.step;
  if (!(h > 0.0)) {
    h = std::min(spec.weight.H / 16.0, (kPi / 8.0) / std::max(max_rate, 1e-3));
  }
  const auto nodes = static_cast<std::size_t>(std::ceil((b - a) / h));
  h = (b - a) / static_cast<double>(nodes);
  out.step = h;
  out.nodes = nodes + 1;

  // The window vanishes at both ends, so the trapezoid end weights drop out.
  ld re = 0.0L, im = 0.0L, mass = 0.0L;
  ld prev_phase = phase_ld(spec, a);
  for (std::size_t i = 1; i < nodes; ++i) {
    const ld nu = static_cast<ld>(a) + static_cast<ld>(h) * static_cast<ld>(i);
    const ld phase = phase_ld(spec, nu);
    if (std::abs(static_cast<double>(phase - prev_phase)) > kPi / 4.0) {
      throw Error(ErrorKind::kGridRefinement, "kernel grid under-resolves the phase; reduce the step");
    }
    prev_phase = phase;
    const ld g = kernel_amplitude(spec, static_cast<double>(nu));
    re += g * std::cos(phase);
    im += g * std::sin(phase);
    mass += std::abs(g);
  }
  out.value = cplx(static_cast<double>(re * h), static_cast<double>(im * h));
  out.amplitude_mass = static_cast<double>(mass * h);
  return out;
}

}  // namespace reslab
