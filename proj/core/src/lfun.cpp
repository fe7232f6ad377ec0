#include "reslab/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "reslab/error.hpp"
#include "reslab/summation.hpp"

namespace reslab {
namespace {

constexpr double kPi = std::numbers::pi;

// Smooth step S on [0, 1] with S(0) = 0, S(1) = 1.
double exp_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / y);
  const double b = std::exp(-1.0 / (1.0 - y));
  return a / (a + b);
}

double poly_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return y * y * y * (10.0 + y * (-15.0 + 6.0 * y));
}

// Scale at which V_t(y) switches from 1 to 0: the square root of the analytic conductor.
double conductor_root(const GammaSignature& sig, double t) {
  return (std::abs(t) + std::abs(sig.mu1) + std::abs(sig.mu2) + 1.0) / (2.0 * kPi);
}

// Upper bound for sum_{n > C e^z} n^{-1/2} |V(n)| using V(y) ~ erfc(log(y/C)/2)/2.
double tail_estimate(double C, double z) {
  const double h = 0.01;
  CompensatedSum<double> s;
  for (double w = z; w < z + 40.0; w += h) {
    const double f = std::exp(0.5 * w) * 0.5 * std::erfc(0.5 * w);
    s += (w == z ? 0.5 : 1.0) * f;
  }
  return std::sqrt(C) * h * s.value();
}

// Left contour abscissa for small y: halfway to the first Gamma pole, at most 3.
double left_abscissa(const GammaSignature& sig) {
  const double first_pole = 0.5 + std::min(sig.mu1.real(), sig.mu2.real());
  return std::min(3.0, 0.5 * first_pole);
}

}  // namespace

double SmoothCutoff::operator()(double x) const {
  x = std::abs(x);
  if (x <= inner) return 1.0;
  if (x >= 1.0) return 0.0;
  const double y = (x - inner) / (1.0 - inner);
  return 1.0 - (shape == Shape::kExponential ? exp_step(y) : poly_step(y));
}

AfeContext::AfeContext(const GammaSignature& sig, const EigenvalueTable& eigen, AfeOptions options)
    : sig_(sig), eigen_(eigen), options_(options) {
  if (!(options_.step > 0.0) || !(options_.u_max > 0.0) || !(options_.table_step > 0.0)) {
    throw Error(ErrorKind::kConfig, "AFE quadrature parameters must be positive");
  }
}

AfeContext::Contour AfeContext::contour_for(double nu) const {
  Contour c;
  const double h = options_.step;
  const auto count = static_cast<int>(std::ceil(options_.u_max / h));
  const cplx base = log_L_inf(sig_, cplx(0.5, nu));
  for (int j = -count; j <= count; ++j) {
    const cplx u(options_.contour, j * h);
    const cplx g = std::exp(log_L_inf(sig_, cplx(0.5, nu) + u) - base + u * u);
    c.nodes.push_back(u);
    c.weights.push_back(h / (2.0 * kPi) * g / u);
  }
  return c;
}

cplx AfeContext::v_weight(double nu, double y) const {
  if (!(y > 0.0)) throw Error(ErrorKind::kDomain, "V weight needs y > 0");
  const double log_y = std::log(y);
  if (y >= conductor_root(sig_, nu)) {
    const Contour c = contour_for(nu);
    CompensatedSum<cplx> s;
    for (std::size_t j = 0; j < c.nodes.size(); ++j) s += c.weights[j] * std::exp(-c.nodes[j] * log_y);
    return s.value();
  }
  // Below the transition the integrand on Re(u) = 3 is huge and cancels; move
  // the contour past u = 0 and add the residue 1 instead. The trapezoid step
  // shrinks with the distance to the nearest singularity.
  AfeOptions left = options_;
  left.contour = -left_abscissa(sig_);
  left.step = std::min(options_.step, 0.16 * left_abscissa(sig_));
  const AfeContext shifted(sig_, eigen_, left);
  const Contour c = shifted.contour_for(nu);
  CompensatedSum<cplx> s;
  s += cplx(1.0, 0.0);
  for (std::size_t j = 0; j < c.nodes.size(); ++j) s += c.weights[j] * std::exp(-c.nodes[j] * log_y);
  return s.value();
}

std::uint64_t AfeContext::truncation(double t) const {
  const double C = std::max(1.0, conductor_root(sig_, t));
  // The estimate decreases in z; bisect for the smallest admissible z.
  double lo = 0.0;
  double hi = 40.0;
  if (tail_estimate(C, lo) <= options_.tail_tol) hi = lo;
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (tail_estimate(C, mid) > options_.tail_tol ? lo : hi) = mid;
  }
  const double z = hi;
  return static_cast<std::uint64_t>(std::ceil(C * std::exp(z)));
}

AfeValue AfeContext::evaluate(double t) const {
  AfeValue out;
  out.n_max = truncation(t);
  if (out.n_max > eigen_.limit()) {
    throw IncompleteSourceError(out.n_max, "AFE at t = " + std::to_string(t) + " needs " +
                                               std::to_string(out.n_max) + " coefficients");
  }

  // Tabulate V_t(e^x) and its x-derivative on a uniform grid, then use cubic
  // Hermite interpolation for the sum. Each node uses whichever contour keeps
  // the integrand free of cancellation.
  const double split = std::log(conductor_root(sig_, t));
  const Contour right = contour_for(t);
  AfeOptions left_opts = options_;
  left_opts.contour = -left_abscissa(sig_);
  left_opts.step = std::min(options_.step, 0.16 * left_abscissa(sig_));
  const Contour left = AfeContext(sig_, eigen_, left_opts).contour_for(t);

  const double hx = options_.table_step;
  const double x_end = std::log(static_cast<double>(out.n_max)) + 2.0 * hx;
  const auto nodes = static_cast<std::size_t>(std::ceil(x_end / hx)) + 1;
  std::vector<cplx> v(nodes);
  std::vector<cplx> dv(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = static_cast<double>(i) * hx;
    const bool use_right = x >= split;
    const Contour& c = use_right ? right : left;
    const double sigma = c.nodes.front().real();
    const double v0 = c.nodes.front().imag();
    const double dv_step = c.nodes.size() > 1 ? c.nodes[1].imag() - v0 : 0.0;
    // e^{-u_j x} = e^{-sigma x} e^{-i v_j x}, stepped through j by a fixed rotation.
    cplx rot = std::polar(std::exp(-sigma * x), -v0 * x);
    const cplx step = std::polar(1.0, -dv_step * x);
    cplx val = use_right ? cplx(0.0) : cplx(1.0);
    cplx der = 0.0;
    for (std::size_t j = 0; j < c.nodes.size(); ++j) {
      const cplx term = c.weights[j] * rot;
      val += term;
      der -= c.nodes[j] * term;
      rot *= step;
    }
    v[i] = val;
    dv[i] = der;
  }

  const auto values = eigen_.values();
  cplx sum = 0.0;
  for (std::uint64_t n = 1; n <= out.n_max; ++n) {
    const double lam = values[n];
    if (lam == 0.0) continue;
    const double x = std::log(static_cast<double>(n));
    const double pos = x / hx;
    const auto i = std::min(static_cast<std::size_t>(pos), nodes - 2);
    const double s = pos - static_cast<double>(i);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const cplx vv = (2 * s3 - 3 * s2 + 1) * v[i] + (s3 - 2 * s2 + s) * hx * dv[i] +
                    (-2 * s3 + 3 * s2) * v[i + 1] + (s3 - s2) * hx * dv[i + 1];
    sum += lam / std::sqrt(static_cast<double>(n)) * std::polar(1.0, -t * x) * vv;
  }
  // For real signature data V_{-t} = conj(V_t), so the dual sum is conj(sum).
  out.value = sum + delta_ratio(sig_, cplx(0.0, t)) * std::conj(sum);
  out.tail_bound = std::abs(v_weight(t, static_cast<double>(out.n_max)));
  return out;
}

cplx evaluate_L_smoothed(const EigenvalueTable& eigen, const SmoothCutoff& cutoff, cplx s, double X) {
  if (!(X >= 1.0)) throw Error(ErrorKind::kDomain, "smoothing length must be at least 1");
  const auto top = static_cast<std::uint64_t>(std::ceil(X));
  if (top > eigen.limit()) {
    throw IncompleteSourceError(top, "smoothed sum needs " + std::to_string(top) + " coefficients");
  }
  const auto values = eigen.values();
  CompensatedSum<cplx> sum;
  for (std::uint64_t n = 1; n < top; ++n) {
    const double phi = cutoff(static_cast<double>(n) / X);
    if (phi == 0.0) break;
    sum += values[n] * phi * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return sum.value();
}

cplx euler_product_L(const EigenvalueTable& eigen, cplx s, std::uint64_t P) {
  if (P > eigen.limit()) throw IncompleteSourceError(P, "Euler product cutoff exceeds table");
  const PrimeList primes = sieve_primes(P);
  cplx log_prod = 0.0;
  for (const auto p : primes) {
    const cplx x = std::exp(-s * std::log(static_cast<double>(p)));
    log_prod -= std::log(1.0 - eigen(p) * x + x * x);
  }
  return std::exp(log_prod);
}

SatakeRoots satake_roots(double lambda_p) {
  const cplx disc = std::sqrt(cplx(lambda_p * lambda_p - 4.0, 0.0));
  return {(lambda_p + disc) / 2.0, (lambda_p - disc) / 2.0};
}

LocalFactors local_factors(double lambda_p, std::uint64_t p, cplx s) {
  const cplx x = std::exp(-s * std::log(static_cast<double>(p)));
  const SatakeRoots roots = satake_roots(lambda_p);
  LocalFactors out;
  out.zeta = 1.0 / (1.0 - x);
  out.sym2 = 1.0 / ((1.0 - roots.alpha * roots.alpha * x) * (1.0 - x) * (1.0 - roots.beta * roots.beta * x));
  const double c = lambda_p * lambda_p - 2.0;
  out.rs = 1.0 / ((1.0 - x) * (1.0 - x) * (1.0 - c * x + x * x));
  return out;
}

SymmetricSquareProducts symmetric_square_tools(const EigenvalueTable& eigen, cplx s, std::uint64_t P) {
  if (!(s.real() > 1.0)) throw Error(ErrorKind::kDomain, "Euler products diverge for Re(s) <= 1");
  if (P > eigen.limit()) throw IncompleteSourceError(P, "prime cutoff exceeds table");
  const PrimeList primes = sieve_primes(P);
  CompensatedSum<cplx> log_rs;
  CompensatedSum<cplx> log_sym2;
  CompensatedSum<cplx> log_zeta;
  SymmetricSquareProducts out;
  for (const auto p : primes) {
    const LocalFactors f = local_factors(eigen(p), p, s);
    log_rs += std::log(f.rs);
    log_sym2 += std::log(f.sym2);
    log_zeta += std::log(f.zeta);
    out.max_local_mismatch = std::max(out.max_local_mismatch, std::abs(f.rs - f.zeta * f.sym2));
  }
  out.rs = std::exp(log_rs.value());
  out.sym2 = std::exp(log_sym2.value());
  out.zeta = std::exp(log_zeta.value());
  return out;
}

MultiplicativeFunction fractional_power_coeffs(const EigenvalueTable& eigen, FractionalPower variant,
                                               std::uint64_t limit) {
  if (limit > eigen.limit()) throw IncompleteSourceError(limit, "coefficient limit exceeds table");
  const double z = variant == FractionalPower::kQuarter ? 0.25 : 0.5;
  std::vector<double> prime_values(limit + 1, 0.0);
  for (const auto p : sieve_primes(std::max<std::uint64_t>(limit, 2))) {
    if (p <= limit) prime_values[p] = eigen(p);
  }
  auto rule = [z, prime_values = std::move(prime_values)](std::uint64_t p, unsigned k) {
    const SatakeRoots roots = satake_roots(prime_values.at(p));
    const cplx a2 = roots.alpha * roots.alpha;
    const cplx b2 = roots.beta * roots.beta;
    cplx total = 0.0;
    for (unsigned i = 0; i <= k; ++i) {
      const double di = generalized_binomial(2.0 * z + i - 1.0, i);
      for (unsigned j = 0; i + j <= k; ++j) {
        const unsigned l = k - i - j;
        total += di * generalized_binomial(z + j - 1.0, j) * generalized_binomial(z + l - 1.0, l) *
                 std::pow(a2, static_cast<int>(j)) * std::pow(b2, static_cast<int>(l));
      }
    }
    return total.real();
  };
  return MultiplicativeFunction(std::move(rule), limit);
}

MultiplicativeFunction rankin_selberg_coeffs(const EigenvalueTable& eigen, std::uint64_t limit) {
  if (limit > eigen.limit()) throw IncompleteSourceError(limit, "coefficient limit exceeds table");
  const MultiplicativeFunction lam = eigen.as_multiplicative();
  auto rule = [lam](std::uint64_t p, unsigned k) {
    double s = 0.0;
    for (unsigned j = k % 2; j <= k; j += 2) {
      const double l = lam.prime_power(p, j);
      s += l * l;
    }
    return s;
  };
  return MultiplicativeFunction(std::move(rule), limit);
}

cplx shifted_local_factor(std::span<const ShiftedFactor> factors, std::uint64_t p, cplx s,
                          unsigned k_max, bool absolute) {
  const cplx x = std::exp(-s * std::log(static_cast<double>(p)));
  cplx num = 0.0;
  cplx den = 0.0;
  cplx xk = 1.0;
  for (unsigned k = 0; k <= k_max; ++k) {
    double a = 1.0;
    double b = 1.0;
    for (const auto& f : factors) {
      const unsigned shifted = f.shift + k;
      a *= shifted == 0 ? 1.0 : f.f(p, shifted);
      b *= k == 0 ? 1.0 : f.f(p, k);
    }
    if (absolute) {
      a = std::abs(a);
      b = std::abs(b);
    }
    num += a * xk;
    den += b * xk;
    xk *= x;
  }
  if (std::abs(den) < 1e-6) throw Error(ErrorKind::kConditioning, "local factor denominator near zero");
  return num / den;
}

SelbergDelange selberg_delange_check(const MultiplicativeFunction& coeffs, double z, double x, double G1) {
  if (!(x >= 3.0)) throw Error(ErrorKind::kDomain, "Selberg-Delange check needs x >= 3");
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  if (top > coeffs.limit()) throw IncompleteSourceError(top, "coefficients shorter than x");
  CompensatedSum<double> sum;
  const auto values = coeffs.values();
  for (std::uint64_t n = 1; n <= top; ++n) sum += values[n];
  SelbergDelange out;
  out.empirical = sum.value();
  out.predicted = x * std::pow(std::log(x), z - 1.0) * G1 / std::tgamma(z);
  out.ratio = out.empirical / out.predicted;
  return out;
}

double selberg_delange_constant(const MultiplicativeFunction& coeffs, double z, std::uint64_t P,
                                unsigned k_max) {
  CompensatedSum<double> log_g;
  for (const auto p : sieve_primes(P)) {
    const double inv = 1.0 / static_cast<double>(p);
    double local = 1.0;
    double pk = 1.0;
    for (unsigned k = 1; k <= k_max; ++k) {
      pk *= inv;
      local += coeffs.prime_power(p, k) * pk;
    }
    log_g += std::log(local) + z * std::log1p(-inv);
  }
  return std::exp(log_g.value());
}

}  // namespace reslab
