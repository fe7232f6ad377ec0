#pragma once

// Evaluation of L(f, s) on the critical line and the Euler-product toolkit
// around the Rankin-Selberg convolution L(f x f, s) = zeta(s) L(sym^2 f, s).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "reslab/archimedean.hpp"
#include "reslab/arith.hpp"

namespace reslab {

// Even cutoff phi with phi = 1 on [0, inner], phi = 0 on [1, inf), monotone between.
struct SmoothCutoff {
  enum class Shape {
    kSmoothstep,   // quintic smoothstep, C^2
    kExponential,  // exp(-1/x) blend, C^infinity
  };

  double inner = 0.5;
  Shape shape = Shape::kSmoothstep;

  double operator()(double x) const;
};

struct AfeOptions {
  double contour = 3.0;       // Re(u) of the V contour
  double step = 0.1;          // trapezoid spacing in Im(u)
  double u_max = 7.5;         // |Im u| cutoff; e^{9 - u_max^2} < 1e-16
  double table_step = 0.005;  // log-y spacing of the interpolation table
  double tail_tol = 1e-8;     // target size of the discarded AFE tail
};

struct AfeValue {
  cplx value;
  std::uint64_t n_max = 0;
  double tail_bound = 0;  // |V_t(n_max)|, measured
};

// Approximate functional equation
//   L(1/2 + it) = sum lambda(n) n^{-1/2-it} V_t(n) + Delta(it) sum lambda(n) n^{-1/2+it} V_{-t}(n),
//   V_t(y) = (1/2 pi i) int_{(3)} y^{-u} e^{u^2} L_inf(1/2+it+u)/L_inf(1/2+it) du/u.
// Holds a reference to the table, which must outlive the context.
class AfeContext {
 public:
  AfeContext(const GammaSignature& sig, const EigenvalueTable& eigen, AfeOptions options = {});

  const GammaSignature& signature() const noexcept { return sig_; }
  const EigenvalueTable& eigen() const noexcept { return eigen_; }
  const AfeOptions& options() const noexcept { return options_; }

  // V_nu(y) by direct quadrature on the contour.
  cplx v_weight(double nu, double y) const;

  // Number of terms needed at height t for the tail to fall below tail_tol.
  std::uint64_t truncation(double t) const;

  // Throws IncompleteSourceError when the table is shorter than truncation(t).
  AfeValue evaluate(double t) const;

 private:
  struct Contour {
    std::vector<cplx> nodes;    // u_j
    std::vector<cplx> weights;  // (h / 2 pi) e^{u_j^2} G(u_j) / u_j
  };
  Contour contour_for(double nu) const;

  GammaSignature sig_;
  const EigenvalueTable& eigen_;
  AfeOptions options_;
};

// sum_n lambda(n) n^{-s} phi(n / X). Needs X <= table limit.
cplx evaluate_L_smoothed(const EigenvalueTable& eigen, const SmoothCutoff& cutoff, cplx s, double X);

// Truncated Euler product prod_{p <= P} (1 - lambda(p) p^{-s} + p^{-2s})^{-1}.
cplx euler_product_L(const EigenvalueTable& eigen, cplx s, std::uint64_t P);

// Local roots alpha_p, beta_p of x^2 - lambda(p) x + 1.
struct SatakeRoots {
  cplx alpha;
  cplx beta;
};
SatakeRoots satake_roots(double lambda_p);

struct LocalFactors {
  cplx zeta;
  cplx sym2;  // (1 - alpha^2 x)^{-1} (1 - x)^{-1} (1 - beta^2 x)^{-1}, x = p^{-s}
  cplx rs;    // 1 / ((1 - x)^2 (1 - (lambda^2 - 2) x + x^2)), from lambda alone
};
LocalFactors local_factors(double lambda_p, std::uint64_t p, cplx s);

struct SymmetricSquareProducts {
  cplx rs;
  cplx sym2;
  cplx zeta;
  double max_local_mismatch = 0;  // max_p |rs_p - zeta_p sym2_p|
};

// Truncated products over p <= P. Throws Error(kDomain) for Re(s) <= 1.
SymmetricSquareProducts symmetric_square_tools(const EigenvalueTable& eigen, cplx s, std::uint64_t P);

enum class FractionalPower { kQuarter, kHalf };

// Coefficients of L(f x f, s)^z with z = 1/4 or 1/2: at p^k,
//   sum_{i+j+l=k} d_{2z}(p^i) d_z(p^j) d_z(p^l) alpha^{2j} beta^{2l}.
MultiplicativeFunction fractional_power_coeffs(const EigenvalueTable& eigen, FractionalPower variant,
                                               std::uint64_t limit);

// Dirichlet coefficients of L(f x f, s): sum_{d^2 | n} lambda(n / d^2)^2.
MultiplicativeFunction rankin_selberg_coeffs(const EigenvalueTable& eigen, std::uint64_t limit);

struct ShiftedFactor {
  std::function<double(std::uint64_t p, unsigned k)> f;  // prime-power values, f(p, 0) = 1
  unsigned shift = 0;
};

// [sum_k prod_i f_i(p^{shift_i + k}) p^{-ks}] / [sum_k prod_i f_i(p^k) p^{-ks}], k <= k_max.
// With `absolute`, each product is replaced by its absolute value.
// Throws Error(kConditioning) if the denominator is below 1e-6 in magnitude.
cplx shifted_local_factor(std::span<const ShiftedFactor> factors, std::uint64_t p, cplx s,
                          unsigned k_max = 12, bool absolute = false);

struct SelbergDelange {
  double empirical = 0;
  double predicted = 0;
  double ratio = 0;
};

// empirical = sum_{n <= x} a_n, predicted = x (log x)^{z-1} G1 / Gamma(z).
SelbergDelange selberg_delange_check(const MultiplicativeFunction& coeffs, double z, double x, double G1);

// Truncated product prod_{p <= P} (sum_k a(p^k) p^{-k}) (1 - 1/p)^z approximating G(1; z).
double selberg_delange_constant(const MultiplicativeFunction& coeffs, double z, std::uint64_t P,
                                unsigned k_max = 30);

}  // namespace reslab
