#pragma once

// Gamma factors at infinity, the ratio Delta(s) = L_inf(1/2 - s) / L_inf(1/2 + s),
// its logarithmic derivative, the weighted integral I_T and the solver for
// heights where Delta(it) takes a prescribed value.

#include <cstdint>
#include <string>
#include <vector>

#include "reslab/arith.hpp"
#include "reslab/quadrature.hpp"
#include "reslab/special.hpp"

namespace reslab {

// L_inf(s) = pi^{-s} Gamma((s + mu1)/2) Gamma((s + mu2)/2).
struct GammaSignature {
  cplx mu1;
  cplx mu2;
  double r = 0.0;   // Maass spectral parameter, 0 for holomorphic forms
  int weight = 0;   // holomorphic weight, 0 for Maass forms

  static GammaSignature maass(double r);
  // mu = ((k-1)/2, (k+1)/2); equal to (2 pi)^{-s} Gamma(s + (k-1)/2) up to a constant.
  static GammaSignature holomorphic(int weight);

  std::string describe() const;
};

GammaSignature signature_for(const EigenvalueTable& table);

// Weight sech((t - T)/H) with H = T / (log T)^2.
struct WeightSpec {
  double T = 0;
  double H = 0;

  explicit WeightSpec(double T);
  WeightSpec(double T, double H);

  double operator()(double t) const;
  // Half-width beyond which the weight is below `floor`.
  double support_halfwidth(double floor = 1e-16) const;
};

cplx log_L_inf(const GammaSignature& sig, cplx s);

// Throws Error(kConditioning) within 1e-8 of a Gamma pole.
cplx delta_ratio(const GammaSignature& sig, cplx s);

// Continuous phase Phi(t) with Delta(it) = exp(i Phi(t)); Phi' = Delta'/Delta(it).
double delta_phase(const GammaSignature& sig, double t);

enum class LogDerivMode { kExact, kAsymptotic };

// Delta'/Delta(it). The exact mode sums four digamma values; the asymptotic
// mode replaces each by a logarithm and needs |t| > asymptotic_threshold(sig).
cplx delta_logderiv(const GammaSignature& sig, double t, LogDerivMode mode);
double asymptotic_threshold(const GammaSignature& sig);

// Smallest admissible lower height for phase and I_T computations: max(20, 2|r|).
double min_height(const GammaSignature& sig);

// I_T = int_{t >= t0} -2 Delta'/Delta(it) sech((t - T)/H) dt with t0 = min_height.
double compute_I_T(const GammaSignature& sig, const WeightSpec& weight, const QuadratureSpec& quad = {});

struct PhasePoint {
  double t = 0;
  double residual = 0;  // |Delta(it) - e^{2 i theta}|
  double phase = 0;     // Phi(t)
};

struct PhasePointSet {
  double theta = 0;  // reduced to [0, pi)
  double t_lo = 0;
  double t_hi = 0;
  std::string signature;
  std::int64_t predicted_count = 0;  // winding count from the phase at the endpoints
  std::size_t grid_steps = 0;
  std::vector<PhasePoint> points;
};

// All t in [t_lo, t_hi] with Delta(it) = e^{2 i theta}. Throws Error(kGridRefinement)
// when the phase grid cannot be made fine enough, AccuracyError when a root
// misses `tol`.
PhasePointSet solve_T_theta(const GammaSignature& sig, double theta, double t_lo, double t_hi,
                            double tol = 1e-10);

enum class CoshShift { kMinus, kPlus };

struct OffdiagResult {
  cplx value;
  cplx prediction;
  double I_T = 0;
};

// (1/2 pi) int (m/n)^{it} Delta'/Delta(it) sech((T -+ t)/H) dt along the critical
// axis, against the prediction -delta_{m=n} I_T / (4 pi).
OffdiagResult offdiag_integral_check(std::uint64_t m, std::uint64_t n, const WeightSpec& weight,
                                     const GammaSignature& sig, const QuadratureSpec& quad = {},
                                     CoshShift shift = CoshShift::kMinus);

}  // namespace reslab
