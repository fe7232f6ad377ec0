#pragma once

// Normalizing weight and weighted first moments of L(f, 1/2 + it) over the
// prescribed-argument set, their diagonal predictions, and the oscillatory
// kernels K_T and K~_T with stationary-phase diagnostics.

#include <cstdint>

#include "reslab/archimedean.hpp"
#include "reslab/lfun.hpp"
#include "reslab/quadrature.hpp"
#include "reslab/resonator.hpp"

namespace reslab {

struct NormalizingWeight {
  double direct = 0;       // sum over points in [T/2, 2T] of |R(it)|^2 sech((t - T)/H)
  double diagonal = 0;     // (sum a_n^2) I_T / (4 pi)
  double ratio = 0;        // direct / diagonal
  double I_T = 0;
  double sum_an_squared = 0;
  double tail_bound = 0;   // sech weight at the edges of [T/2, 2T]
  std::size_t point_count = 0;
};

// Throws Error(kDomain) unless the points cover [T/2, 2T], and
// Error(kInsufficientPoints) when no point falls in that range.
NormalizingWeight normalizing_weight(const DirichletPolynomial& R, const PhasePointSet& points,
                                     const WeightSpec& weight, const GammaSignature& sig,
                                     const QuadratureSpec& quad = {});

struct MomentDiagnostics {
  double weight_sum = 0;        // sum of omega, 1 by construction
  double tail_bound = 0;
  std::uint64_t afe_max_terms = 0;
  double afe_max_tail = 0;
  std::size_t rotated_skipped = 0;  // points where A_{1/2}(1/2 + it) vanished
};

struct MomentReport {
  double theta = 0;
  WeightSpec weight{100.0};
  NormalizingWeight nw;
  double unsigned_moment = 0;  // sum |L| omega
  cplx signed_moment;          // sum L omega
  cplx rotated_moment;         // sum L(1/2 - it) A^2 / |A|^2 omega
  std::size_t point_count = 0;
  MomentDiagnostics diagnostics;
};

// omega(t) = |R(it)|^2 sech((t - T)/H) / NW over the points in [T/2, 2T].
MomentReport moment_sums(const AfeContext& ctx, const ResonatorPolynomials& polys, const PhasePointSet& points,
                         const WeightSpec& weight, const QuadratureSpec& quad = {});

enum class DiagonalVariant {
  kUnsigned,  // m1 m2 l2 = n l1
  kSignedII,  // n m1 l1 = m2 l2
};

// Sum over l1, l2 in supp R*, m1, m2 in supp A_{1/2}, with n fixed by the constraint, of
//   c_R(l1) c_R(l2) c_A(m1) c_A(m2) lambda(n) / sqrt(n m1 m2),
// where c_R, c_A are the polynomial coefficients. The factor I_T is left to the caller.
// Throws Error(kBudget) above `max_tuples` and IncompleteSourceError if n exceeds the table.
double diagonal_main_term(const DirichletPolynomial& R_star, const DirichletPolynomial& A_half,
                          const EigenvalueTable& eigen, DiagonalVariant variant,
                          double max_tuples = 1e8);

enum class KernelVariant { kK, kKTilde };

struct KernelSpec {
  std::uint64_t n = 1, m1 = 1, m2 = 1, l1 = 1, l2 = 1;
  double u = 0;
  double r = 0;  // spectral parameter; 0 for holomorphic forms
  WeightSpec weight{100.0};
  KernelVariant variant = KernelVariant::kK;
  double u_bound = 0;  // |u| limit; 0 means log T
  double step = 0;     // quadrature spacing; 0 picks one from the phase derivative
};

struct KernelResult {
  cplx value;
  double min_abs_phase_deriv = 0;  // min |f'| over the support of W
  double amplitude_mass = 0;       // integral of |g|, the scale of an unsuppressed kernel
  double step = 0;
  std::size_t nodes = 0;
};

// Smooth bump supported on [-2T, -T/2], equal to 1 on [-7T/4, -3T/4].
double kernel_window(double T, double nu);

// Phase f and its derivative from the closed forms, in units where the
// integrand is g(nu) e(f(nu)) = g(nu) exp(2 pi i f(nu)).
double kernel_phase(const KernelSpec& spec, double nu);
double kernel_phase_deriv(const KernelSpec& spec, double nu);
double kernel_amplitude(const KernelSpec& spec, double nu);

// Trapezoid rule on the support of W. Throws Error(kGridRefinement) when a
// step advances the phase 2 pi f by more than pi/4, and Error(kDomain) for
// zero indices or |u| beyond the bound.
KernelResult oscillatory_kernel(const KernelSpec& spec);

}  // namespace reslab
