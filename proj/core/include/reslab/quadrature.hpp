#pragma once

#include <complex>
#include <functional>

namespace reslab {

struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  unsigned max_depth = 18;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
};

// Adaptive Gauss-Kronrod (31 points) on [a, b]. Throws AccuracyError carrying
// the estimate when the error estimate misses max(abs_tol, rel_tol |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

struct ComplexQuadratureResult {
  std::complex<double> value;
  double error = 0;
};

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, const QuadratureSpec& spec);

}  // namespace reslab
