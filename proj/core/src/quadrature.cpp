#include "reslab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "reslab/error.hpp"

namespace reslab {
namespace {

template <class Value, class F>
Value run_gk(const F& f, double a, double b, const QuadratureSpec& spec, double& error) {
  double l1 = 0.0;
  const Value value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, spec.max_depth, spec.rel_tol, &error, &l1);
  // Tolerance is relative to the L1 norm so cancelling integrands are judged fairly.
  const double allowed = std::max(spec.abs_tol, spec.rel_tol * l1);
  if (!(error <= allowed) || !std::isfinite(std::abs(value))) {
    throw AccuracyError(std::abs(value), error, "quadrature did not converge");
  }
  return value;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  QuadratureResult out;
  out.value = run_gk<double>(f, a, b, spec, out.error);
  return out;
}

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, const QuadratureSpec& spec) {
  ComplexQuadratureResult out;
  out.value = run_gk<std::complex<double>>(f, a, b, spec, out.error);
  return out;
}

}  // namespace reslab
