#pragma once

#include <complex>

namespace reslab {

using cplx = std::complex<double>;

// Principal branch of log Gamma, continuous along vertical lines.
// Throws Error(kPole) at non-positive integers.
cplx log_gamma(cplx z);

// psi(z) = Gamma'(z)/Gamma(z). Throws Error(kPole) at non-positive integers.
cplx digamma(cplx z);

}  // namespace reslab
