#pragma once

#include <complex>

namespace fhdet::specfun {

using cplx = std::complex<double>;

/// Log-gamma, principal branch: real on the positive real axis, continuous
/// along rays from +infinity, conjugate-symmetric. Throws std::domain_error
/// at the poles (non-positive integers).
cplx log_gamma(cplx z);

/// Log of the Barnes G-function with the same branch conventions.
/// Satisfies log_barnes_g(z+1) = log_gamma(z) + log_barnes_g(z).
/// Target absolute accuracy 1e-10 on |Re z| <= 8, |Im z| <= 8.
cplx log_barnes_g(cplx z);

/// ln[ G(1+a+b) G(1+a-b) / G(1+2a) ], the ratio appearing in every
/// Fisher-Hartwig constant. Real for real a and purely imaginary b.
cplx log_barnes_ratio(cplx a, cplx b);

} // namespace fhdet::specfun
