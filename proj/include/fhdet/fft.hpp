#pragma once

#include <complex>
#include <vector>

namespace fhdet::detail {

/// In-place iterative radix-2 FFT, X_k = sum_m x_m e^{-2 pi i k m / N}.
/// N must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

} // namespace fhdet::detail
