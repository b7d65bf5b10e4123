#include "fhdet/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace fhdet::specfun {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
// zeta'(-1), enters the Barnes G asymptotic expansion
constexpr double kZetaPrimeM1 = -0.16542114370045092921391966024278064276;

bool near_nonpositive_integer(cplx z) {
    if (z.real() > 0.1) return false;
    double r = std::round(z.real());
    return std::abs(z.real() - r) < 1e-13 && std::abs(z.imag()) < 1e-13;
}

// Stirling series with argument shifted to |z| large; valid Re z > 0.
cplx log_gamma_stirling(cplx z) {
    // B_{2k}/(2k(2k-1)) for k = 1..7
    static const double c[7] = {
        1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0};
    int m = 0;
    while (std::abs(z) < 15.0) {
        ++m;
        z += 1.0;
        if (m > 64) break;
    }
    cplx w = 1.0 / z, w2 = w * w, s = 0.0, p = w;
    for (double ck : c) {
        s += ck * p;
        p *= w2;
    }
    cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + s;
    // undo the recurrence lnGamma(z) = lnGamma(z+1) - ln z
    for (int j = m - 1; j >= 0; --j) lg -= std::log(z - cplx(m - j, 0.0));
    return lg;
}

// ln sin(pi z) for Im z >= 0, branch consistent with the reflection use below.
cplx log_sin_pi_upper(cplx z) {
    const cplx ipi(0.0, M_PI);
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), |e^{2 pi i z}| <= 1
    cplx w = std::exp(2.0 * ipi * z);
    return std::log(cplx(0.0, 0.5)) - ipi * z + std::log(1.0 - w);
}

cplx log_gamma_upper(cplx z) {
    if (z.real() >= 0.5) return log_gamma_stirling(z);
    return std::log(M_PI) - log_sin_pi_upper(z) - log_gamma_stirling(1.0 - z);
}

// Asymptotic expansion of ln G(1+w), Re w large.
cplx log_barnes_g1p(cplx w) {
    // B_{2k+2}/(2k(2k+2)) for k = 1..5
    static const double c[5] = {
        -1.0 / 240.0, 1.0 / 1008.0, -1.0 / 1440.0, 1.0 / 1056.0,
        -691.0 / 327600.0};
    cplx lw = std::log(w);
    cplx s = w * w * (0.5 * lw - 0.75) + 0.5 * w * kLog2Pi - lw / 12.0 +
             kZetaPrimeM1;
    cplx iw2 = 1.0 / (w * w), p = iw2;
    for (double ck : c) {
        s += ck * p;
        p *= iw2;
    }
    return s;
}

cplx log_barnes_g_upper(cplx z) {
    int m = 0;
    while (z.real() + m < 16.0) ++m;
    // ln G(z) = ln G(z+m) - sum_{j=0}^{m-1} lnGamma(z+j)
    cplx lg = log_barnes_g1p(z + cplx(m - 1, 0.0));
    for (int j = 0; j < m; ++j) lg -= log_gamma_upper(z + cplx(j, 0.0));
    return lg;
}

} // namespace

cplx log_gamma(cplx z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma_upper(std::conj(z)));
    return log_gamma_upper(z);
}

cplx log_barnes_g(cplx z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_barnes_g: argument at non-positive integer");
    if (z.imag() < 0.0) return std::conj(log_barnes_g_upper(std::conj(z)));
    return log_barnes_g_upper(z);
}

cplx log_barnes_ratio(cplx a, cplx b) {
    return log_barnes_g(1.0 + a + b) + log_barnes_g(1.0 + a - b) -
           log_barnes_g(1.0 + 2.0 * a);
}

} // namespace fhdet::specfun
