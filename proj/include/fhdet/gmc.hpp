#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fhdet::gmc {

using cplx = std::complex<double>;

/// One replicate of the truncated field: k standard normals plus the sign
/// selecting the orthogonal (+) or symplectic (-) deterministic shift.
struct FieldDraw {
    std::vector<double> gaussians;
    int sign = +1;
};

FieldDraw make_draw(std::uint64_t seed, int k, int sign);

/// Y^{(k)}_{alpha,beta}(theta); real-valued for purely imaginary beta.
cplx truncated_field(const FieldDraw& draw, double theta, double alpha,
                     cplx beta, int k);

/// Partial sums of the deterministic shift x(theta) = sum eta_j cos(j theta)/j
/// and xhat(theta) = -sum eta_j sin(j theta)/j up to kmax.
std::pair<double, double> deterministic_shift(double theta, int kmax);

/// Cov(Y^{(k)}(theta), Y^{(k)}(theta')).
cplx covariance_partial(double theta, double theta2, double alpha, cplx beta,
                        int k);

/// The k -> infinity closed form; throws on the diagonal/antidiagonal.
cplx covariance_closed_form(double theta, double theta2, double alpha,
                            cplx beta);

struct GMCGrid {
    std::vector<double> edges;  // cell boundaries, size cells+1, spanning [0,2pi)
    std::vector<double> masses; // per-cell mass of mu^{(k)}
    int k = 0;
    double alpha = 0.0;
    double beta_im = 0.0;

    double total_mass() const;
};

std::vector<double> uniform_cells(int cells);

/// Cell masses of mu^{(k)} = e^{Y - ln E e^{Y}} dtheta by per-cell composite
/// quadrature (64 points, doubled once on demand).
GMCGrid gmc_measure(const FieldDraw& draw, int k, double alpha, cplx beta,
                    const std::vector<double>& edges);

/// sqrt( sum_j (1+j^2)^s |f_j|^2 ) for a two-sided sequence f_{-J..J}
/// (f[j + J] layout).
double sobolev_norm(const std::vector<cplx>& two_sided, double s);

} // namespace fhdet::gmc
