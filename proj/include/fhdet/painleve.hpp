#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace fhdet::painleve {

using cplx = std::complex<double>;

struct PainleveParams {
    double alpha1 = 0.0, alpha2 = 0.0;
    cplx beta1{0.0, 0.0}, beta2{0.0, 0.0}; // purely imaginary

    void validate() const;
    std::array<cplx, 4> theta_params() const;

    double b_plus_im() const { return beta1.imag() + beta2.imag(); }
    double b_minus_im() const { return beta1.imag() - beta2.imag(); }
    /// sigma(-i0+) = 2 a1 a2 - (b1+b2)^2/2, real on the ray
    double sigma_at_zero() const;
    /// d sigma / dx at infinity along s = -ix: Im(b1-b2)/2
    double slope_at_infinity() const;
    bool is_zero() const;
};

/// Tabulated solution of the sigma-form along s = -ix, x > 0, together with
/// the cumulative integral I(x) = int_0^{-ix} (sigma - sigma(0)) ds/s.
struct PainleveSolution {
    std::vector<double> x;
    std::vector<double> sigma;
    std::vector<double> sigma_s;   // d sigma / dx along the ray
    std::vector<double> integral;  // I(x)
    std::vector<double> residual;  // pointwise sigma-form residual
    double max_residual = 0.0;
    double shoot_c = 0.0;          // coefficient of the x^{1+gamma} local term
    double local_exponent = 0.0;   // gamma
    double tail_decay_rate = 0.0;  // empirical exponent of |sigma - asymptote|
    std::string method;            // "shooting" or "trivial"

    double sigma_at(double xq) const;
    double integral_at(double xq) const;
    double x_max() const { return x.empty() ? 0.0 : x.back(); }
};

/// Solve the sigma-form with the boundary data of the theorem by shooting on
/// the one-parameter local family at x -> 0; selects the branch whose large-x
/// behavior matches the linear asymptote.
PainleveSolution solve_sigma(const PainleveParams& params, double x_max,
                             double tol);

/// I(x) from the tabulation (out-of-grid error beyond the solved range).
double sigma_integral(const PainleveSolution& sol, double x);

/// Signed finite part of the expansion relation at x (= 2nt):
/// [Barnes-G side] - [Painleve side]; goes to 0 as x grows.
double relation_signed(const PainleveParams& params,
                       const PainleveSolution& sol, double x);

double relation_residual(const PainleveParams& params,
                         const PainleveSolution& sol, double x);

/// Convenience overload that solves up to x internally.
double relation_residual(const PainleveParams& params, double x);

} // namespace fhdet::painleve
