#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fhdet/symbols.hpp"

namespace fhdet::lindet {

using cplx = std::complex<double>;
using symbols::CoefficientWindow;
using symbols::FisherHartwigSymbol;

/// The four Toeplitz+Hankel variants det(f_{j-k} +- f_{j+k+offset}) and the
/// constants (q, s', t') entering their asymptotics.
struct THKind {
    int kappa = 1; // 1..4

    int offset() const;        // 0, 2, 1, 1
    double hankel_sign() const; // +1, -1, -1, +1
    double s_prime() const;
    double t_prime() const;
    long q(long n) const;
};

struct DetResult {
    cplx value;
    cplx log_value;        // log|D| + i arg(D), accumulated stably
    double cond_estimate;  // crude growth factor from the LU diagonal
};

DetResult toeplitz_det(const CoefficientWindow& coeffs, int n);
DetResult th_det(const CoefficientWindow& coeffs, int n, THKind kind);

enum class GroupFamily { SO_even, Ominus_even, SO_odd, Ominus_odd, O_full, Sp };

/// A compact-group component; dim is the matrix dimension (SO(2) -> dim 2,
/// Sp(2n) -> dim 2n, ...).
struct GroupSpec {
    GroupFamily family = GroupFamily::Sp;
    int dim = 2;

    void validate() const;
    int half() const { return dim / 2; } // the T+H matrix size n
};

/// The weight h in an average E(det h(U)); iota(theta) = h(theta) h(-theta)
/// generates the T+H matrices, and h(+-1) enter the odd/O- identities.
struct CircleWeight {
    std::function<cplx(double)> eval;
    cplx at_plus1{1.0, 0.0};
    cplx at_minus1{1.0, 0.0};
};

CircleWeight weight_constant();
CircleWeight weight_one_plus_z();
CircleWeight weight_z();
/// |p(theta0)|^{2 alpha} e^{2 i beta Im ln ...} one-point weight, boundary
/// values from the closed forms.
CircleWeight weight_sigma_hat5(double theta0, double alpha, cplx beta);

/// E(det h(U)) over the named component via the exact T+H identities.
cplx group_average(const CircleWeight& h, GroupSpec group, double tol);
cplx group_average(const CoefficientWindow& iota, cplx h1, cplx hm1,
                   GroupSpec group);

struct OrthoPolyData {
    int n = 0;
    double chi = 0.0;                 // leading coefficient chi_n
    std::vector<cplx> monic_coeffs;   // Phi_n = z^n + sum_l c_l z^l
    cplx phi_at_zero, phi_at_plus1, phi_at_minus1; // orthonormal phi_n values

    cplx monic_at(cplx z) const;
};

/// Monic orthogonal polynomial w.r.t. the symbol's weight from the Toeplitz
/// system of orthogonality conditions; chi_n = sqrt(D_n / D_{n+1}).
OrthoPolyData orthopoly(const CoefficientWindow& coeffs, int n);

} // namespace fhdet::lindet
