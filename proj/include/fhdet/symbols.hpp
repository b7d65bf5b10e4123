#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fhdet::symbols {

using cplx = std::complex<double>;

/// Thrown when an adaptive refinement loop cannot reach the requested
/// tolerance within its resource cap, or a matrix is numerically singular.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// ln|1 - e^{ix}| = ln(2|sin(x/2)|).
double re_log_one_minus_exp(double x);

/// Im ln(1 - e^{ix}) with the principal branch in (-pi/2, pi/2] and the
/// convention Im ln 0 := pi/2 at x = 0 (mod 2pi).
double im_log_one_minus_exp(double x);

struct Singularity {
    double theta = 0.0; // in [0, 2pi)
    double alpha = 0.0; // > -1/2
    cplx beta{0.0, 0.0};
};

/// A symbol e^{V(z)} z^{sum beta_j} prod_j |z-z_j|^{2 alpha_j}
/// g_{z_j,beta_j}(z) z_j^{-beta_j} with finite Fourier data for V.
struct FisherHartwigSymbol {
    std::map<int, cplx> v;           // V_k, finite two-sided support
    std::vector<Singularity> sing;   // kept sorted by theta
    bool general_v = false;          // allow V_k != V_{-k}

    cplx v_at(double theta) const;   // V(e^{i theta})
    cplx v0() const;
    cplx b_plus_log(cplx z) const;   // sum_{k>=1} V_k z^k
    cplx b_minus_log(cplx z) const;  // sum_{k<=-1} V_k z^k
    cplx sum_beta() const;

    void add_singularity(double theta, double alpha, cplx beta);
    void set_v(int k, cplx value);   // sets V_k (and V_{-k} unless general_v)
    void validate() const;
};

/// Value of the symbol at angle theta. Returns 0 at a singularity angle with
/// alpha > 0; throws std::domain_error there when alpha < 0.
cplx eval_symbol(const FisherHartwigSymbol& sym, double theta);

struct CoefficientWindow {
    int jmax = 0;
    std::vector<cplx> c;     // c[j + jmax], j in [-jmax, jmax]
    double accuracy = 0.0;   // estimated max absolute coefficient error

    cplx at(int j) const;
    bool covers(int j) const { return j >= -jmax && j <= jmax; }
};

/// Fourier coefficients f_j, |j| <= jmax, by uniform sampling + FFT with
/// resolution doubling until the max coefficient delta falls below tol.
CoefficientWindow fourier_coeffs(const FisherHartwigSymbol& sym, int jmax,
                                 double tol);

/// Same refinement loop for an arbitrary 2pi-periodic function.
CoefficientWindow fourier_coeffs_fn(const std::function<cplx(double)>& f,
                                    int jmax, double tol);

/// Parameters of the six-singularity merging symbol: singularities at
/// 1, e^{i(p-t)}, e^{i(p+t)}, -1 and the conjugate pair.
struct MergingParams {
    double p = M_PI / 2;
    double t = 0.1;
    double alpha0 = 0.0, alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
    cplx beta1{0.0, 0.0}, beta2{0.0, 0.0};
    std::map<int, cplx> v;

    void validate() const;
};

FisherHartwigSymbol make_merging_symbol(const MergingParams& params);

/// A sigma-symbol: the symmetrized symbol driving the T+H determinants plus
/// the one-sided boundary values hat-sigma(+-1) in closed form.
struct SigmaSymbol {
    FisherHartwigSymbol symbol;
    cplx hat_at_plus1{1.0, 0.0};
    cplx hat_at_minus1{1.0, 0.0};
};

/// kind 1..5; theta2 required for kinds 1-3; k is the truncation order of
/// the smooth part (kinds 1, 2, 4).
SigmaSymbol make_sigma_symbol(int kind, double theta,
                              std::optional<double> theta2, double alpha,
                              cplx beta, int k);

struct WienerHopfData {
    cplx b_plus_log, b_minus_log, v0;
};

WienerHopfData wiener_hopf_eval(const FisherHartwigSymbol& sym, cplx z);

/// Symbol spec file format:
/// {"v_coeffs": [[k, value], ...], "singularities":
///  [{"theta": .., "alpha": .., "beta_im": ..}, ...]}
FisherHartwigSymbol symbol_from_json(const std::string& text);
std::string symbol_to_json(const FisherHartwigSymbol& sym);

} // namespace fhdet::symbols
