#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "fhdet/lindet.hpp"
#include "fhdet/painleve.hpp"
#include "fhdet/symbols.hpp"

namespace fhdet::asym {

using cplx = std::complex<double>;
using lindet::THKind;
using painleve::PainleveSolution;
using symbols::FisherHartwigSymbol;
using symbols::MergingParams;

/// A predicted log-determinant split into named terms; total is the sum.
/// Every breakdown carries an explicit zero "o1" term for the neglected
/// remainder so residual studies attribute discrepancies to it.
struct AsymptoticBreakdown {
    cplx total{0.0, 0.0};
    std::vector<std::pair<std::string, cplx>> terms;

    void add(std::string name, cplx value);
    cplx value() const { return std::exp(total); }
};

/// ln D_n(f) for separated singularities (general V allowed).
AsymptoticBreakdown ehrhardt_log_det(const FisherHartwigSymbol& sym, int n);

/// ln D_n^{T+H,kappa}(f) for an even symbol with separated singularities.
AsymptoticBreakdown dik_th_log_det(const FisherHartwigSymbol& sym, int n,
                                   THKind kind);

/// ln D_n(f_{p,t}) uniform in the merging regime; x = 2nt must lie inside
/// the solved Painleve range.
AsymptoticBreakdown uniform_log_det(const MergingParams& params, int n,
                                    const PainleveSolution& sol);

/// ln D_n^{T+H,kappa}(f_{p,t}) uniform in the merging regime; x = 4nt.
AsymptoticBreakdown uniform_th_det(const MergingParams& params, int n,
                                   THKind kind, const PainleveSolution& sol);

/// The explicit envelope of the T+H determinant (prediction up to e^{O(1)});
/// requires no singularities at +-1 and all alpha_j >= 0.
double claeys_envelope(const FisherHartwigSymbol& sym, int n, THKind kind);

enum class RatioGroup { Sp, O_odd, O_even };
enum class RatioNumerator { kk, kfull, fullfull };
enum class RatioRegime { separated, merging };

struct RatioCase {
    RatioGroup group = RatioGroup::Sp;
    RatioNumerator numerator = RatioNumerator::fullfull;
    RatioRegime regime = RatioRegime::separated;
};

/// Two-point ratio E f(theta) f(theta') / (E f(theta) E f(theta')) in the
/// stated case. k is the truncation order for kk/kfull; sol is required in
/// the merging regime (solved to at least x = 4 n t).
cplx ratio_asymptotic(const RatioCase& rcase, double theta, double theta2,
                      double alpha, cplx beta, int n, int k,
                      const PainleveSolution* sol);

/// The J-region decomposition of a pair (theta, theta') and the induced
/// (p, t) and jump-parameter signs used by the merging-regime formulas.
struct PairDecomposition {
    int region = 0; // 1..8
    double arg_z1 = 0.0, arg_z2 = 0.0;
    double beta1_sign = 1.0, beta2_sign = 1.0;
    double p = 0.0, t = 0.0;
};

PairDecomposition decompose_pair(double theta, double theta2);

} // namespace fhdet::asym
