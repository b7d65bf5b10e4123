#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "fhdet/lindet.hpp"

namespace fhdet::rmt {

using cplx = std::complex<double>;
using lindet::GroupFamily;
using lindet::GroupSpec;

/// Eigenvalue angles of one Haar sample; the full list, length = dim.
struct EigenAngleSet {
    GroupSpec group;
    std::vector<double> angles; // in [0, 2pi)
};

/// Haar sample from the named component; deterministic given seed.
/// Orthogonality (resp. the symplectic relation U^T J U = J) is verified to
/// 1e-10 before eigenvalues are extracted.
EigenAngleSet sample_haar(GroupSpec group, std::uint64_t seed);

/// Tr U^k = sum_l e^{i k theta_l} for k = 1..kmax (real by the conjugation
/// symmetry of the spectrum).
std::vector<double> traces(const EigenAngleSet& angles, int kmax);

/// (Re ln p(theta), Im ln p(theta)) with each summand's imaginary part in
/// (-pi/2, pi/2] and Im ln 0 := pi/2; Re is -infinity at an eigenvalue.
struct FieldValue {
    double re_log = 0.0;
    double im_log = 0.0;
};

FieldValue log_char_poly(const EigenAngleSet& angles, double theta);

/// |p(theta)|^{2 alpha} e^{2 i beta Im ln p(theta)}.
cplx field_weight(const EigenAngleSet& angles, double theta, double alpha,
                  cplx beta);

/// The k-truncated weight exp(-sum_{j<=k} (Tr U^j / j)(2 alpha cos - 2 i beta sin)).
cplx field_weight_truncated(const std::vector<double>& tr, double theta,
                            double alpha, cplx beta, int k);

struct McResult {
    cplx mean;
    double stderr_;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo average of a per-sample functional over independent Haar
/// draws; per-sample seeds come from a splittable counter so the result is
/// independent of evaluation order.
McResult mc_average(const std::function<cplx(const EigenAngleSet&)>& estimator,
                    GroupSpec group, long samples, std::uint64_t seed);

/// Mixes a counter into a seed (splitmix64 finalizer).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter);

} // namespace fhdet::rmt
