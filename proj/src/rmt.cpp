#include "fhdet/rmt.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fhdet/symbols.hpp"

namespace fhdet::rmt {

using symbols::numeric_error;

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr cplx kI(0.0, 1.0);

double wrap_angle(double t) {
    double r = std::fmod(t, 2.0 * M_PI);
    if (r < 0.0) r += 2.0 * M_PI;
    return r;
}

// Haar orthogonal matrix: QR of a Gaussian matrix with the R-diagonal sign
// normalization.
Eigen::MatrixXd haar_orthogonal(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

// Haar symplectic-unitary matrix in the 2n x 2n complex form with
// U^T J U = J, J = [[0, I], [-I, 0]]: paired Gram-Schmidt on a Gaussian
// matrix with the quaternionic block structure [[X, Y], [-conj(Y), conj(X)]].
Eigen::MatrixXcd haar_symplectic(int half, std::mt19937_64& rng) {
    const int dim = 2 * half;
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd u(dim, dim);
    auto psi = [half, dim](const Eigen::VectorXcd& v) {
        // v -> J conj(v)
        Eigen::VectorXcd w(dim);
        for (int i = 0; i < half; ++i) {
            w(i) = std::conj(v(half + i));
            w(half + i) = -std::conj(v(i));
        }
        return w;
    };
    for (int c = 0; c < half; ++c) {
        Eigen::VectorXcd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
        for (int prev = 0; prev < c; ++prev) {
            v -= u.col(prev).dot(v) * u.col(prev);
            v -= u.col(half + prev).dot(v) * u.col(half + prev);
        }
        // second pass for numerical orthogonality
        for (int prev = 0; prev < c; ++prev) {
            v -= u.col(prev).dot(v) * u.col(prev);
            v -= u.col(half + prev).dot(v) * u.col(half + prev);
        }
        double nv = v.norm();
        if (nv < 1e-12) throw numeric_error("haar_symplectic: degenerate draw");
        u.col(c) = v / nv;
        u.col(half + c) = -psi(u.col(c));
    }
    return u;
}

std::vector<double> eigen_angles(const Eigen::MatrixXcd& u) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
    if (es.info() != Eigen::Success)
        throw numeric_error("sample_haar: eigen decomposition failed");
    std::vector<double> out(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        cplx ev = es.eigenvalues()(i);
        out[static_cast<std::size_t>(i)] = wrap_angle(std::arg(ev));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

EigenAngleSet sample_haar(GroupSpec group, std::uint64_t seed) {
    group.validate();
    std::mt19937_64 rng(seed);
    const int dim = group.dim;
    EigenAngleSet out;
    out.group = group;
    if (dim == 0) return out;

    if (group.family == GroupFamily::Sp) {
        Eigen::MatrixXcd u = haar_symplectic(group.half(), rng);
        Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dim, dim);
        for (int i = 0; i < group.half(); ++i) {
            j(i, group.half() + i) = 1.0;
            j(group.half() + i, i) = -1.0;
        }
        double unit_err = (u.adjoint() * u -
                           Eigen::MatrixXcd::Identity(dim, dim))
                              .cwiseAbs()
                              .maxCoeff();
        double symp_err = (u.transpose() * j * u - j).cwiseAbs().maxCoeff();
        if (unit_err > 1e-10 || symp_err > 1e-10)
            throw numeric_error("sample_haar: symplectic constraints violated");
        out.angles = eigen_angles(u);
        return out;
    }

    Eigen::MatrixXd q = haar_orthogonal(dim, rng);
    double orth_err =
        (q.transpose() * q - Eigen::MatrixXd::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    if (orth_err > 1e-10)
        throw numeric_error("sample_haar: orthogonality violated");
    double det = q.determinant();
    double want = 0.0;
    switch (group.family) {
        case GroupFamily::SO_even:
        case GroupFamily::SO_odd: want = 1.0; break;
        case GroupFamily::Ominus_even:
        case GroupFamily::Ominus_odd: want = -1.0; break;
        case GroupFamily::O_full: want = 0.0; break;
        default: break;
    }
    if (want != 0.0 && det * want < 0.0) {
        // fixed-column reflection swaps the two components measure-preservingly
        q.col(dim - 1) *= -1.0;
    }
    out.angles = eigen_angles(q.cast<cplx>());
    return out;
}

std::vector<double> traces(const EigenAngleSet& angles, int kmax) {
    if (kmax < 1) throw std::invalid_argument("traces: kmax >= 1 required");
    std::vector<double> out(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        double s = 0.0;
        for (double th : angles.angles) s += std::cos(k * th);
        out[static_cast<std::size_t>(k - 1)] = s;
    }
    return out;
}

FieldValue log_char_poly(const EigenAngleSet& angles, double theta) {
    FieldValue f;
    for (double th : angles.angles) {
        double x = th - theta;
        if (std::abs(std::sin(0.5 * x)) < 1e-14) {
            f.re_log = -std::numeric_limits<double>::infinity();
            f.im_log += 0.5 * M_PI;
        } else {
            f.re_log += symbols::re_log_one_minus_exp(x);
            f.im_log += symbols::im_log_one_minus_exp(x);
        }
    }
    return f;
}

cplx field_weight(const EigenAngleSet& angles, double theta, double alpha,
                  cplx beta) {
    FieldValue f = log_char_poly(angles, theta);
    if (std::isinf(f.re_log)) {
        if (alpha > 0.0) return cplx(0.0, 0.0);
        if (alpha == 0.0) return std::exp(2.0 * kI * beta * f.im_log);
        throw std::domain_error("field_weight: eigenvalue hit with alpha < 0");
    }
    return std::exp(2.0 * alpha * f.re_log + 2.0 * kI * beta * f.im_log);
}

cplx field_weight_truncated(const std::vector<double>& tr, double theta,
                            double alpha, cplx beta, int k) {
    if (k > static_cast<int>(tr.size()))
        throw std::invalid_argument("field_weight_truncated: k exceeds traces");
    cplx s = 0.0;
    for (int j = 1; j <= k; ++j)
        s += tr[static_cast<std::size_t>(j - 1)] / double(j) *
             (2.0 * alpha * std::cos(j * theta) -
              2.0 * kI * beta * std::sin(j * theta));
    return std::exp(-s);
}

McResult mc_average(const std::function<cplx(const EigenAngleSet&)>& estimator,
                    GroupSpec group, long samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("mc_average: samples >= 2");
    cplx sum = 0.0;
    double sum_re2 = 0.0, sum_im2 = 0.0;
    for (long i = 0; i < samples; ++i) {
        EigenAngleSet s = sample_haar(group, split_seed(seed, static_cast<std::uint64_t>(i)));
        cplx v = estimator(s);
        sum += v;
        sum_re2 += v.real() * v.real();
        sum_im2 += v.imag() * v.imag();
    }
    McResult r;
    r.samples = samples;
    r.seed = seed;
    r.mean = sum / double(samples);
    double var_re = sum_re2 / samples - r.mean.real() * r.mean.real();
    double var_im = sum_im2 / samples - r.mean.imag() * r.mean.imag();
    r.stderr_ = std::sqrt(std::max(var_re + var_im, 0.0) / double(samples));
    return r;
}

} // namespace fhdet::rmt
