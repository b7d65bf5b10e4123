#include "fhdet/lindet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace fhdet::lindet {

using symbols::numeric_error;

int THKind::offset() const {
    switch (kappa) {
        case 1: return 0;
        case 2: return 2;
        case 3: return 1;
        case 4: return 1;
    }
    throw std::invalid_argument("THKind: kappa must be 1..4");
}

double THKind::hankel_sign() const {
    return (kappa == 1 || kappa == 4) ? 1.0 : -1.0;
}

double THKind::s_prime() const {
    return (kappa == 2 || kappa == 3) ? 0.5 : -0.5;
}

double THKind::t_prime() const {
    return (kappa == 2 || kappa == 4) ? 0.5 : -0.5;
}

long THKind::q(long n) const {
    switch (kappa) {
        case 1: return -2 * n + 2;
        case 2: return 0;
        case 3: return -n;
        case 4: return -n;
    }
    throw std::invalid_argument("THKind: kappa must be 1..4");
}

namespace {

DetResult det_from_matrix(Eigen::MatrixXcd m) {
    const auto n = m.rows();
    if (n == 0) return {cplx(1.0, 0.0), cplx(0.0, 0.0), 1.0};
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    cplx log_det = std::log(cplx(static_cast<double>(
                                     lu.permutationP().determinant()),
                                 0.0));
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        cplx d = lu.matrixLU()(i, i);
        double a = std::abs(d);
        if (a == 0.0) throw numeric_error("determinant: exactly singular matrix");
        dmax = std::max(dmax, a);
        dmin = std::min(dmin, a);
        log_det += std::log(d);
    }
    DetResult r;
    r.log_value = log_det;
    r.value = std::exp(log_det);
    r.cond_estimate = dmax / dmin;
    return r;
}

} // namespace

DetResult toeplitz_det(const CoefficientWindow& coeffs, int n) {
    if (n < 1) throw std::invalid_argument("toeplitz_det: n >= 1 required");
    if (!coeffs.covers(n - 1) || !coeffs.covers(-(n - 1)))
        throw std::invalid_argument("toeplitz_det: window must cover |j| <= n-1");
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = coeffs.at(j - k);
    return det_from_matrix(std::move(m));
}

DetResult th_det(const CoefficientWindow& coeffs, int n, THKind kind) {
    if (n < 1) throw std::invalid_argument("th_det: n >= 1 required");
    const int off = kind.offset();
    const double sg = kind.hankel_sign();
    if (!coeffs.covers(-(n - 1)) || !coeffs.covers(2 * (n - 1) + off))
        throw std::invalid_argument("th_det: window must cover [-(n-1), 2n-2+offset]");
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            m(j, k) = coeffs.at(j - k) + sg * coeffs.at(j + k + off);
    return det_from_matrix(std::move(m));
}

void GroupSpec::validate() const {
    if (dim < 0) throw std::invalid_argument("GroupSpec: dim >= 0 required");
    switch (family) {
        case GroupFamily::SO_even:
        case GroupFamily::Ominus_even:
        case GroupFamily::Sp:
            if (dim % 2 != 0)
                throw std::invalid_argument("GroupSpec: even dimension required");
            break;
        case GroupFamily::SO_odd:
        case GroupFamily::Ominus_odd:
            if (dim % 2 != 1)
                throw std::invalid_argument("GroupSpec: odd dimension required");
            break;
        case GroupFamily::O_full:
            break;
    }
    if (family == GroupFamily::Ominus_even && dim < 2)
        throw std::invalid_argument("GroupSpec: O-(2n) needs dim >= 2");
}

CircleWeight weight_constant() {
    return {[](double) { return cplx(1.0, 0.0); }, 1.0, 1.0};
}

CircleWeight weight_one_plus_z() {
    return {[](double th) { return 1.0 + std::exp(cplx(0.0, th)); }, 2.0, 0.0};
}

CircleWeight weight_z() {
    return {[](double th) { return std::exp(cplx(0.0, th)); }, 1.0, -1.0};
}

CircleWeight weight_sigma_hat5(double theta0, double alpha, cplx beta) {
    CircleWeight w;
    w.eval = [theta0, alpha, beta](double phi) {
        double re = alpha == 0.0
                        ? 0.0
                        : 2.0 * alpha * symbols::re_log_one_minus_exp(phi - theta0);
        return std::exp(cplx(re, 0.0) +
                        2.0 * beta *
                            cplx(0.0, symbols::im_log_one_minus_exp(phi - theta0)));
    };
    w.at_plus1 = w.eval(0.0);
    w.at_minus1 = w.eval(M_PI);
    return w;
}

cplx group_average(const CoefficientWindow& iota, cplx h1, cplx hm1,
                   GroupSpec group) {
    group.validate();
    const int m = group.half();
    auto th = [&](int nn, int kappa) {
        if (nn == 0) return cplx(1.0, 0.0);
        return th_det(iota, nn, THKind{kappa}).value;
    };
    auto need = [](cplx v, const char* which) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numeric_error(std::string("group_average: h singular at ") +
                                which);
        return v;
    };
    switch (group.family) {
        case GroupFamily::SO_even:
            if (m == 0) return need(h1, "+1"); // Baik-Rains exception for SO(0)
            return 0.5 * th(m, 1);
        case GroupFamily::Ominus_even:
            return need(h1, "+1") * need(hm1, "-1") * th(m - 1, 2);
        case GroupFamily::SO_odd:
            return need(h1, "+1") * th(m, 3);
        case GroupFamily::Ominus_odd:
            return need(hm1, "-1") * th(m, 4);
        case GroupFamily::Sp:
            return th(m, 2);
        case GroupFamily::O_full: {
            GroupSpec a = group, b = group;
            if (group.dim % 2 == 0) {
                a.family = GroupFamily::SO_even;
                b.family = GroupFamily::Ominus_even;
            } else {
                a.family = GroupFamily::SO_odd;
                b.family = GroupFamily::Ominus_odd;
            }
            return 0.5 * (group_average(iota, h1, hm1, a) +
                          group_average(iota, h1, hm1, b));
        }
    }
    throw std::invalid_argument("group_average: unknown family");
}

cplx group_average(const CircleWeight& h, GroupSpec group, double tol) {
    group.validate();
    const int m = group.half();
    int jmax = std::max(2 * m + 2, 4);
    auto iota_fn = [&h](double th) { return h.eval(th) * h.eval(-th); };
    CoefficientWindow iota = symbols::fourier_coeffs_fn(iota_fn, jmax, tol);
    return group_average(iota, h.at_plus1, h.at_minus1, group);
}

cplx OrthoPolyData::monic_at(cplx z) const {
    cplx acc = 1.0; // z^n coefficient
    for (int l = n - 1; l >= 0; --l) acc = acc * z + monic_coeffs[l];
    // Horner over [c_0..c_{n-1}, 1]
    return acc;
}

OrthoPolyData orthopoly(const CoefficientWindow& coeffs, int n) {
    if (n < 0) throw std::invalid_argument("orthopoly: n >= 0 required");
    if (!coeffs.covers(n) || !coeffs.covers(-n))
        throw std::invalid_argument("orthopoly: window must cover |j| <= n");
    OrthoPolyData out;
    out.n = n;
    out.monic_coeffs.assign(n, cplx(0.0, 0.0));
    if (n > 0) {
        Eigen::MatrixXcd t(n, n);
        Eigen::VectorXcd rhs(n);
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) t(k, l) = coeffs.at(k - l);
            rhs(k) = -coeffs.at(k - n);
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(t);
        Eigen::VectorXcd c = lu.solve(rhs);
        double residual = (t * c - rhs).norm();
        if (!std::isfinite(residual) || residual > 1e-6 * (1.0 + rhs.norm()))
            throw numeric_error("orthopoly: degenerate moment matrix");
        for (int l = 0; l < n; ++l) out.monic_coeffs[l] = c(l);
    }
    DetResult dn = n == 0 ? DetResult{1.0, 0.0, 1.0} : toeplitz_det(coeffs, n);
    DetResult dn1 = toeplitz_det(coeffs, n + 1);
    cplx ratio = std::exp(0.5 * (dn.log_value - dn1.log_value));
    if (std::abs(ratio.imag()) > 1e-6 * std::abs(ratio))
        throw numeric_error("orthopoly: D_n/D_{n+1} not positive");
    out.chi = ratio.real();
    out.phi_at_zero = out.chi * out.monic_at(0.0);
    out.phi_at_plus1 = out.chi * out.monic_at(1.0);
    out.phi_at_minus1 = out.chi * out.monic_at(-1.0);
    return out;
}

} // namespace fhdet::lindet
