#include "fhdet/gmc.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fhdet/symbols.hpp"

namespace fhdet::gmc {

using symbols::numeric_error;

namespace {

constexpr cplx kI(0.0, 1.0);

double eta(int j) { return j % 2 == 0 ? 1.0 : 0.0; }

// c_j(theta) = 2 alpha cos(j theta) - 2 i beta sin(j theta); real for
// purely imaginary beta.
cplx coeff(double theta, double alpha, cplx beta, int j) {
    return 2.0 * alpha * std::cos(j * theta) -
           2.0 * kI * beta * std::sin(j * theta);
}

} // namespace

FieldDraw make_draw(std::uint64_t seed, int k, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("make_draw: sign must be +-1");
    FieldDraw d;
    d.sign = sign;
    d.gaussians.resize(k);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int j = 0; j < k; ++j) d.gaussians[j] = normal(rng);
    return d;
}

cplx truncated_field(const FieldDraw& draw, double theta, double alpha,
                     cplx beta, int k) {
    if (k > static_cast<int>(draw.gaussians.size()))
        throw std::invalid_argument("truncated_field: k exceeds draw length");
    cplx y = 0.0;
    for (int j = 1; j <= k; ++j) {
        double sj = std::sqrt(double(j));
        double amp = draw.gaussians[j - 1] + draw.sign * eta(j) / sj;
        y += amp / sj * coeff(theta, alpha, beta, j);
    }
    return y;
}

std::pair<double, double> deterministic_shift(double theta, int kmax) {
    double x = 0.0, xh = 0.0;
    for (int j = 2; j <= kmax; j += 2) {
        x += std::cos(j * theta) / j;
        xh -= std::sin(j * theta) / j;
    }
    return {x, xh};
}

cplx covariance_partial(double theta, double theta2, double alpha, cplx beta,
                        int k) {
    cplx b2 = beta * beta;
    double a2 = alpha * alpha;
    cplx s = 0.0;
    for (int j = 1; j <= k; ++j) {
        s += (2.0 * (a2 - b2) * std::cos(j * (theta - theta2)) +
              2.0 * (a2 + b2) * std::cos(j * (theta + theta2)) -
              4.0 * kI * alpha * beta * std::sin(j * (theta + theta2))) /
             double(j);
    }
    return s;
}

cplx covariance_closed_form(double theta, double theta2, double alpha,
                            cplx beta) {
    double diff = theta - theta2, sum = theta + theta2;
    if (std::abs(std::sin(0.5 * diff)) < 1e-12 ||
        std::abs(std::sin(0.5 * sum)) < 1e-12)
        throw std::invalid_argument(
            "covariance_closed_form: diagonal or antidiagonal configuration");
    cplx b2 = beta * beta;
    double a2 = alpha * alpha;
    return -2.0 * (a2 - b2) * symbols::re_log_one_minus_exp(diff) -
           2.0 * (a2 + b2) * symbols::re_log_one_minus_exp(sum) +
           4.0 * kI * alpha * beta * symbols::im_log_one_minus_exp(sum);
}

double GMCGrid::total_mass() const {
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
}

std::vector<double> uniform_cells(int cells) {
    if (cells < 1) throw std::invalid_argument("uniform_cells: cells >= 1");
    std::vector<double> e(cells + 1);
    for (int i = 0; i <= cells; ++i) e[i] = 2.0 * M_PI * i / cells;
    return e;
}

GMCGrid gmc_measure(const FieldDraw& draw, int k, double alpha, cplx beta,
                    const std::vector<double>& edges) {
    if (edges.size() < 2)
        throw std::invalid_argument("gmc_measure: need at least one cell");
    if (std::abs(beta.real()) > 1e-14)
        throw std::invalid_argument("gmc_measure: beta must be purely imaginary");
    GMCGrid grid;
    grid.edges = edges;
    grid.k = k;
    grid.alpha = alpha;
    grid.beta_im = beta.imag();

    // density exp(Y - ln E e^Y); the normalizer is the exact Gaussian moment
    // exp(D + Var/2) with D the deterministic shift carried by Y.
    auto log_density = [&](double th) {
        double y = truncated_field(draw, th, alpha, beta, k).real();
        double var = covariance_partial(th, th, alpha, beta, k).real();
        double det = 0.0;
        for (int j = 2; j <= k; j += 2)
            det += double(draw.sign) / double(j) *
                   coeff(th, alpha, beta, j).real();
        return y - det - 0.5 * var;
    };

    // composite Simpson with npts panels
    auto cell_mass = [&](double a, double b, int npts) {
        double h = (b - a) / npts, s = 0.0;
        for (int i = 0; i < npts; ++i) {
            double x0 = a + i * h;
            s += std::exp(log_density(x0)) +
                 4.0 * std::exp(log_density(x0 + 0.5 * h)) +
                 std::exp(log_density(x0 + h));
        }
        return s * h / 6.0;
    };

    grid.masses.resize(edges.size() - 1);
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        int npts = 64;
        double prev = cell_mass(edges[c], edges[c + 1], npts);
        double cur = prev;
        bool converged = false;
        while (npts <= 2048) {
            npts *= 2;
            cur = cell_mass(edges[c], edges[c + 1], npts);
            if (std::abs(cur - prev) <= 1e-7 * (1.0 + std::abs(cur))) {
                converged = true;
                break;
            }
            prev = cur;
        }
        if (!converged)
            throw numeric_error(
                "gmc_measure: cell integrand beyond quadrature resolution");
        grid.masses[c] = cur;
    }
    return grid;
}

double sobolev_norm(const std::vector<cplx>& two_sided, double s) {
    if (two_sided.size() % 2 == 0)
        throw std::invalid_argument("sobolev_norm: expect odd-length window");
    int J = (static_cast<int>(two_sided.size()) - 1) / 2;
    double acc = 0.0;
    for (int j = -J; j <= J; ++j) {
        double w = std::pow(1.0 + double(j) * double(j), s);
        acc += w * std::norm(two_sided[j + J]);
    }
    return std::sqrt(acc);
}

} // namespace fhdet::gmc
