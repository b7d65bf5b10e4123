#include "doctest.h"

#include <cmath>

#include "fhdet/gmc.hpp"
#include "fhdet/rmt.hpp"

using namespace fhdet::gmc;
using fhdet::rmt::split_seed;

TEST_CASE("truncated field: trivial and deterministic-only cases") {
    FieldDraw d = make_draw(1u, 8, +1);
    CHECK(std::abs(truncated_field(d, 1.0, 0.3, cplx(0.0, 0.1), 0)) == 0.0);

    FieldDraw zeros;
    zeros.sign = +1;
    zeros.gaussians.assign(4, 0.0);
    double th = M_PI / 3;
    // deterministic part only: 2 sum_{j even <= 4} cos(j th)/j
    double expect = 2.0 * (std::cos(2 * th) / 2.0 + std::cos(4 * th) / 4.0);
    CHECK(truncated_field(zeros, th, 1.0, 0.0, 4).real() ==
          doctest::Approx(expect));
    CHECK(std::abs(truncated_field(zeros, th, 1.0, 0.0, 4).imag()) < 1e-15);

    CHECK_THROWS_AS(truncated_field(zeros, th, 1.0, 0.0, 9),
                    std::invalid_argument);
}

TEST_CASE("field variance matches the covariance partial sum") {
    double th = 1.1, a = 0.4;
    cplx b(0.0, 0.2);
    int k = 6;
    const int reps = 100000;
    double mean = 0.0, m2 = 0.0;
    double det_part = truncated_field(FieldDraw{std::vector<double>(k, 0.0), +1},
                                      th, a, b, k)
                          .real();
    for (int i = 0; i < reps; ++i) {
        FieldDraw d = make_draw(split_seed(5u, i), k, +1);
        double y = truncated_field(d, th, a, b, k).real() - det_part;
        mean += y;
        m2 += y * y;
    }
    mean /= reps;
    double var = m2 / reps - mean * mean;
    double expect = covariance_partial(th, th, a, b, k).real();
    CHECK(std::abs(var - expect) < 5.0 * expect / std::sqrt(double(reps)) + 0.01);
}

TEST_CASE("deterministic shift partial sums") {
    auto [x0, xh0] = deterministic_shift(1.0, 0);
    CHECK(x0 == 0.0);
    CHECK(xh0 == 0.0);

    // theta = pi/2: only even j contribute, cos alternates sign
    auto [x, xh] = deterministic_shift(M_PI / 2, 8);
    CHECK(x == doctest::Approx(-0.5 + 0.25 - 1.0 / 6 + 0.125));
    CHECK(xh == doctest::Approx(0.0).epsilon(1e-12));

    // limit: x -> -1/2 ln|2 sin theta| (partial-sum oracle at k = 1e6)
    double th = M_PI / 3;
    auto [xbig, xhbig] = deterministic_shift(th, 1000000);
    (void)xhbig;
    CHECK(std::abs(xbig - (-0.5 * std::log(2.0 * std::sin(th)))) < 1e-5);
}

TEST_CASE("covariance partial vs closed form") {
    double a = 0.3;
    cplx b(0.0, 0.1);
    CHECK(std::abs(covariance_partial(1.0, 2.0, 0.0, 0.0, 100)) == 0.0);
    CHECK(std::abs(covariance_partial(1.0, 2.0, a, b, 50) -
                   covariance_partial(2.0, 1.0, a, b, 50)) < 1e-14);

    double prev = 1e9;
    for (int k : {1000, 10000, 100000}) {
        double diff = std::abs(covariance_partial(0.9, 2.5, a, b, k) -
                               covariance_closed_form(0.9, 2.5, a, b));
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 1e-3);

    // modulus arithmetic special case: beta = 0, theta' = theta + pi
    double th = 0.6;
    cplx v = covariance_closed_form(th, th + M_PI, 0.5, 0.0);
    double expect = -2.0 * 0.25 * std::log(2.0) -
                    2.0 * 0.25 * std::log(std::abs(2.0 * std::cos(th)));
    CHECK(v.real() == doctest::Approx(expect));
    CHECK(std::abs(v.imag()) < 1e-12);

    CHECK_THROWS_AS(covariance_closed_form(1.0, 1.0, a, b),
                    std::invalid_argument);
    CHECK_THROWS_AS(covariance_closed_form(1.0, 2.0 * M_PI - 1.0, a, b),
                    std::invalid_argument);
}

TEST_CASE("gmc measure: k = 0 gives Lebesgue cell lengths") {
    FieldDraw d = make_draw(3u, 0, +1);
    auto grid = gmc_measure(d, 0, 0.4, cplx(0.0, 0.1), uniform_cells(7));
    for (std::size_t c = 0; c + 1 < grid.edges.size(); ++c)
        CHECK(grid.masses[c] ==
              doctest::Approx(grid.edges[c + 1] - grid.edges[c]));
}

TEST_CASE("gmc first moment: mean total mass is 2 pi (both signs)") {
    const int reps = 2000;
    int k = 8;
    double a = 0.25;
    cplx b(0.0, 0.1);
    for (int sign : {+1, -1}) {
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < reps; ++i) {
            FieldDraw d = make_draw(split_seed(21u + sign, i), k, sign);
            double m = gmc_measure(d, k, a, b, uniform_cells(12)).total_mass();
            sum += m;
            sum2 += m * m;
        }
        double mean = sum / reps;
        double se = std::sqrt((sum2 / reps - mean * mean) / reps);
        CHECK(std::abs(mean - 2.0 * M_PI) < 4.0 * se);
    }
}

TEST_CASE("gmc masses are positive") {
    FieldDraw d = make_draw(77u, 16, -1);
    auto grid = gmc_measure(d, 16, 0.4, cplx(0.0, 0.3), uniform_cells(16));
    for (double m : grid.masses) CHECK(m > 0.0);
}

TEST_CASE("martingale property: mean cell mass independent of k") {
    double a = 0.3;
    const int reps = 3000;
    auto cell_mean = [&](int k) {
        double s = 0.0;
        for (int i = 0; i < reps; ++i) {
            FieldDraw d = make_draw(split_seed(4u, i), k, +1);
            s += gmc_measure(d, k, a, 0.0, uniform_cells(4)).masses[1];
        }
        return s / reps;
    };
    double m4 = cell_mean(4), m12 = cell_mean(12);
    CHECK(std::abs(m4 - m12) < 0.12); // both ~ pi/2 within MC error
    CHECK(std::abs(m4 - M_PI / 2) < 0.1);
}

TEST_CASE("sobolev norm") {
    std::vector<cplx> seq(3, 0.0);
    seq[2] = 1.0; // f_1 = 1
    CHECK(sobolev_norm(seq, -1.0) == doctest::Approx(std::sqrt(0.5)));
    std::vector<cplx> zero(9, 0.0);
    CHECK(sobolev_norm(zero, -0.3) == 0.0);
    CHECK_THROWS_AS(sobolev_norm(std::vector<cplx>(4, 0.0), 0.0),
                    std::invalid_argument);
}

TEST_CASE("truncated log-char-poly Sobolev norms stay bounded in n") {
    // E || Re ln p ||_{H^{-0.3}}^2 should stay O(1) as n grows
    using namespace fhdet;
    double prev_scale = 0.0;
    for (int dim : {8, 16, 32}) {
        const int reps = 200;
        int kmax = 2 * dim;
        double acc = 0.0;
        for (int r = 0; r < reps; ++r) {
            auto s = rmt::sample_haar(
                lindet::GroupSpec{lindet::GroupFamily::Sp, dim},
                split_seed(600u + dim, r));
            auto tr = rmt::traces(s, kmax);
            // Re ln p has Fourier coefficients -Tr(U^k)/(2k) at |j| = k
            std::vector<cplx> window(2 * kmax + 1, 0.0);
            for (int k = 1; k <= kmax; ++k) {
                window[kmax + k] = -tr[k - 1] / (2.0 * k);
                window[kmax - k] = -tr[k - 1] / (2.0 * k);
            }
            double nrm = sobolev_norm(window, -0.3);
            acc += nrm * nrm;
        }
        acc /= reps;
        CHECK(acc < 3.0); // uniform-in-n bound
        prev_scale = acc;
    }
    (void)prev_scale;
}

TEST_CASE("second moment of an arc matches the covariance double integral") {
    int k = 8;
    double a = 0.25;
    cplx b(0.0, 0.1);
    double lo = 0.5, hi = 1.5;
    const int reps = 4000;
    std::vector<double> edges = {lo, hi};
    std::vector<double> sq(reps);
    for (int i = 0; i < reps; ++i) {
        FieldDraw d = make_draw(split_seed(9000u, i), k, +1);
        double m = gmc_measure(d, k, a, b, edges).masses[0];
        sq[i] = m * m;
    }
    double mean2 = 0.0;
    for (double v : sq) mean2 += v;
    mean2 /= reps;
    double var2 = 0.0;
    for (double v : sq) var2 += (v - mean2) * (v - mean2);
    double se = std::sqrt(var2 / reps / reps);
    // E[mass^2] = int int exp(Cov) over the arc
    int q = 200;
    double h = (hi - lo) / q, ref = 0.0;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            ref += std::exp(covariance_partial(lo + (i + 0.5) * h,
                                               lo + (j + 0.5) * h, a, b, k)
                                .real()) *
                   h * h;
    CHECK(std::abs(mean2 - ref) < 4.0 * se);
}
