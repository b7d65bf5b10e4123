#include "doctest.h"

#include <cmath>
#include <complex>

#include "fhdet/symbols.hpp"

using namespace fhdet::symbols;

namespace {

// independent per-factor evaluation with its own branch bookkeeping,
// used as a second code path for eval_symbol
cplx eval_oracle(const FisherHartwigSymbol& s, double phi) {
    cplx f = std::exp(s.v_at(phi));
    for (const auto& sg : s.sing) {
        cplx z = std::exp(cplx(0.0, phi));
        cplx zj = std::exp(cplx(0.0, sg.theta));
        f *= std::pow(std::abs(z - zj), 2.0 * sg.alpha);
        // g-jump, canonical prefactors, and the z^{beta_j} share of z^{sum beta}
        cplx g = phi < sg.theta ? std::exp(cplx(0.0, M_PI) * sg.beta)
                                : std::exp(cplx(0.0, -M_PI) * sg.beta);
        f *= g * std::exp(cplx(0.0, -sg.theta) * sg.beta) *
             std::exp(cplx(0.0, phi) * sg.beta);
    }
    return f;
}

} // namespace

TEST_CASE("branch helpers") {
    // Im ln(1-e^{ix}) = (x - pi)/2 on (0, 2pi), pi/2 at 0
    CHECK(im_log_one_minus_exp(0.0) == doctest::Approx(M_PI / 2));
    CHECK(im_log_one_minus_exp(1.0) == doctest::Approx((1.0 - M_PI) / 2));
    CHECK(im_log_one_minus_exp(-1.0) ==
          doctest::Approx((2.0 * M_PI - 1.0 - M_PI) / 2));
    for (double x : {0.3, 2.0, 4.5, 6.0}) {
        cplx w = 1.0 - std::exp(cplx(0.0, x));
        CHECK(re_log_one_minus_exp(x) == doctest::Approx(std::log(std::abs(w))));
        CHECK(im_log_one_minus_exp(x) == doctest::Approx(std::arg(w)));
    }
}

TEST_CASE("eval_symbol simple cases") {
    FisherHartwigSymbol id;
    CHECK(std::abs(eval_symbol(id, 1.234) - 1.0) < 1e-14);

    FisherHartwigSymbol s;
    s.add_singularity(0.0, 1.0, 0.0);
    CHECK(std::abs(eval_symbol(s, M_PI) - 4.0) < 1e-13); // |z-1|^2 at z=-1
    CHECK(std::abs(eval_symbol(s, 0.0)) == 0.0);         // alpha>0 at the point

    FisherHartwigSymbol neg;
    neg.add_singularity(1.0, -0.3, 0.0);
    CHECK_THROWS_AS(eval_symbol(neg, 1.0), std::domain_error);
}

TEST_CASE("eval_symbol against the per-factor oracle") {
    FisherHartwigSymbol s;
    s.set_v(1, 0.3);
    s.set_v(2, -0.11);
    s.add_singularity(1.1, 0.4, cplx(0.0, 0.25));
    s.add_singularity(2.0 * M_PI - 1.1, 0.4, cplx(0.0, -0.25));
    s.add_singularity(3.0, 0.7, cplx(0.0, 0.1));
    for (int i = 0; i < 32; ++i) {
        double phi = 0.05 + i * (2.0 * M_PI - 0.1) / 32.0;
        CHECK(std::abs(eval_symbol(s, phi) - eval_oracle(s, phi)) < 1e-12);
    }
}

TEST_CASE("fourier coefficients of trivial symbols") {
    FisherHartwigSymbol id;
    auto w = fourier_coeffs(id, 6, 1e-12);
    CHECK(std::abs(w.at(0) - 1.0) < 1e-12);
    for (int j = 1; j <= 6; ++j) {
        CHECK(std::abs(w.at(j)) < 1e-12);
        CHECK(std::abs(w.at(-j)) < 1e-12);
    }

    FisherHartwigSymbol s; // |z-1|^2 = 2 - z - 1/z
    s.add_singularity(0.0, 1.0, 0.0);
    auto w2 = fourier_coeffs(s, 5, 1e-10);
    CHECK(std::abs(w2.at(0) - 2.0) < 1e-9);
    CHECK(std::abs(w2.at(1) + 1.0) < 1e-9);
    CHECK(std::abs(w2.at(-1) + 1.0) < 1e-9);
    CHECK(std::abs(w2.at(3)) < 1e-9);
}

TEST_CASE("fourier coefficients of exp(2 cos theta)") {
    // oracle: f_j = I_j(2) = sum_m 1/(m! (m+|j|)!)
    auto bessel_i_2 = [](int j) {
        double s = 0.0, mfact = 1.0;
        for (int m = 0; m <= 40; ++m) {
            double mj = 1.0;
            for (int r = 1; r <= m + j; ++r) mj *= r;
            s += 1.0 / (mfact * mj);
            mfact *= (m + 1);
        }
        return s;
    };
    FisherHartwigSymbol s;
    s.set_v(1, 1.0);
    auto w = fourier_coeffs(s, 8, 1e-11);
    for (int j = 0; j <= 8; ++j) {
        CHECK(std::abs(w.at(j) - bessel_i_2(j)) < 1e-9);
        CHECK(std::abs(w.at(-j) - bessel_i_2(j)) < 1e-9);
    }
}

TEST_CASE("fourier reality and Parseval for a smooth symbol") {
    FisherHartwigSymbol s;
    s.set_v(1, 0.4);
    s.set_v(3, -0.2);
    auto w = fourier_coeffs(s, 40, 1e-11);
    for (int j = 1; j <= 40; ++j)
        CHECK(std::abs(w.at(-j) - std::conj(w.at(j))) < 1e-10);
    double sum = 0.0;
    for (int j = -40; j <= 40; ++j) sum += std::norm(w.at(j));
    // quadrature of |f|^2 / 2pi
    int n = 1 << 12;
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
        quad += std::norm(eval_symbol(s, 2.0 * M_PI * (i + 0.5) / n)) / n;
    CHECK(std::abs(sum - quad) < 1e-9);
}

TEST_CASE("merging symbol structure") {
    MergingParams mp;
    mp.p = M_PI / 2;
    mp.t = 0.3;
    mp.alpha1 = mp.alpha2 = 1.0;
    auto s = make_merging_symbol(mp);
    // direct product of |z - z_j|^2 over the four singular points at theta=0
    double expect = 1.0;
    for (double th : {mp.p - mp.t, mp.p + mp.t, 2.0 * M_PI - mp.p - mp.t,
                      2.0 * M_PI - mp.p + mp.t})
        expect *= std::norm(1.0 - std::exp(cplx(0.0, th)));
    CHECK(std::abs(eval_symbol(s, 0.0) - expect) < 1e-12);

    // conjugation symmetry: f(theta) = f(2pi - theta), real positive
    mp.beta1 = cplx(0.0, 0.2);
    mp.beta2 = cplx(0.0, -0.15);
    mp.alpha1 = 0.3;
    mp.alpha2 = 0.45;
    auto s2 = make_merging_symbol(mp);
    for (int i = 1; i < 24; ++i) {
        double th = i * 0.26;
        cplx a = eval_symbol(s2, th), b = eval_symbol(s2, 2.0 * M_PI - th);
        CHECK(std::abs(a - b) < 1e-11 * (1.0 + std::abs(a)));
        CHECK(std::abs(a.imag()) < 1e-11 * (1.0 + std::abs(a)));
        CHECK(a.real() > 0.0);
    }

    MergingParams all_zero;
    all_zero.p = 1.0;
    all_zero.t = 0.2;
    auto s3 = make_merging_symbol(all_zero);
    CHECK(std::abs(eval_symbol(s3, 2.2) - 1.0) < 1e-14);
}

TEST_CASE("merging symbol parameter validation") {
    MergingParams mp;
    mp.p = 0.1;
    mp.t = 0.2; // p - t < 0
    CHECK_THROWS_AS(make_merging_symbol(mp), std::invalid_argument);
    MergingParams mp2;
    mp2.alpha1 = -0.6;
    CHECK_THROWS_AS(make_merging_symbol(mp2), std::invalid_argument);
}

TEST_CASE("sigma symbols: trivial and boundary values") {
    auto s4 = make_sigma_symbol(4, 1.0, std::nullopt, 0.0, 0.0, 3);
    CHECK(std::abs(eval_symbol(s4.symbol, 2.1) - 1.0) < 1e-14);
    CHECK(std::abs(s4.hat_at_plus1 - 1.0) < 1e-14);
    CHECK(std::abs(s4.hat_at_minus1 - 1.0) < 1e-14);

    auto s5 = make_sigma_symbol(5, M_PI / 2, std::nullopt, 1.0, 0.0, 0);
    CHECK(std::abs(eval_symbol(s5.symbol, 0.0) - 4.0) < 1e-12);
}

TEST_CASE("sigma_1 coefficients match the direct formula") {
    double th = 0.7, th2 = 2.1, a = 0.3;
    cplx b(0.0, 0.1);
    auto s1 = make_sigma_symbol(1, th, th2, a, b, 3);
    for (int j = 1; j <= 3; ++j) {
        cplx w = std::exp(cplx(0.0, j * th)) + std::exp(cplx(0.0, j * th2));
        double expect = -2.0 / j * ((a - b) * w).real();
        CHECK(std::abs(s1.symbol.v.at(j) - expect) < 1e-14);
        CHECK(std::abs(s1.symbol.v.at(-j) - expect) < 1e-14);
    }
    CHECK(s1.symbol.sing.empty());
    // product form vs series form on a grid
    for (int i = 0; i < 32; ++i) {
        double phi = 0.01 + i * 0.19;
        cplx direct = std::exp(s1.symbol.v_at(phi));
        CHECK(std::abs(eval_symbol(s1.symbol, phi) - direct) < 1e-12);
    }
}

TEST_CASE("sigma-hat boundary closed forms against direct summation") {
    double a = 0.35;
    cplx b(0.0, 0.2);
    int k = 7;
    for (double th : {0.6, 2.2, 4.0, 5.7}) {
        for (double th2 : {1.1, 3.9}) {
            for (int kind : {1, 2, 3, 5}) {
                auto ss = make_sigma_symbol(kind, th, th2, a, b,
                                            kind == 3 || kind == 5 ? 0 : k);
                for (int pm : {+1, -1}) {
                    double phi = pm > 0 ? 0.0 : M_PI;
                    // direct: one-sided V-series plus per-factor branch values
                    cplx direct = 0.0;
                    if (kind == 1 || kind == 2) {
                        for (int j = 1; j <= k; ++j) {
                            cplx w = std::exp(cplx(0.0, j * th));
                            if (kind == 1) w += std::exp(cplx(0.0, j * th2));
                            direct += -2.0 / j * ((a - b) * w).real() *
                                      std::exp(cplx(0.0, j * phi));
                        }
                    }
                    cplx val = std::exp(direct);
                    auto factor = [&](double base) {
                        double x = phi - base;
                        return std::exp(
                            cplx(2.0 * a * re_log_one_minus_exp(x), 0.0) +
                            2.0 * b * cplx(0.0, im_log_one_minus_exp(x)));
                    };
                    if (kind == 2) val *= factor(th2);
                    if (kind == 3) val *= factor(th) * factor(th2);
                    if (kind == 5) val *= factor(th);
                    cplx got = pm > 0 ? ss.hat_at_plus1 : ss.hat_at_minus1;
                    CHECK(std::abs(got - val) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("wiener-hopf evaluation") {
    FisherHartwigSymbol s;
    auto w0 = wiener_hopf_eval(s, 1.0);
    CHECK(std::abs(w0.b_plus_log) < 1e-15);
    CHECK(std::abs(w0.b_minus_log) < 1e-15);
    CHECK(std::abs(w0.v0) < 1e-15);

    s.set_v(1, 1.0);
    auto w1 = wiener_hopf_eval(s, 1.0);
    CHECK(std::abs(w1.b_plus_log - 1.0) < 1e-15);
    CHECK(std::abs(w1.b_minus_log - 1.0) < 1e-15);
    auto wi = wiener_hopf_eval(s, cplx(0.0, 1.0));
    CHECK(std::abs(wi.b_plus_log - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(wi.b_minus_log - cplx(0.0, -1.0)) < 1e-15);
    CHECK_THROWS_AS(wiener_hopf_eval(s, cplx(2.0, 0.0)), std::invalid_argument);
}

TEST_CASE("symbol json round trip") {
    FisherHartwigSymbol s;
    s.set_v(1, 0.5);
    s.add_singularity(1.2, 0.3, cplx(0.0, 0.1));
    s.add_singularity(2.0 * M_PI - 1.2, 0.3, cplx(0.0, -0.1));
    auto text = symbol_to_json(s);
    auto back = symbol_from_json(text);
    CHECK(back.sing.size() == 2);
    CHECK(back.v.at(1) == s.v.at(1));
    CHECK(back.sing[0].theta == doctest::Approx(1.2));
    CHECK(back.sing[0].beta.imag() == doctest::Approx(0.1));
}

TEST_CASE("refinement convergence reporting") {
    FisherHartwigSymbol s;
    s.add_singularity(1.0, 0.3, cplx(0.0, 0.1));
    s.add_singularity(2.0 * M_PI - 1.0, 0.3, cplx(0.0, -0.1));
    auto w = fourier_coeffs(s, 16, 1e-9);
    CHECK(w.accuracy < 1e-9);
    for (int j = 1; j <= 16; ++j)
        CHECK(std::abs(w.at(-j) - std::conj(w.at(j))) < 10 * w.accuracy + 1e-12);
}

TEST_CASE("fourier refinement cap reports non-convergence") {
    FisherHartwigSymbol s;
    s.add_singularity(1.0, 0.3, cplx(0.0, 0.1));
    s.add_singularity(2.0 * M_PI - 1.0, 0.3, cplx(0.0, -0.1));
    CHECK_THROWS_AS(fourier_coeffs(s, 4, 1e-16), numeric_error);
}
