#include "fhdet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fhdet/gmc.hpp"
#include "fhdet/specfun.hpp"

namespace fhdet::asym {

using specfun::log_barnes_g;
using specfun::log_barnes_ratio;
using symbols::Singularity;

void AsymptoticBreakdown::add(std::string name, cplx value) {
    terms.emplace_back(std::move(name), value);
    total += value;
}

namespace {

constexpr cplx kI(0.0, 1.0);

cplx b_plus_at(const FisherHartwigSymbol& sym, double theta) {
    return sym.b_plus_log(std::exp(kI * theta));
}

cplx b_minus_at(const FisherHartwigSymbol& sym, double theta) {
    return sym.b_minus_log(std::exp(kI * theta));
}

double szego_sum(const FisherHartwigSymbol& sym) {
    double s = 0.0;
    for (const auto& [k, vk] : sym.v)
        if (k >= 1) {
            auto it = sym.v.find(-k);
            cplx other = it == sym.v.end() ? cplx(0.0) : it->second;
            s += k * (vk * other).real();
        }
    return s;
}

// The even-symbol reading used by the T+H expansions: singularities at +-1
// plus conjugate-reflected pairs indexed by their upper-half representative.
struct EvenView {
    double a0 = 0.0, a_end = 0.0;
    std::vector<Singularity> upper;

    static EvenView from(const FisherHartwigSymbol& sym) {
        if (sym.general_v)
            throw std::invalid_argument("even symbol requires symmetric V");
        EvenView ev;
        std::vector<Singularity> lower;
        for (const auto& sg : sym.sing) {
            if (std::abs(std::sin(sg.theta)) < 1e-12) {
                if (std::abs(sg.beta) > 1e-12)
                    throw std::invalid_argument("even symbol: beta at +-1 must vanish");
                (std::cos(sg.theta) > 0.0 ? ev.a0 : ev.a_end) = sg.alpha;
            } else if (sg.theta < M_PI) {
                ev.upper.push_back(sg);
            } else {
                lower.push_back(sg);
            }
        }
        if (lower.size() != ev.upper.size())
            throw std::invalid_argument("even symbol: unpaired singularities");
        for (const auto& sg : ev.upper) {
            bool found = false;
            for (const auto& lg : lower)
                if (std::abs(lg.theta - (2.0 * M_PI - sg.theta)) < 1e-10 &&
                    std::abs(lg.alpha - sg.alpha) < 1e-12 &&
                    std::abs(lg.beta + sg.beta) < 1e-12)
                    found = true;
            if (!found)
                throw std::invalid_argument("even symbol: reflection pairing broken");
        }
        return ev;
    }
};

} // namespace

AsymptoticBreakdown ehrhardt_log_det(const FisherHartwigSymbol& sym, int n) {
    if (n < 1) throw std::invalid_argument("ehrhardt_log_det: n >= 1 required");
    for (const auto& sg : sym.sing) {
        if (sg.alpha <= -0.5)
            throw std::invalid_argument("ehrhardt_log_det: alpha <= -1/2");
        // alpha_j +- beta_j must avoid the negative integers
        for (int s : {-1, 1}) {
            cplx w = sg.alpha + double(s) * sg.beta;
            if (std::abs(w.imag()) < 1e-12 && w.real() < -0.5 &&
                std::abs(w.real() - std::round(w.real())) < 1e-12)
                throw std::invalid_argument(
                    "ehrhardt_log_det: alpha +- beta at a negative integer");
        }
    }
    AsymptoticBreakdown br;
    br.add("nV0", double(n) * sym.v0());
    cplx sz = 0.0;
    for (const auto& [k, vk] : sym.v)
        if (k >= 1) {
            auto it = sym.v.find(-k);
            if (it != sym.v.end()) sz += double(k) * vk * it->second;
        }
    br.add("szego_sum", sz);
    cplx ab = 0.0;
    for (const auto& sg : sym.sing) ab += sg.alpha * sg.alpha - sg.beta * sg.beta;
    br.add("log_n", std::log(double(n)) * ab);
    cplx bpm = 0.0;
    for (const auto& sg : sym.sing) {
        cplx bp = b_plus_at(sym, sg.theta);
        cplx bm = 0.0;
        for (const auto& [k, vk] : sym.v)
            if (k <= -1) bm += vk * std::exp(kI * double(k) * sg.theta);
        bpm -= (sg.alpha - sg.beta) * bp + (sg.alpha + sg.beta) * bm;
    }
    br.add("b_pm", bpm);
    cplx pw = 0.0;
    for (std::size_t j = 0; j < sym.sing.size(); ++j)
        for (std::size_t k = j + 1; k < sym.sing.size(); ++k) {
            const auto& a = sym.sing[j];
            const auto& b = sym.sing[k];
            pw += 2.0 * (a.beta * b.beta - a.alpha * b.alpha) *
                  symbols::re_log_one_minus_exp(b.theta - a.theta);
            pw += (a.alpha * b.beta - b.alpha * a.beta) * kI *
                  (b.theta - a.theta - M_PI);
        }
    br.add("pairwise", pw);
    cplx gr = 0.0;
    for (const auto& sg : sym.sing) gr += log_barnes_ratio(sg.alpha, sg.beta);
    br.add("G_ratios", gr);
    br.add("o1", 0.0);
    return br;
}

namespace {

// |z_j - z_k| for points on the circle
double chord(double th1, double th2) {
    return 2.0 * std::abs(std::sin(0.5 * (th1 - th2)));
}

} // namespace

AsymptoticBreakdown dik_th_log_det(const FisherHartwigSymbol& sym, int n,
                                   THKind kind) {
    if (n < 1) throw std::invalid_argument("dik_th_log_det: n >= 1 required");
    EvenView ev = EvenView::from(sym);
    const double sp = kind.s_prime(), tp = kind.t_prime();
    const double q = double(kind.q(n));
    const double a0 = ev.a0, ae = ev.a_end;
    const double asum_ends = a0 + ae + sp + tp;

    AsymptoticBreakdown br;
    cplx v0 = sym.v0();
    cplx v1 = sym.v_at(0.0), vm1 = sym.v_at(M_PI);
    br.add("V_block", double(n) * v0 +
                          0.5 * (asum_ends * v0 - (a0 + sp) * v1 -
                                 (ae + tp) * vm1 + szego_sum(sym)));
    cplx bpm = 0.0;
    for (const auto& sg : ev.upper)
        bpm += (-sg.alpha + sg.beta) * b_plus_at(sym, sg.theta) +
               (-sg.alpha - sg.beta) * b_minus_at(sym, sg.theta);
    br.add("b_pm", bpm);

    cplx sum_b = 0.0;
    double sum_a = 0.0;
    for (const auto& sg : ev.upper) {
        sum_b += sg.beta;
        sum_a += sg.alpha;
    }
    cplx cross = 0.0;
    for (std::size_t j = 0; j < ev.upper.size(); ++j)
        for (std::size_t k = j + 1; k < ev.upper.size(); ++k)
            cross += ev.upper[j].alpha * ev.upper[k].beta -
                     ev.upper[k].alpha * ev.upper[j].beta;
    br.add("phase", -kI * M_PI * ((a0 + sp + sum_a) * sum_b + cross));

    cplx ab = 0.0;
    for (const auto& sg : ev.upper)
        ab += sg.alpha * sg.alpha - sg.beta * sg.beta;
    br.add("pow2", std::log(2.0) *
                       ((1.0 - sp - tp) * n + q + ab -
                        0.5 * asum_ends * asum_ends + 0.5 * asum_ends));
    br.add("pow_n", std::log(double(n)) *
                        (0.5 * (a0 * a0 + ae * ae) + a0 * sp + ae * tp + ab));

    cplx pw = 0.0;
    for (std::size_t j = 0; j < ev.upper.size(); ++j)
        for (std::size_t k = j + 1; k < ev.upper.size(); ++k) {
            const auto& a = ev.upper[j];
            const auto& b = ev.upper[k];
            pw += -2.0 * (a.alpha * b.alpha - a.beta * b.beta) *
                  std::log(chord(a.theta, b.theta));
            pw += -2.0 * (a.alpha * b.alpha + a.beta * b.beta) *
                  std::log(chord(a.theta, -b.theta));
        }
    br.add("pairwise", pw);

    const double atil = 0.5 * asum_ends + sum_a;
    cplx pm = 0.0;
    for (const auto& sg : ev.upper) {
        pm += 2.0 * atil * sg.beta * kI * sg.theta;
        pm += -(sg.alpha * sg.alpha + sg.beta * sg.beta) *
              std::log(std::abs(2.0 * std::sin(sg.theta)));
        pm += -2.0 * sg.alpha * (a0 + sp) *
              std::log(2.0 * std::abs(std::sin(0.5 * sg.theta)));
        pm += -2.0 * sg.alpha * (ae + tp) *
              std::log(2.0 * std::abs(std::cos(0.5 * sg.theta)));
    }
    br.add("pm1_factors", pm);

    br.add("G_block", 0.5 * (asum_ends + 1.0) * std::log(M_PI) +
                          2.0 * log_barnes_g(0.5) -
                          log_barnes_g(1.0 + a0 + sp) -
                          log_barnes_g(1.0 + ae + tp));
    cplx gr = 0.0;
    for (const auto& sg : ev.upper) gr += log_barnes_ratio(sg.alpha, sg.beta);
    br.add("G_ratios", gr);
    br.add("o1", 0.0);
    return br;
}

namespace {

// the six singularities of f_{p,t} in angle order
std::vector<Singularity> merging_list(const MergingParams& mp) {
    return {{0.0, mp.alpha0, 0.0},
            {mp.p - mp.t, mp.alpha1, mp.beta1},
            {mp.p + mp.t, mp.alpha2, mp.beta2},
            {M_PI, mp.alpha3, 0.0},
            {2.0 * M_PI - mp.p - mp.t, mp.alpha2, -mp.beta2},
            {2.0 * M_PI - mp.p + mp.t, mp.alpha1, -mp.beta1}};
}

FisherHartwigSymbol smooth_of(const MergingParams& mp) {
    FisherHartwigSymbol s;
    s.v = mp.v;
    return s;
}

} // namespace

AsymptoticBreakdown uniform_log_det(const MergingParams& params, int n,
                                    const PainleveSolution& sol) {
    params.validate();
    if (n < 1) throw std::invalid_argument("uniform_log_det: n >= 1 required");
    const double x = 2.0 * n * params.t;
    if (x > sol.x_max() + 1e-9)
        throw std::out_of_range("uniform_log_det: 2nt beyond the Painleve range");
    const auto sg = merging_list(params);
    FisherHartwigSymbol smooth = smooth_of(params);

    AsymptoticBreakdown br;
    br.add("linear_t", 2.0 * kI * double(n) * params.t * (params.beta1 - params.beta2));
    br.add("nV0", double(n) * smooth.v0());
    br.add("szego_sum", szego_sum(smooth));
    cplx ab = 0.0;
    for (const auto& s : sg) ab += s.alpha * s.alpha - s.beta * s.beta;
    br.add("log_n", std::log(double(n)) * ab);
    cplx bpm = 0.0;
    for (const auto& s : sg) {
        cplx bp = b_plus_at(smooth, s.theta);
        cplx bpc = b_plus_at(smooth, -s.theta); // sum V_k conj(z)^k, symmetric V
        bpm -= (s.alpha - s.beta) * bp + (s.alpha + s.beta) * bpc;
    }
    br.add("b_pm", bpm);
    cplx pw = 0.0;
    for (std::size_t j = 0; j < sg.size(); ++j)
        for (std::size_t k = j + 1; k < sg.size(); ++k) {
            if ((j == 1 && k == 2) || (j == 4 && k == 5)) continue;
            pw += 2.0 * (sg[j].beta * sg[k].beta - sg[j].alpha * sg[k].alpha) *
                  std::log(chord(sg[j].theta, sg[k].theta));
            pw += (sg[j].alpha * sg[k].beta - sg[k].alpha * sg[j].beta) * kI *
                  (sg[k].theta - sg[j].theta - M_PI);
        }
    br.add("pairwise", pw);
    br.add("alpha_beta_t", 4.0 * kI * params.t *
                               (params.alpha1 * params.beta2 -
                                params.alpha2 * params.beta1));
    br.add("painleve_integral", 2.0 * sol.integral_at(x));
    br.add("log_sint_nt",
           4.0 * (params.beta1 * params.beta2 - params.alpha1 * params.alpha2) *
               std::log(std::sin(params.t) / (n * params.t)));
    br.add("G_pm1", log_barnes_ratio(params.alpha0, 0.0) +
                        log_barnes_ratio(params.alpha3, 0.0));
    br.add("G_merged", 2.0 * log_barnes_ratio(params.alpha1 + params.alpha2,
                                              params.beta1 + params.beta2));
    br.add("o1", 0.0);
    return br;
}

AsymptoticBreakdown uniform_th_det(const MergingParams& params, int n,
                                   THKind kind, const PainleveSolution& sol) {
    params.validate();
    if (n < 1) throw std::invalid_argument("uniform_th_det: n >= 1 required");
    const double x = 4.0 * n * params.t;
    if (x > sol.x_max() + 1e-9)
        throw std::out_of_range("uniform_th_det: 4nt beyond the Painleve range");
    const double sp = kind.s_prime(), tp = kind.t_prime();
    const double q = double(kind.q(n));
    const double a0 = params.alpha0, ae = params.alpha3;
    const double a1 = params.alpha1, a2 = params.alpha2;
    const cplx b1 = params.beta1, b2 = params.beta2;
    const double asum_ends = a0 + ae + sp + tp;
    FisherHartwigSymbol smooth = smooth_of(params);
    const double th1 = params.p - params.t, th2 = params.p + params.t;

    AsymptoticBreakdown br;
    cplx v0 = smooth.v0(), v1 = smooth.v_at(0.0), vm1 = smooth.v_at(M_PI);
    br.add("V_block", 2.0 * kI * double(n) * params.t * (b1 - b2) +
                          double(n) * v0 +
                          0.5 * (asum_ends * v0 - (a0 + sp) * v1 -
                                 (ae + tp) * vm1 + szego_sum(smooth)));
    cplx bpm = 0.0;
    for (const auto& [thj, aj, bj] :
         {std::tuple<double, double, cplx>{th1, a1, b1}, {th2, a2, b2}})
        bpm += (-aj + bj) * b_plus_at(smooth, thj) +
               (-aj - bj) * b_minus_at(smooth, thj);
    br.add("b_pm", bpm);
    br.add("phase", -kI * M_PI * (a0 + sp + a1 + a2) * (b1 + b2));
    cplx ab = (a1 * a1 - b1 * b1) + (a2 * a2 - b2 * b2);
    br.add("pow2", std::log(2.0) * ((1.0 - sp - tp) * n + q + ab -
                                    0.5 * asum_ends * asum_ends +
                                    0.5 * asum_ends));
    br.add("pow_n", std::log(double(n)) *
                        (0.5 * (a0 * a0 + ae * ae) + a0 * sp + ae * tp + ab));
    br.add("merging_factors",
           -2.0 * (a1 * a2 - b1 * b2) *
                   std::log(std::abs(std::sin(params.t) / (2.0 * n * params.t))) -
               2.0 * (a1 * a2 + b1 * b2) *
                   std::log(std::abs(2.0 * std::sin(params.p))));
    br.add("painleve_integral", sol.integral_at(x));
    const double atil = 0.5 * asum_ends + a1 + a2;
    cplx pm = 0.0;
    for (const auto& [thj, aj, bj] :
         {std::tuple<double, double, cplx>{th1, a1, b1}, {th2, a2, b2}}) {
        pm += 2.0 * atil * bj * kI * thj;
        pm += -(aj * aj + bj * bj) * std::log(std::abs(2.0 * std::sin(thj)));
        pm += -2.0 * aj * (a0 + sp) * std::log(2.0 * std::abs(std::sin(0.5 * thj)));
        pm += -2.0 * aj * (ae + tp) * std::log(2.0 * std::abs(std::cos(0.5 * thj)));
    }
    br.add("pm1_factors", pm);
    br.add("G_block", 0.5 * (asum_ends + 1.0) * std::log(M_PI) +
                          2.0 * log_barnes_g(0.5) -
                          log_barnes_g(1.0 + a0 + sp) -
                          log_barnes_g(1.0 + ae + tp));
    br.add("G_merged", log_barnes_ratio(a1 + a2, b1 + b2));
    br.add("o1", 0.0);
    return br;
}

double claeys_envelope(const FisherHartwigSymbol& sym, int n, THKind kind) {
    if (n < 1) throw std::invalid_argument("claeys_envelope: n >= 1 required");
    EvenView ev = EvenView::from(sym);
    if (ev.a0 != 0.0 || ev.a_end != 0.0)
        throw std::invalid_argument("claeys_envelope: no +-1 singularities allowed");
    for (const auto& sg : ev.upper)
        if (sg.alpha < 0.0)
            throw std::invalid_argument("claeys_envelope: alpha_j >= 0 required");

    const double invn = 1.0 / double(n);
    double log_env = double(n) * sym.v0().real();
    for (const auto& sg : ev.upper) {
        double a = sg.alpha;
        double b2 = (sg.beta * sg.beta).real(); // beta^2 (real, <= 0)
        log_env += (a * a - b2) * std::log(double(n));
        switch (kind.kappa) {
            case 1:
                log_env += (a - a * a - b2) * std::log(std::sin(sg.theta) + invn);
                break;
            case 2:
                log_env += (-a - a * a - b2) * std::log(std::sin(sg.theta) + invn);
                break;
            case 3:
                log_env += (-a - a * a - b2) *
                               std::log(std::sin(0.5 * sg.theta) + invn) +
                           (a - a * a - b2) *
                               std::log(std::cos(0.5 * sg.theta) + invn);
                break;
            case 4:
                log_env += (a - a * a - b2) *
                               std::log(std::sin(0.5 * sg.theta) + invn) +
                           (-a - a * a - b2) *
                               std::log(std::cos(0.5 * sg.theta) + invn);
                break;
            default:
                throw std::invalid_argument("claeys_envelope: kappa must be 1..4");
        }
    }
    for (std::size_t j = 0; j < ev.upper.size(); ++j)
        for (std::size_t k = j + 1; k < ev.upper.size(); ++k) {
            const auto& a = ev.upper[j];
            const auto& b = ev.upper[k];
            double aa = a.alpha * b.alpha;
            double bb = (a.beta * b.beta).real();
            log_env += -2.0 * (aa - bb) *
                       std::log(std::sin(std::abs(0.5 * (a.theta - b.theta))) + invn);
            log_env += -2.0 * (aa + bb) *
                       std::log(std::sin(std::abs(0.5 * (a.theta + b.theta))) + invn);
        }
    return std::exp(log_env);
}

PairDecomposition decompose_pair(double theta, double theta2) {
    auto in_upper = [](double t) { return t > 0.0 && t < M_PI; };
    auto in_lower = [](double t) { return t > M_PI && t < 2.0 * M_PI; };
    PairDecomposition d;
    d.beta1_sign = d.beta2_sign = 1.0;
    if (in_upper(theta) && in_upper(theta2)) {
        if (theta < theta2) {
            d = {1, theta, theta2, 1.0, 1.0, 0.0, 0.0};
        } else {
            d = {2, theta2, theta, 1.0, 1.0, 0.0, 0.0};
        }
    } else if (in_upper(theta) && in_lower(theta2)) {
        double r = 2.0 * M_PI - theta2;
        if (theta < r)
            d = {3, theta, r, 1.0, -1.0, 0.0, 0.0};
        else
            d = {8, r, theta, -1.0, 1.0, 0.0, 0.0};
    } else if (in_lower(theta) && in_upper(theta2)) {
        double r = 2.0 * M_PI - theta;
        if (theta2 < r)
            d = {4, theta2, r, 1.0, -1.0, 0.0, 0.0};
        else
            d = {7, r, theta2, -1.0, 1.0, 0.0, 0.0};
    } else if (in_lower(theta) && in_lower(theta2)) {
        double r1 = 2.0 * M_PI - theta, r2 = 2.0 * M_PI - theta2;
        if (r1 < r2)
            d = {5, r1, r2, -1.0, -1.0, 0.0, 0.0};
        else
            d = {6, r2, r1, -1.0, -1.0, 0.0, 0.0};
    } else {
        throw std::invalid_argument(
            "decompose_pair: angles must avoid 0, pi and the diagonals");
    }
    if (std::abs(d.arg_z1 - d.arg_z2) < 1e-14)
        throw std::invalid_argument("decompose_pair: coincident angles");
    d.p = 0.5 * (d.arg_z1 + d.arg_z2);
    d.t = 0.5 * (d.arg_z2 - d.arg_z1);
    return d;
}

cplx ratio_asymptotic(const RatioCase& rcase, double theta, double theta2,
                      double alpha, cplx beta, int n, int k,
                      const PainleveSolution* sol) {
    if (std::abs(beta.real()) > 1e-14)
        throw std::invalid_argument("ratio_asymptotic: beta must be imaginary");
    if (rcase.numerator == RatioNumerator::kk ||
        rcase.numerator == RatioNumerator::kfull) {
        if (k < 0) throw std::invalid_argument("ratio_asymptotic: k >= 0 required");
        return std::exp(gmc::covariance_partial(theta, theta2, alpha, beta, k));
    }
    double gap = std::min(std::abs(theta - theta2),
                          std::abs(theta + theta2 - 2.0 * M_PI));
    double threshold = std::log(double(std::max(n, 2))) / double(std::max(n, 2));
    if (rcase.regime == RatioRegime::separated) {
        if (gap <= threshold)
            throw std::invalid_argument(
                "ratio_asymptotic: separated regime needs gap > ln(n)/n");
        return std::exp(gmc::covariance_closed_form(theta, theta2, alpha, beta));
    }
    // merging regime
    PairDecomposition d = decompose_pair(theta, theta2);
    if (d.t >= 0.5 || !(d.p - d.t > 0.0) || !(d.p + d.t < M_PI))
        throw std::invalid_argument(
            "ratio_asymptotic: pair outside the merging regime");
    if (sol == nullptr)
        throw std::invalid_argument(
            "ratio_asymptotic: merging regime requires a Painleve solution");
    const cplx b1 = d.beta1_sign * beta, b2 = d.beta2_sign * beta;
    const double x = 4.0 * n * d.t;
    if (x > sol->x_max() + 1e-9)
        throw std::out_of_range("ratio_asymptotic: 4nt beyond the Painleve range");
    cplx lg = 0.0;
    lg += -2.0 * (alpha * alpha - (b1 * b2).real()) *
          std::log(std::abs(std::sin(d.t) / (2.0 * n * d.t)));
    lg += -2.0 * (alpha * alpha + (b1 * b2).real()) *
          std::log(std::abs(2.0 * std::sin(d.p)));
    lg += sol->integral_at(x);
    lg += 2.0 * kI * alpha * b1 * (d.p - d.t) + 2.0 * kI * alpha * b2 * (d.p + d.t);
    lg += -2.0 * kI * M_PI * alpha * b2 + kI * M_PI * (alpha * b2 - alpha * b1);
    lg += 2.0 * kI * double(n) * d.t * (b1 - b2);
    lg += log_barnes_ratio(2.0 * alpha, b1 + b2);
    lg += 2.0 * log_barnes_g(1.0 + 2.0 * alpha) -
          log_barnes_g(1.0 + alpha + b1) - log_barnes_g(1.0 + alpha - b1) -
          log_barnes_g(1.0 + alpha + b2) - log_barnes_g(1.0 + alpha - b2);
    return std::exp(lg);
}

} // namespace fhdet::asym
