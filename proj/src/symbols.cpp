#include "fhdet/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fhdet/fft.hpp"
#include "json.hpp"

namespace fhdet::symbols {

namespace {

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < 0.0) t += 2.0 * M_PI;
    // collapse values indistinguishable from 2pi
    if (2.0 * M_PI - t < 1e-15) t = 0.0;
    return t;
}

constexpr double kSingularEps = 1e-13;

} // namespace

double re_log_one_minus_exp(double x) {
    double s = std::abs(std::sin(0.5 * x));
    return std::log(2.0 * s);
}

double im_log_one_minus_exp(double x) {
    double r = wrap_angle(x);
    if (r == 0.0) return 0.5 * M_PI;
    return 0.5 * (r - M_PI);
}

cplx FisherHartwigSymbol::v_at(double theta) const {
    cplx s = 0.0;
    for (const auto& [k, vk] : v)
        s += vk * std::exp(cplx(0.0, k * theta));
    return s;
}

cplx FisherHartwigSymbol::v0() const {
    auto it = v.find(0);
    return it == v.end() ? cplx(0.0) : it->second;
}

cplx FisherHartwigSymbol::b_plus_log(cplx z) const {
    cplx s = 0.0;
    for (const auto& [k, vk] : v)
        if (k >= 1) s += vk * std::pow(z, k);
    return s;
}

cplx FisherHartwigSymbol::b_minus_log(cplx z) const {
    cplx s = 0.0;
    for (const auto& [k, vk] : v)
        if (k <= -1) s += vk * std::pow(z, k);
    return s;
}

cplx FisherHartwigSymbol::sum_beta() const {
    cplx s = 0.0;
    for (const auto& sg : sing) s += sg.beta;
    return s;
}

void FisherHartwigSymbol::add_singularity(double theta, double alpha, cplx beta) {
    if (alpha <= -0.5)
        throw std::invalid_argument("singularity alpha must exceed -1/2");
    double th = wrap_angle(theta);
    for (auto& sg : sing) {
        if (std::abs(sg.theta - th) < kSingularEps) {
            sg.alpha += alpha;
            sg.beta += beta;
            return;
        }
    }
    sing.push_back({th, alpha, beta});
    std::sort(sing.begin(), sing.end(),
              [](const Singularity& a, const Singularity& b) { return a.theta < b.theta; });
}

void FisherHartwigSymbol::set_v(int k, cplx value) {
    v[k] = value;
    if (!general_v && k != 0) v[-k] = value;
}

void FisherHartwigSymbol::validate() const {
    for (const auto& sg : sing)
        if (sg.alpha <= -0.5)
            throw std::invalid_argument("singularity alpha must exceed -1/2");
    if (!general_v) {
        for (const auto& [k, vk] : v) {
            auto it = v.find(-k);
            cplx other = it == v.end() ? cplx(0.0) : it->second;
            if (std::abs(vk - other) > 1e-12)
                throw std::invalid_argument("V_k != V_{-k} requires general_v");
        }
    }
}

cplx eval_symbol(const FisherHartwigSymbol& sym, double theta) {
    double phi = wrap_angle(theta);
    cplx log_smooth = sym.v_at(phi) + cplx(0.0, phi) * sym.sum_beta();
    double log_mod = 0.0;
    cplx log_phase = 0.0;
    for (const auto& sg : sym.sing) {
        double d = phi - sg.theta;
        if (std::abs(std::sin(0.5 * d)) < kSingularEps) {
            if (sg.alpha < 0.0)
                throw std::domain_error("eval_symbol: divergent singular factor");
            if (sg.alpha > 0.0) return cplx(0.0, 0.0);
            // pure jump: tie branch theta_j <= arg z
            log_phase += cplx(0.0, -M_PI) * sg.beta;
        } else {
            log_mod += 2.0 * sg.alpha * re_log_one_minus_exp(d);
            log_phase += (phi < sg.theta ? cplx(0.0, M_PI) : cplx(0.0, -M_PI)) * sg.beta;
        }
        log_phase += cplx(0.0, -sg.theta) * sg.beta;
    }
    return std::exp(log_smooth + log_mod + log_phase);
}

cplx CoefficientWindow::at(int j) const {
    if (!covers(j))
        throw std::out_of_range("CoefficientWindow: index outside window");
    return c[j + jmax];
}

namespace {

CoefficientWindow coeffs_once(const std::function<cplx(double)>& f, int jmax,
                              std::size_t n, double offset) {
    std::vector<cplx> samples(n);
    for (std::size_t m = 0; m < n; ++m) {
        double phi = 2.0 * M_PI * (static_cast<double>(m) + offset) /
                     static_cast<double>(n);
        samples[m] = f(phi);
    }
    detail::fft_inplace(samples);
    CoefficientWindow w;
    w.jmax = jmax;
    w.c.resize(2 * jmax + 1);
    for (int j = -jmax; j <= jmax; ++j) {
        std::size_t idx = static_cast<std::size_t>(((j % static_cast<int>(n)) +
                                                    static_cast<int>(n)) %
                                                   static_cast<int>(n));
        cplx shift = std::exp(cplx(0.0, -2.0 * M_PI * j * offset /
                                            static_cast<double>(n)));
        w.c[j + jmax] = samples[idx] * shift / static_cast<double>(n);
    }
    return w;
}

} // namespace

CoefficientWindow fourier_coeffs_fn(const std::function<cplx(double)>& f,
                                    int jmax, double tol) {
    if (jmax < 0) throw std::invalid_argument("fourier_coeffs: jmax >= 0 required");
    std::size_t n = 1024;
    while (n < static_cast<std::size_t>(8 * (jmax + 1))) n <<= 1;
    const std::size_t n_cap = std::size_t(1) << 22;
    CoefficientWindow prev = coeffs_once(f, jmax, n, 0.5);
    while (n <= n_cap) {
        n <<= 1;
        CoefficientWindow next = coeffs_once(f, jmax, n, 0.5);
        double delta = 0.0;
        for (std::size_t i = 0; i < next.c.size(); ++i)
            delta = std::max(delta, std::abs(next.c[i] - prev.c[i]));
        next.accuracy = delta;
        if (delta < tol) return next;
        prev = next;
    }
    throw numeric_error("fourier_coeffs: refinement did not reach tolerance");
}

CoefficientWindow fourier_coeffs(const FisherHartwigSymbol& sym, int jmax,
                                 double tol) {
    sym.validate();
    return fourier_coeffs_fn([&sym](double phi) { return eval_symbol(sym, phi); },
                             jmax, tol);
}

void MergingParams::validate() const {
    if (!(p > 0.0 && p < M_PI))
        throw std::invalid_argument("merging symbol: p must lie in (0, pi)");
    if (!(t > 0.0 && p - t > 0.0 && p + t < M_PI))
        throw std::invalid_argument("merging symbol: need 0 < t and p +- t in (0, pi)");
    for (double a : {alpha0, alpha1, alpha2, alpha3})
        if (a <= -0.5) throw std::invalid_argument("merging symbol: alpha <= -1/2");
    if (std::abs(beta1.real()) > 1e-14 || std::abs(beta2.real()) > 1e-14)
        throw std::invalid_argument("merging symbol: beta must be purely imaginary");
}

FisherHartwigSymbol make_merging_symbol(const MergingParams& params) {
    params.validate();
    FisherHartwigSymbol s;
    s.v = params.v;
    if (params.alpha0 != 0.0) s.add_singularity(0.0, params.alpha0, 0.0);
    s.add_singularity(params.p - params.t, params.alpha1, params.beta1);
    s.add_singularity(params.p + params.t, params.alpha2, params.beta2);
    if (params.alpha3 != 0.0) s.add_singularity(M_PI, params.alpha3, 0.0);
    s.add_singularity(2.0 * M_PI - params.p - params.t, params.alpha2, -params.beta2);
    s.add_singularity(2.0 * M_PI - params.p + params.t, params.alpha1, -params.beta1);
    s.validate();
    return s;
}

namespace {

// Adds the conjugate-reflected singularity pair of a one-sided factor
// |z - e^{i th}|^{2a} e^{2 i b Im ln(1 - e^{i(phi - th)})}.
void add_reflected_pair(FisherHartwigSymbol& s, double th, double a, cplx b) {
    double t = wrap_angle(th);
    bool on_axis = std::abs(std::sin(t)) < 1e-14;
    if (on_axis) {
        if (a < 0.0)
            throw std::domain_error(
                "sigma symbol: singularity at +-1 with negative alpha");
        s.add_singularity(t, 2.0 * a, 0.0);
        return;
    }
    s.add_singularity(t, a, b);
    s.add_singularity(2.0 * M_PI - t, a, -b);
}

// One-sided boundary factor of hat-sigma at z = e^{i phi} for a factor
// centred at th.
cplx hat_factor(double phi, double th, double a, cplx b) {
    double x = phi - th;
    double re = a == 0.0 ? 0.0 : 2.0 * a * re_log_one_minus_exp(x);
    return std::exp(cplx(re, 0.0) + 2.0 * b * cplx(0.0, im_log_one_minus_exp(x)));
}

} // namespace

SigmaSymbol make_sigma_symbol(int kind, double theta,
                              std::optional<double> theta2, double alpha,
                              cplx beta, int k) {
    if (kind < 1 || kind > 5)
        throw std::invalid_argument("sigma symbol kind must be 1..5");
    if (kind <= 3 && !theta2)
        throw std::invalid_argument("sigma symbol kinds 1-3 require theta2");
    if ((kind == 1 || kind == 2 || kind == 4) && k < 0)
        throw std::invalid_argument("sigma symbol: truncation order k >= 0 required");

    SigmaSymbol out;
    FisherHartwigSymbol& s = out.symbol;

    // smooth part: V_j = -(2/j) Re((alpha - beta) w_j), symmetrized in the
    // full symbol; the hat version carries the one-sided series.
    auto vj = [&](int j) -> double {
        cplx w = std::exp(cplx(0.0, j * theta));
        if (kind == 1) w += std::exp(cplx(0.0, j * *theta2));
        return -2.0 / j * ((alpha - beta) * w).real();
    };
    bool has_v = (kind == 1 || kind == 2 || kind == 4);
    if (has_v)
        for (int j = 1; j <= k; ++j) s.set_v(j, vj(j));

    if (kind == 2) add_reflected_pair(s, *theta2, alpha, beta);
    if (kind == 3) {
        add_reflected_pair(s, theta, alpha, beta);
        add_reflected_pair(s, *theta2, alpha, beta);
    }
    if (kind == 5) add_reflected_pair(s, theta, alpha, beta);

    for (int sgn : {+1, -1}) {
        double phi = sgn > 0 ? 0.0 : M_PI;
        cplx hat = 1.0;
        if (has_v) {
            cplx vh = 0.0;
            for (int j = 1; j <= k; ++j)
                vh += vj(j) * std::exp(cplx(0.0, j * phi));
            hat = std::exp(vh);
        }
        if (kind == 2 || kind == 3 || kind == 5) {
            double base = kind == 2 ? *theta2 : theta;
            hat *= hat_factor(phi, base, alpha, beta);
            if (kind == 3) hat *= hat_factor(phi, *theta2, alpha, beta);
        }
        (sgn > 0 ? out.hat_at_plus1 : out.hat_at_minus1) = hat;
    }
    return out;
}

WienerHopfData wiener_hopf_eval(const FisherHartwigSymbol& sym, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-10)
        throw std::invalid_argument("wiener_hopf_eval: |z| = 1 required");
    return {sym.b_plus_log(z), sym.b_minus_log(z), sym.v0()};
}

FisherHartwigSymbol symbol_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FisherHartwigSymbol s;
    s.general_v = j.value("general_v", false);
    if (j.contains("v_coeffs"))
        for (const auto& kv : j.at("v_coeffs"))
            s.v[kv.at(0).get<int>()] = cplx(kv.at(1).get<double>(), 0.0);
    if (j.contains("singularities"))
        for (const auto& sg : j.at("singularities"))
            s.add_singularity(sg.at("theta").get<double>(),
                              sg.at("alpha").get<double>(),
                              cplx(0.0, sg.value("beta_im", 0.0)));
    s.validate();
    return s;
}

std::string symbol_to_json(const FisherHartwigSymbol& sym) {
    nlohmann::json j;
    j["v_coeffs"] = nlohmann::json::array();
    for (const auto& [k, vk] : sym.v)
        j["v_coeffs"].push_back({k, vk.real()});
    j["singularities"] = nlohmann::json::array();
    for (const auto& sg : sym.sing)
        j["singularities"].push_back({{"theta", sg.theta},
                                      {"alpha", sg.alpha},
                                      {"beta_im", sg.beta.imag()}});
    if (sym.general_v) j["general_v"] = true;
    return j.dump(2);
}

} // namespace fhdet::symbols
