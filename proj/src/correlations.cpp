#include "rfsq/correlations.hpp"

#include <cmath>
#include <numbers>

#include "rfsq/constants.hpp"
#include "rfsq/spectral.hpp"

namespace rfsq {

namespace {

// Quantize lambda to ~1e-12 relative (40-bit mantissa) for memo keys.
double quantize_rel(double x) {
    if (x == 0.0) return 0.0;
    int e;
    const double m = std::frexp(x, &e);
    const double scale = 1099511627776.0; // 2^40
    return std::ldexp(std::round(m * scale) / scale, e);
}

} // namespace

CorrelationContext::CorrelationContext(VariationalSolution vs, PhononParams pp,
                                       QuadratureSettings qs)
    : vs_(std::move(vs)), pp_(std::move(pp)), qs_(qs) {
    hbeta_ = pp_.hbar_beta();
    if (pp_.alpha == 0.0) {
        trivial_ = true;
        tau_max_ = 0.0;
        return;
    }

    const double small = 1e-6 * pp_.cutoff;
    auto envelopes_at = [&](double tau_resolve) {
        grid_ = FixedGrid::fourier(0.0, qs_.freq_cutoff_mult * pp_.cutoff,
                                   tau_resolve);
        const size_t n = grid_.nodes.size();
        kappa_cos_.assign(n, 0.0);
        kappa_sin_.assign(n, 0.0);
        zz_cos_.assign(n, 0.0);
        zz_sin_.assign(n, 0.0);
        yz_sin_.assign(n, 0.0);
        yz_cos_.assign(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            const double w = grid_.nodes[i];
            const double wt = grid_.weights[i];
            const double j = spectral_density(w, pp_);
            const double f = vs_.displacement_fraction(w, pp_);
            const double cth = thermal_coth(w, hbeta_, small);
            kappa_cos_[i] = wt * j * f * f / (w * w) * cth;
            kappa_sin_[i] = wt * j * f * f / (w * w);
            zz_cos_[i] = wt * j * (1.0 - f) * (1.0 - f) * cth;
            zz_sin_[i] = wt * j * (1.0 - f) * (1.0 - f);
            yz_sin_[i] = wt * j / w * f * (1.0 - f) * cth;
            yz_cos_[i] = wt * j / w * f * (1.0 - f);
        }
        nodes_ = Eigen::Map<const Eigen::ArrayXd>(grid_.nodes.data(), n);
    };

    // Grow the horizon until every correlation has decayed well below the
    // requested absolute tolerance (relative to its tau = 0 scale).
    double T = 30.0 / pp_.cutoff;
    const double ceiling = 1e4 / pp_.cutoff;
    for (;;) {
        envelopes_at(T);
        const double scale = 1.0 + std::abs(eval_grid(kappa_cos_, kappa_sin_, 0.0)) +
                             std::abs(eval_grid(zz_cos_, zz_sin_, 0.0));
        double tail = 0.0;
        for (double frac : {1.0, 0.9, 0.8}) {
            tail = std::max(tail, std::abs(eval_grid(kappa_cos_, kappa_sin_, frac * T)));
            tail = std::max(tail, std::abs(eval_grid(zz_cos_, zz_sin_, frac * T)));
            tail = std::max(tail, std::abs(eval_grid(yz_cos_, yz_sin_, frac * T)));
        }
        if (tail < 1e-13 * scale || T >= ceiling) break;
        T = std::min(2.0 * T, ceiling);
    }
    tau_max_ = T;

    // All three tables share the trig vectors at each Chebyshev node, so the
    // samples are generated jointly and the node count doubles until every
    // table resolves.
    const auto env = [](const std::vector<double>& v) {
        return Eigen::Map<const Eigen::ArrayXd>(v.data(), v.size());
    };
    const double b = vs_.coherence_b;
    for (int n_deg = 256;; n_deg *= 2) {
        std::vector<complexd> f_kappa(n_deg + 1), f_zz(n_deg + 1), f_yz(n_deg + 1);
        for (int k = 0; k <= n_deg; ++k) {
            const double t = 0.5 * tau_max_ *
                             (1.0 + std::cos(k * std::numbers::pi / n_deg));
            const Eigen::ArrayXd phase = nodes_ * t;
            const Eigen::ArrayXd c = phase.cos();
            const Eigen::ArrayXd s = phase.sin();
            f_kappa[k] = complexd((env(kappa_cos_) * c).sum(),
                                  -(env(kappa_sin_) * s).sum());
            f_zz[k] = complexd((env(zz_cos_) * c).sum(), -(env(zz_sin_) * s).sum());
            f_yz[k] = -2.0 * b *
                      complexd((env(yz_sin_) * s).sum(), (env(yz_cos_) * c).sum());
        }
        kappa_tab_ = ChebyshevSeries::from_samples(f_kappa, 0.0, tau_max_);
        zz_tab_ = ChebyshevSeries::from_samples(f_zz, 0.0, tau_max_);
        yz_tab_ = ChebyshevSeries::from_samples(f_yz, 0.0, tau_max_);
        const double worst = std::max({kappa_tab_.tail_ratio(), zz_tab_.tail_ratio(),
                                       yz_tab_.tail_ratio()});
        if (worst <= 1e-11 || n_deg >= 4096) break;
    }
}

complexd CorrelationContext::eval_grid(const std::vector<double>& cos_env,
                                       const std::vector<double>& sin_env,
                                       double tau) const {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < grid_.nodes.size(); ++i) {
        const double wt_tau = grid_.nodes[i] * tau;
        re += cos_env[i] * std::cos(wt_tau);
        im -= sin_env[i] * std::sin(wt_tau);
    }
    return {re, im};
}

complexd CorrelationContext::kappa(double tau) const {
    if (trivial_) return 0.0;
    if (tau > tau_max_) return 0.0;
    return kappa_tab_(tau);
}

complexd CorrelationContext::lambda_xx(double tau) const {
    if (trivial_) return 0.0;
    const double b2 = vs_.coherence_b * vs_.coherence_b;
    const complexd k = kappa(tau);
    return 0.5 * b2 * (std::exp(k) + std::exp(-k) - 2.0);
}

complexd CorrelationContext::lambda_yy(double tau) const {
    if (trivial_) return 0.0;
    const double b2 = vs_.coherence_b * vs_.coherence_b;
    const complexd k = kappa(tau);
    return 0.5 * b2 * (std::exp(k) - std::exp(-k));
}

complexd CorrelationContext::lambda_zz(double tau) const {
    if (trivial_) return 0.0;
    if (tau > tau_max_) return 0.0;
    return zz_tab_(tau);
}

complexd CorrelationContext::lambda_yz(double tau) const {
    if (trivial_) return 0.0;
    if (tau > tau_max_) return 0.0;
    return yz_tab_(tau);
}

complexd CorrelationContext::sideband_g(double tau) const {
    const double b2 = vs_.coherence_b * vs_.coherence_b;
    if (trivial_) return 1.0;
    if (tau > tau_max_) return b2;
    return b2 * std::exp(std::conj(kappa_tab_(tau)));
}

complexd CorrelationContext::lambda_by_kind(ResponseKind kind, double tau) const {
    switch (kind) {
        case ResponseKind::xx: return lambda_xx(tau);
        case ResponseKind::yy: return lambda_yy(tau);
        case ResponseKind::zz: return lambda_zz(tau);
        case ResponseKind::yz: return lambda_yz(tau);
    }
    return 0.0;
}

complexd CorrelationContext::response_coefficient(ResponseKind kind,
                                                  double lambda) const {
    if (trivial_) return 0.0;
    const std::pair<int, double> key{static_cast<int>(kind), quantize_rel(lambda)};
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    QuadratureSettings hs = qs_;
    hs.tau_initial = tau_max_;
    hs.tau_ceiling = std::max(1e4 / pp_.cutoff, 4.0 * tau_max_);
    const complexd value = half_fourier(
        [this, kind](double t) { return lambda_by_kind(kind, t); }, key.second, hs);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto [it, inserted] = memo_.emplace(key, value);
    (void)inserted;
    return it->second;
}

complexd CorrelationContext::kappa_direct(double tau) const {
    if (trivial_) return 0.0;
    const double small = 1e-6 * pp_.cutoff;
    const ComplexIntegrand f = [&](double w) -> complexd {
        if (w <= 0.0) return 0.0;
        const double j = spectral_density(w, pp_);
        const double fr = vs_.displacement_fraction(w, pp_);
        const double env = j * fr * fr / (w * w);
        return {env * thermal_coth(w, hbeta_, small) * std::cos(w * tau),
                -env * std::sin(w * tau)};
    };
    return integrate_frequency(f, pp_.cutoff, qs_);
}

complexd CorrelationContext::lambda_zz_direct(double tau) const {
    if (trivial_) return 0.0;
    const double small = 1e-6 * pp_.cutoff;
    const ComplexIntegrand f = [&](double w) -> complexd {
        if (w <= 0.0) return 0.0;
        const double j = spectral_density(w, pp_);
        const double fr = vs_.displacement_fraction(w, pp_);
        const double env = j * (1.0 - fr) * (1.0 - fr);
        return {env * thermal_coth(w, hbeta_, small) * std::cos(w * tau),
                -env * std::sin(w * tau)};
    };
    return integrate_frequency(f, pp_.cutoff, qs_);
}

complexd CorrelationContext::lambda_yz_direct(double tau) const {
    if (trivial_) return 0.0;
    const double small = 1e-6 * pp_.cutoff;
    const ComplexIntegrand f = [&](double w) -> complexd {
        if (w <= 0.0) return 0.0;
        const double j = spectral_density(w, pp_);
        const double fr = vs_.displacement_fraction(w, pp_);
        const double env = j / w * fr * (1.0 - fr);
        return {env * thermal_coth(w, hbeta_, small) * std::sin(w * tau),
                env * std::cos(w * tau)};
    };
    return -2.0 * vs_.coherence_b * integrate_frequency(f, pp_.cutoff, qs_);
}

} // namespace rfsq
