#include "rfsq/sweep.hpp"

namespace rfsq {

namespace {

// Shared defaults: alpha = 0.027 ps^2, omega_c = 2.2 ps^-1, T = 4 K,
// 1/Gamma = 700 ps, |alpha_coh|^2 = 1.
SweepConfig base_config() {
    SweepConfig cfg;
    cfg.model = ModelKind::full_phonon;
    cfg.phonons = PhononParams{0.027, 2.2, 4.0};
    cfg.emission_rate_ps = 1.0 / 700.0;
    cfg.metrology_coherent_power = 1.0;
    return cfg;
}

AxisSpec axis(const std::string& parameter, const std::string& scale, double min,
              double max, int count) {
    AxisSpec ax;
    ax.parameter = parameter;
    ax.scale = scale;
    ax.min = min;
    ax.max = max;
    ax.count = count;
    return ax;
}

// Off-resonant driving range from the captions: s in [10^5.5, 10^7.5].
AxisSpec strong_s_axis(int n) {
    return axis("s", "log10", 3.16227766016838e5, 3.16227766016838e7, n);
}

// Resonant panels cover the weak-driving squeezing dip around s = 1/3.
AxisSpec weak_s_axis(int n) { return axis("s", "log10", 1e-2, 1e2, n); }

} // namespace

SweepConfig preset(const std::string& name, int points_per_axis) {
    const int n = points_per_axis;
    SweepConfig cfg = base_config();

    // The detuning axis range is not quoted numerically for the power maps;
    // [-1.5, +1.5] meV brackets the +-1 meV sections used elsewhere.
    auto detuning_axis = [&](int count) {
        return axis("detuning_mev", "linear", -1.5, 1.5, count);
    };

    if (name == "fig1a" || name == "fig1c") {
        // Power maps with phonons; a) reads p_total, c) reads p_coh.
        cfg.axes = {detuning_axis(n), axis("s", "log10", 1e-2, 3.16227766016838e7, n)};
        return cfg;
    }
    if (name == "fig1b" || name == "fig1d") {
        cfg.model = ModelKind::atomic;
        cfg.axes = {detuning_axis(n), axis("s", "log10", 1e-2, 3.16227766016838e7, n)};
        return cfg;
    }
    if (name == "fig2a") {
        cfg.detuning_mev = 0.0;
        cfg.axes = {weak_s_axis(n)};
        return cfg;
    }
    if (name == "fig2b") {
        cfg.detuning_mev = 1.0;
        cfg.axes = {strong_s_axis(n)};
        return cfg;
    }
    if (name == "fig2c") {
        cfg.detuning_mev = -1.0;
        cfg.axes = {strong_s_axis(n)};
        return cfg;
    }
    if (name == "fig3b") {
        cfg.detuning_mev = 0.0;
        cfg.axes = {weak_s_axis(n)};
        return cfg;
    }
    if (name == "fig3c") {
        cfg.detuning_mev = 1.0;
        cfg.axes = {strong_s_axis(n)};
        return cfg;
    }
    if (name == "fig3d") {
        cfg.detuning_mev = -1.0;
        cfg.axes = {strong_s_axis(n)};
        return cfg;
    }
    if (name == "supp1") {
        // Resonant scan from below to far above saturation.
        cfg.detuning_mev = 0.0;
        cfg.axes = {axis("s", "log10", 1e-2, 3.16227766016838e7, n)};
        return cfg;
    }
    if (name == "supp2") {
        // Pure dephasing at gamma = Gamma, on resonance and at +1 meV.
        cfg.dephasing_rate_ps = cfg.emission_rate_ps;
        cfg.axes = {axis("detuning_mev", "linear", 0.0, 1.0, 2),
                    axis("s", "log10", 1e-2, 3.16227766016838e7, n)};
        return cfg;
    }
    if (name == "wigner") {
        cfg.output_format = OutputFormat::json;
        return cfg;
    }
    throw ConfigError("/preset", "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "fig2c",
            "fig3b", "fig3c", "fig3d", "supp1", "supp2", "wigner"};
}

} // namespace rfsq
