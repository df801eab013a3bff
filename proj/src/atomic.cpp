#include "rfsq/atomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfsq {

AtomicPoint atomic_steady(double s, double d) {
    if (s < 0.0 || d < 0.0)
        throw std::invalid_argument("atomic_steady: s and d must be >= 0");
    AtomicPoint a;
    a.s = s;
    a.d = d;
    a.saturation = s / (1.0 + d);
    const double S = a.saturation;
    a.power_total = S / (2.0 * (S + 1.0));
    a.power_coherent = a.power_total / (S + 1.0);
    a.min_variance = S * (S - 1.0) / ((S + 1.0) * (S + 1.0));
    return a;
}

AtomicPoint atomic_steady_from_params(const SystemParams& sp) {
    sp.validate();
    const double r = sp.rabi_magnitude / sp.emission_rate;
    const double q = sp.detuning / sp.emission_rate;
    return atomic_steady(2.0 * r * r, 4.0 * q * q);
}

double bloch_min_variance(double length, double polar) {
    const double c = std::cos(polar);
    const double s = std::sin(polar);
    return 1.0 - length * std::abs(c) - length * length * s * s;
}

BlochMinimum generic_bloch_minimum(int grid_points) {
    BlochMinimum m;
    m.min_variance = -0.25;
    m.length = 1.0;
    m.polar_angles = {std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0};

    double best = 1.0, best_l = 0.0, best_t = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double l = static_cast<double>(i) / (grid_points - 1);
        for (int j = 0; j < grid_points; ++j) {
            const double t = std::numbers::pi * j / (grid_points - 1);
            const double v = bloch_min_variance(l, t);
            if (v < best) {
                best = v;
                best_l = l;
                best_t = t;
            }
        }
    }
    m.grid_minimum = best;
    m.grid_length = best_l;
    m.grid_polar = best_t;
    return m;
}

BlochVector thermal_bloch(double rabi_magnitude, double detuning, double hbeta,
                          double rabi_phase) {
    const double omega = std::abs(rabi_magnitude);
    const double eta = std::hypot(omega, detuning);
    if (eta == 0.0)
        throw std::invalid_argument("thermal_bloch: eta must be > 0");
    BlochVector b;
    b.length = std::tanh(0.5 * hbeta * eta);
    b.polar = std::atan2(omega, detuning);
    b.phase = rabi_phase;
    return b;
}

} // namespace rfsq
