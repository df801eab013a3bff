#ifndef RFSQ_ATOMIC_HPP
#define RFSQ_ATOMIC_HPP

#include <array>

#include "rfsq/types.hpp"

namespace rfsq {

// Phonon-free closed forms: everything follows the saturation parameter
// S = s / (1 + d) with s = 2 (Omega/Gamma)^2 and d = 4 (delta/Gamma)^2.
struct AtomicPoint {
    double s = 0.0;
    double d = 0.0;
    double saturation = 0.0;     // S
    double power_total = 0.0;    // P = S / (2(S+1))
    double power_coherent = 0.0; // P_coh = P / (S+1)
    double min_variance = 0.0;   // S(S-1)/(S+1)^2
};

AtomicPoint atomic_steady(double s, double d);
AtomicPoint atomic_steady_from_params(const SystemParams& sp);

// Minimum of 1 - |2P-1| - 4 P_coh over all two-level states: l = 1,
// theta in {pi/3, 2pi/3}, variance -1/4. grid_minimum is the brute-force
// check over an (l, theta) grid.
struct BlochMinimum {
    double min_variance = -0.25;
    double length = 1.0;
    std::array<double, 2> polar_angles{};
    double grid_minimum = 0.0;   // from the verification sweep
    double grid_length = 0.0;
    double grid_polar = 0.0;
};

BlochMinimum generic_bloch_minimum(int grid_points = 200);

// Thermal state of the driven Hamiltonian: l = tanh(hbar beta eta / 2),
// theta = atan2(|Omega|, delta) mapped to [0, pi], phi = arg(Omega).
BlochVector thermal_bloch(double rabi_magnitude, double detuning, double hbeta,
                          double rabi_phase = 0.0);

// Normally ordered minimum variance of an arbitrary Bloch state,
// 1 - l|cos theta| - l^2 sin^2 theta.
double bloch_min_variance(double length, double polar);

} // namespace rfsq

#endif
