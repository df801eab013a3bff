#ifndef RFSQ_CONSTANTS_HPP
#define RFSQ_CONSTANTS_HPP

#include <cmath>

namespace rfsq {

// Internal unit system: angular frequencies and rates in ps^-1, times in ps,
// hbar = 1. Energies (meV) and temperatures (K) appear only at the I/O
// boundary through the conversions below.
inline constexpr double hbar_mev_ps = 0.6582119569;     // meV ps
inline constexpr double kb_mev_per_k = 0.08617333262;   // meV / K

inline double energy_to_angular_frequency(double energy_mev) {
    return energy_mev / hbar_mev_ps;
}

inline double angular_frequency_to_energy(double omega_per_ps) {
    return omega_per_ps * hbar_mev_ps;
}

// hbar*beta in ps for temperature in kelvin. Thermal factors are built from
// coth(hbar_beta(T) * omega / 2) with omega in ps^-1.
inline double hbar_beta(double temperature_k) {
    return hbar_mev_ps / (kb_mev_per_k * temperature_k);
}

// coth(hbar beta omega / 2) with the small-omega series
// coth(x) -> 2/(hbar beta omega) + hbar beta omega / 6 below the threshold,
// which avoids cancellation in the omega -> 0 limits of the bath integrands.
inline double thermal_coth(double omega, double hbeta, double omega_threshold) {
    if (omega < omega_threshold) {
        return 2.0 / (hbeta * omega) + hbeta * omega / 6.0;
    }
    return 1.0 / std::tanh(0.5 * hbeta * omega);
}

} // namespace rfsq

#endif
