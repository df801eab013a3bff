#ifndef RFSQ_METROLOGY_HPP
#define RFSQ_METROLOGY_HPP

namespace rfsq {

// Mach-Zehnder figure of merit F = Var(N_-) / <N_+> for a test state in the
// first arm against a coherent state of power P_alpha = |alpha|^2 in the
// second. Coherent input gives F = 1.

struct SqueezedVacuumInput {
    double xi_magnitude = 0.0;  // |xi|
    double xi_phase = 0.0;      // phi_xi
    double coherent_power = 1.0;
    double coherent_phase = 0.0; // phi_alpha
    double path_parameter = 1.5707963267948966; // Theta, pi/2 at the optimum
};

// Resonance-fluorescence summary. frame_coherent_power is |<sigma>_V|^2 (the
// physical coherent power is B^2 * frame_coherent_power, kept factorized so
// the sideband correction enters exactly once). Theta is fixed at pi/2.
struct ResonanceFluorescenceInput {
    double total_power = 0.0;          // P
    double frame_coherent_power = 0.0; // |<sigma>_V|^2 <= 0.25
    double sideband_b = 1.0;           // B
    double dipole_phase = 0.0;         // phi
    double coherent_power = 1.0;
    double coherent_phase = 0.0;
};

double sv_power(double xi_magnitude); // P_xi = sinh^2|xi|

// <N_-> = cos(Theta) (P_xi - P_alpha)
double sv_mean_difference(const SqueezedVacuumInput& in);

// Full Theta- and phase-dependent variance; reduces to
// P_xi + P_alpha e^{-2|xi|} at Theta = pi/2, dphi = 2 phi_alpha - phi_xi = pi.
double sv_variance(const SqueezedVacuumInput& in);
double sv_variance_reduced(double xi_magnitude, double coherent_power);

struct SqueezedVacuumOptimum {
    double xi_magnitude; // (1/2) ln(1 + 2 sqrt(P_alpha))
    double figure_of_merit; // 1 / (1 + sqrt(P_alpha))
};
SqueezedVacuumOptimum sv_optimal(double coherent_power);

// Var(N_-) = P + P_alpha (1 - 4 B^2 P_coh_frame cos^2(phi_alpha - phi))
double rf_variance(const ResonanceFluorescenceInput& in);

double figure_of_merit_coherent();
double figure_of_merit(const SqueezedVacuumInput& in);
double figure_of_merit(const ResonanceFluorescenceInput& in);

// Flux matching for the comparison curves: |xi| with sinh^2|xi| = power.
double xi_for_power(double power);

} // namespace rfsq

#endif
