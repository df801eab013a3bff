#include "rfsq/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsq {

double sv_power(double xi_magnitude) {
    const double s = std::sinh(xi_magnitude);
    return s * s;
}

double sv_mean_difference(const SqueezedVacuumInput& in) {
    return std::cos(in.path_parameter) * (sv_power(in.xi_magnitude) - in.coherent_power);
}

double sv_variance(const SqueezedVacuumInput& in) {
    const double p_xi = sv_power(in.xi_magnitude);
    const double p_a = in.coherent_power;
    const double c2t = std::cos(2.0 * in.path_parameter);
    const double dphi = 2.0 * in.coherent_phase - in.xi_phase;
    return p_a + p_xi * (p_xi + 1.5) + c2t * p_xi * (p_xi + 0.5) +
           (1.0 - c2t) * p_a *
               (p_xi + std::sqrt(p_xi * (p_xi + 1.0)) * std::cos(dphi));
}

double sv_variance_reduced(double xi_magnitude, double coherent_power) {
    return sv_power(xi_magnitude) + coherent_power * std::exp(-2.0 * xi_magnitude);
}

SqueezedVacuumOptimum sv_optimal(double coherent_power) {
    if (!(coherent_power > 0.0))
        throw std::invalid_argument("sv_optimal: coherent power must be > 0");
    const double root = std::sqrt(coherent_power);
    return {0.5 * std::log(1.0 + 2.0 * root), 1.0 / (1.0 + root)};
}

double rf_variance(const ResonanceFluorescenceInput& in) {
    if (in.frame_coherent_power > 0.25 + 1e-12)
        throw std::invalid_argument("rf_variance: coherent power above 1/4");
    const double b2 = in.sideband_b * in.sideband_b;
    const double c = std::cos(in.coherent_phase - in.dipole_phase);
    return in.total_power +
           in.coherent_power * (1.0 - 4.0 * b2 * in.frame_coherent_power * c * c);
}

double figure_of_merit_coherent() { return 1.0; }

double figure_of_merit(const SqueezedVacuumInput& in) {
    const double flux = sv_power(in.xi_magnitude) + in.coherent_power;
    if (!(flux > 0.0))
        throw std::invalid_argument("figure_of_merit: zero total flux");
    return sv_variance(in) / flux;
}

double figure_of_merit(const ResonanceFluorescenceInput& in) {
    const double flux = in.total_power + in.coherent_power;
    if (!(flux > 0.0))
        throw std::invalid_argument("figure_of_merit: zero total flux");
    return rf_variance(in) / flux;
}

double xi_for_power(double power) {
    if (power < 0.0)
        throw std::invalid_argument("xi_for_power: power must be >= 0");
    return std::asinh(std::sqrt(power));
}

} // namespace rfsq
