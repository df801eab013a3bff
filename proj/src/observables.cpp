#include "rfsq/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfsq {

ObservableSet observables(const DensityOperator2& rho_v, double coherence_b) {
    if (!(coherence_b > 0.0) || coherence_b > 1.0 + 1e-12)
        throw std::invalid_argument("observables: B must lie in (0, 1]");
    const double b2 = coherence_b * coherence_b;
    const complexd sig_v = rho_v.dipole_expectation();
    const double coh_v = std::norm(sig_v);

    ObservableSet o;
    o.power_total = rho_v.excited_population();
    o.power_coherent = b2 * coh_v;
    o.power_incoherent = o.power_total - o.power_coherent;
    o.min_variance = 1.0 - std::abs(2.0 * o.power_total - 1.0) - 4.0 * b2 * coh_v;
    o.dipole_phase = (coh_v > 0.0) ? -std::arg(sig_v) : 0.0;
    if (o.dipole_phase < 0.0) o.dipole_phase += 2.0 * std::numbers::pi;

    const BlochVector b = bloch_from_density(rho_v);
    o.bloch_length = b.length;
    o.bloch_polar = b.polar;

    // DX(phi)^2 = 1 - <X(phi)>^2 at the minimum-variance phase; the
    // orthogonal quadrature has <X> = 0.
    const double x2 = 4.0 * b2 * coh_v;
    o.heisenberg_lhs = std::sqrt(std::max(0.0, 1.0 - x2));
    o.heisenberg_rhs = std::abs(2.0 * o.power_total - 1.0);
    return o;
}

ObservableSet thermal_prediction(double rabi_magnitude, double detuning,
                                 double hbeta, double coherence_b,
                                 bool beta_infinite) {
    const double omega = std::abs(rabi_magnitude);
    const double eta = std::hypot(omega, detuning);
    if (eta == 0.0)
        throw std::invalid_argument("thermal_prediction: eta must be > 0");
    const double l_th =
        beta_infinite ? 1.0 : std::tanh(0.5 * hbeta * eta);
    const double b2 = coherence_b * coherence_b;

    ObservableSet o;
    o.bloch_length = l_th;
    o.bloch_polar = std::atan2(omega, detuning);
    const double cos_t = detuning / eta;
    const double sin_t = omega / eta;
    o.power_total = 0.5 * (1.0 + l_th * cos_t);
    o.power_coherent = 0.25 * b2 * l_th * l_th * sin_t * sin_t;
    o.power_incoherent = o.power_total - o.power_coherent;
    o.min_variance = 1.0 - std::abs(detuning) / eta * l_th -
                     b2 * (omega * omega) / (eta * eta) * l_th * l_th;
    o.dipole_phase = 0.0;
    o.heisenberg_lhs = std::sqrt(std::max(0.0, 1.0 - 4.0 * o.power_coherent));
    o.heisenberg_rhs = std::abs(2.0 * o.power_total - 1.0);
    return o;
}

double wigner_point(const DensityOperator2& rho, double x, double p) {
    const double r2 = x * x + p * p;
    const complexd rho_eg = rho(1, 0);
    // Re[(x - i p) rho_eg] = x Re(rho_eg) + p Im(rho_eg)
    const double body = rho(0, 0).real() + rho(1, 1).real() * (2.0 * r2 - 1.0) +
                        2.0 * std::numbers::sqrt2 *
                            (x * rho_eg.real() + p * rho_eg.imag());
    return body * std::exp(-r2) / std::numbers::pi;
}

std::vector<double> wigner(const DensityOperator2& rho, const WignerGrid& grid) {
    if (grid.nx < 2 || grid.np < 2)
        throw std::invalid_argument("wigner: grid must have >= 2 points per axis");
    std::vector<double> field(static_cast<size_t>(grid.nx) * grid.np);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (int j = 0; j < grid.np; ++j) {
            field[static_cast<size_t>(i) * grid.np + j] = wigner_point(rho, x, grid.p(j));
        }
    }
    return field;
}

} // namespace rfsq
