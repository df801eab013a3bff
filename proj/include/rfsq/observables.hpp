#ifndef RFSQ_OBSERVABLES_HPP
#define RFSQ_OBSERVABLES_HPP

#include <vector>

#include "rfsq/types.hpp"

namespace rfsq {

struct ObservableSet {
    double power_total = 0.0;      // P = <n>, in [0, 1]
    double power_coherent = 0.0;   // P_coh = B^2 |<sigma>_V|^2, in [0, 0.25]
    double power_incoherent = 0.0; // P - P_coh
    double min_variance = 0.0;     // ::DX(phi)^2:: = 1 - |2P-1| - 4 B^2 |<sigma>_V|^2
    double dipole_phase = 0.0;     // phi with <sigma> = |<sigma>| e^{-i phi}
    double bloch_length = 0.0;
    double bloch_polar = 0.0;
    double heisenberg_lhs = 0.0;   // DX(phi) DX(phi + pi/2)
    double heisenberg_rhs = 0.0;   // |<2n - 1>|
    static constexpr double g2_zero = 0.0; // sigma^2 = 0 identically
};

// Map a steady state (variational frame) plus the coherence factor B to the
// optical observables. B multiplies only the coherent term; the incoherent
// sideband weight stays inside P - P_coh.
ObservableSet observables(const DensityOperator2& rho_v, double coherence_b);

// Thermal-state closed forms: l_th = tanh(hbar beta eta / 2),
// theta = atan2(|Omega|, delta) on [0, pi],
// variance = 1 - (|delta|/eta) l_th - B^2 (Omega/eta)^2 l_th^2.
// beta_infinite selects the hbar*beta*eta -> infinity limit (l_th = 1).
ObservableSet thermal_prediction(double rabi_magnitude, double detuning,
                                 double hbeta, double coherence_b = 1.0,
                                 bool beta_infinite = false);

struct WignerGrid {
    double x_min = -4.0, x_max = 4.0;
    double p_min = -4.0, p_max = 4.0;
    int nx = 201, np = 201;
    double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
    double p(int j) const { return p_min + (p_max - p_min) * j / (np - 1); }
};

// W(x,p) of the emitted field with |g> -> |0>, |e> -> |1>:
// W = pi^-1 e^{-x^2-p^2} [rho_gg + rho_ee (2(x^2+p^2) - 1)
//                         + 2 sqrt(2) Re((x - i p) rho_eg)].
// Row-major field: value(ix, ip) at index ix * np + ip.
std::vector<double> wigner(const DensityOperator2& rho, const WignerGrid& grid);
double wigner_point(const DensityOperator2& rho, double x, double p);

} // namespace rfsq

#endif
