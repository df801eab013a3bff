#ifndef RFSQ_SWEEP_HPP
#define RFSQ_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rfsq/config.hpp"
#include "rfsq/observables.hpp"

namespace rfsq {

// One flat output row. Numeric fields are NaN when error_code is nonempty.
struct PointRecord {
    std::vector<double> axis_values;

    // inputs
    double rabi_ps = 0.0;
    double rabi_phase = 0.0;
    double detuning_mev = 0.0;
    double emission_rate_ps = 0.0;
    double dephasing_rate_ps = 0.0;
    double alpha_ps2 = 0.0;
    double cutoff_ps = 0.0;
    double temperature_k = 0.0;
    double s = 0.0;
    std::string model;

    // variational summary
    double omega_r_ps = 0.0;
    double delta_r_ps = 0.0;
    double coherence_b = 1.0;
    double eta_r_ps = 0.0;
    double free_energy_mev = 0.0;
    int var_iterations = 0;
    bool var_converged = false;

    // observables
    double p_total = 0.0;
    double p_coh = 0.0;
    double p_inc = 0.0;
    double min_variance = 0.0;
    double dipole_phase = 0.0;
    double bloch_length = 0.0;
    double bloch_polar = 0.0;
    double heisenberg_lhs = 0.0;
    double heisenberg_rhs = 0.0;
    double atomic_min_variance = 0.0;  // phonon-free closed form at the same point
    double thermal_min_variance = 0.0; // thermal-state closed form at the same point

    // metrology (Theta = pi/2, optimal phases, flux-matched comparison)
    double fom_rf = 0.0;
    double fom_sv_matched = 0.0;
    double fom_coherent = 1.0;

    // residuals
    double steady_residual = 0.0;
    double variational_residual = 0.0;

    std::string error_code; // empty on success
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<PointRecord> rows;
};

// Column names for a config (axis columns first; a versioned contract).
std::vector<std::string> csv_columns(const SweepConfig& cfg);

// Evaluate a single point. `axis_values` overrides the config's scalars for
// the named sweep axes (must match cfg.axes in length; may be empty).
PointRecord run_point(const SweepConfig& cfg,
                      const std::vector<double>& axis_values = {});

// Cartesian product of the axes, lexicographic in axis order (first axis
// slowest). Per-point failures land in error_code without aborting. The
// parallel map is deterministic: output depends only on the grid, never on
// the number of workers.
SweepTable run_sweep(const SweepConfig& cfg, int threads = 0);

void write_csv(const SweepTable& table, const SweepConfig& cfg, std::ostream& os);
void write_json(const SweepTable& table, const SweepConfig& cfg, std::ostream& os);

// Diagnostic JSON dump of the Liouvillian component matrices at one point.
std::string dump_liouvillian_json(const SweepConfig& cfg,
                                  const std::vector<double>& axis_values = {});

// The Supp. Fig. Wigner set: vacuum, weak resonant, and the two strongly
// driven off-resonant squeezed states; serialized with grid metadata.
std::string run_wigner_set(const SweepConfig& cfg, const WignerGrid& grid);
// CSV matrix of W for a single state (rows = x, columns = p).
std::string wigner_csv(const std::vector<double>& field, const WignerGrid& grid,
                       int precision);

// Figure presets. Known names: fig1a..fig1d, fig2a..fig2c, fig3b..fig3d,
// supp1, supp2, wigner. Throws ConfigError for unknown names.
SweepConfig preset(const std::string& name, int points_per_axis = 101);
std::vector<std::string> preset_names();

int resolve_threads(int flag_value, const char* env_value);

} // namespace rfsq

#endif
