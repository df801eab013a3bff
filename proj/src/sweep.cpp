#include "rfsq/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "rfsq/atomic.hpp"
#include "rfsq/constants.hpp"
#include "rfsq/correlations.hpp"
#include "rfsq/master_equation.hpp"
#include "rfsq/metrology.hpp"

namespace rfsq {

using nlohmann::json;

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void apply_axis(SweepConfig& cfg, const std::string& parameter, double value) {
    if (parameter == "s") {
        cfg.drive_given_as_s = true;
        cfg.drive_s = value;
    } else if (parameter == "rabi_mev") {
        cfg.drive_given_as_s = false;
        cfg.rabi_ps = energy_to_angular_frequency(value);
    } else if (parameter == "detuning_mev") {
        cfg.detuning_mev = value;
    } else if (parameter == "alpha_ps2") {
        cfg.phonons.alpha = value;
    } else if (parameter == "cutoff_ps") {
        cfg.phonons.cutoff = value;
    } else if (parameter == "temperature_k") {
        cfg.phonons.temperature = value;
    } else {
        throw ConfigError("/sweep/axes", "unknown parameter '" + parameter + "'");
    }
}

std::string classify_error(const std::exception& e) {
    if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature_error";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "variational_no_convergence";
    if (dynamic_cast<const DegenerateLiouvillianError*>(&e)) return "degenerate_liouvillian";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid_input";
    return "runtime_error";
}

void blank_numeric_fields(PointRecord& r) {
    r.omega_r_ps = r.delta_r_ps = r.eta_r_ps = r.free_energy_mev = nan_value;
    r.coherence_b = nan_value;
    r.p_total = r.p_coh = r.p_inc = r.min_variance = nan_value;
    r.dipole_phase = r.bloch_length = r.bloch_polar = nan_value;
    r.heisenberg_lhs = r.heisenberg_rhs = nan_value;
    r.fom_rf = r.fom_sv_matched = nan_value;
    r.steady_residual = r.variational_residual = nan_value;
}

SystemParams system_from(const SweepConfig& cfg, double detuning_bare_ps) {
    SystemParams sp;
    sp.rabi_magnitude = cfg.drive_given_as_s
                            ? SystemParams::rabi_from_s(cfg.drive_s, cfg.emission_rate_ps)
                            : cfg.rabi_ps;
    sp.rabi_phase = cfg.drive_phase;
    sp.detuning = detuning_bare_ps;
    sp.emission_rate = cfg.emission_rate_ps;
    sp.pure_dephasing_rate = cfg.dephasing_rate_ps;
    return sp;
}

struct PipelineResult {
    VariationalSolution vs;
    DensityOperator2 rho;
    double steady_residual = 0.0;
};

// Full-phonon pipeline for one parameter point: variational solve,
// dissipator assembly (drive rotated real), null-space steady state, then
// the drive phase is restored on the state.
PipelineResult solve_full(const SweepConfig& cfg, const SystemParams& sp,
                          const PhononParams& pp) {
    VariationalOptions vopt;
    vopt.frame = cfg.frame;
    vopt.delta_r_form = cfg.delta_r_form;

    SystemParams rotated = sp;
    rotated.rabi_phase = 0.0;
    PipelineResult out;
    out.vs = solve_variational(rotated, pp, vopt);
    const CorrelationContext ctx(out.vs, pp);
    const Liouvillian L = assemble_liouvillian(out.vs, rotated, ctx);
    SteadyStateResult ss = steady_state(L);
    out.rho = apply_drive_phase(ss.state, sp.rabi_phase);
    out.steady_residual = ss.residual;
    return out;
}

} // namespace

std::vector<std::string> csv_columns(const SweepConfig& cfg) {
    std::vector<std::string> cols;
    for (const AxisSpec& ax : cfg.axes) cols.push_back("axis_" + ax.parameter);
    const char* fixed[] = {
        "rabi_ps", "rabi_phase", "detuning_mev", "emission_rate_ps",
        "dephasing_rate_ps", "alpha_ps2", "cutoff_ps", "temperature_k", "s",
        "model",
        "omega_r_ps", "delta_r_ps", "coherence_b", "eta_r_ps", "free_energy_mev",
        "var_iterations", "var_converged",
        "p_total", "p_coh", "p_inc", "min_variance", "dipole_phase",
        "bloch_length", "bloch_polar", "heisenberg_lhs", "heisenberg_rhs",
        "atomic_min_variance", "thermal_min_variance",
        "fom_rf", "fom_sv_matched", "fom_coherent",
        "steady_residual", "variational_residual", "error_code"};
    for (const char* c : fixed) cols.emplace_back(c);
    return cols;
}

PointRecord run_point(const SweepConfig& base, const std::vector<double>& axis_values) {
    SweepConfig cfg = base;
    if (!axis_values.empty()) {
        if (axis_values.size() != cfg.axes.size())
            throw ConfigError("/sweep/axes", "axis value count mismatch");
        for (size_t i = 0; i < axis_values.size(); ++i)
            apply_axis(cfg, cfg.axes[i].parameter, axis_values[i]);
    }

    PointRecord r;
    r.axis_values = axis_values;

    const bool phonons_on =
        cfg.model == ModelKind::full_phonon && cfg.phonons_enabled &&
        cfg.phonons.alpha > 0.0;
    PhononParams pp = cfg.phonons;
    if (!phonons_on) pp.alpha = 0.0;

    const double detuning_input_ps = energy_to_angular_frequency(cfg.detuning_mev);

    r.rabi_phase = cfg.drive_phase;
    r.detuning_mev = cfg.detuning_mev;
    r.emission_rate_ps = cfg.emission_rate_ps;
    r.dephasing_rate_ps = cfg.dephasing_rate_ps;
    r.alpha_ps2 = pp.alpha;
    r.cutoff_ps = pp.cutoff;
    r.temperature_k = pp.temperature;
    switch (cfg.model) {
        case ModelKind::full_phonon: r.model = "full_phonon"; break;
        case ModelKind::atomic: r.model = "atomic"; break;
        case ModelKind::thermal_approx: r.model = "thermal_approx"; break;
    }

    try {
        // Detuning convention: the input detuning is measured from the
        // polaron-shifted line by default; the bare Hamiltonian detuning
        // adds back the full shift int J/w dw.
        double detuning_bare = detuning_input_ps;
        if (phonons_on && cfg.detuning_convention == DetuningConvention::shifted)
            detuning_bare += polaron_shift(pp, QuadratureSettings{});

        const SystemParams sp = system_from(cfg, detuning_bare);
        r.rabi_ps = sp.rabi_magnitude;
        r.s = sp.scaled_driving_s();

        // Reference closed forms at the input detuning.
        {
            const double q = detuning_input_ps / sp.emission_rate;
            r.atomic_min_variance = atomic_steady(r.s, 4.0 * q * q).min_variance;
            const double eta = std::hypot(sp.rabi_magnitude, detuning_input_ps);
            r.thermal_min_variance =
                (eta > 0.0)
                    ? thermal_prediction(sp.rabi_magnitude, detuning_input_ps,
                                         pp.hbar_beta())
                          .min_variance
                    : nan_value;
        }

        ObservableSet obs;
        double b_eff = 1.0;
        double frame_coh = 0.0;
        if (cfg.model == ModelKind::thermal_approx) {
            obs = thermal_prediction(sp.rabi_magnitude, detuning_input_ps,
                                     pp.hbar_beta());
            r.omega_r_ps = sp.rabi_magnitude;
            r.delta_r_ps = detuning_input_ps;
            r.coherence_b = 1.0;
            r.eta_r_ps = std::hypot(r.omega_r_ps, r.delta_r_ps);
            r.free_energy_mev = 0.0;
            r.var_iterations = 0;
            r.var_converged = true;
            frame_coh = obs.power_coherent;
        } else {
            const PipelineResult pr = solve_full(cfg, sp, pp);
            b_eff = cfg.include_sideband_b2 ? pr.vs.coherence_b : 1.0;
            obs = observables(pr.rho, b_eff);
            frame_coh = std::norm(pr.rho.dipole_expectation());
            r.omega_r_ps = pr.vs.omega_r;
            r.delta_r_ps = pr.vs.delta_r;
            r.coherence_b = pr.vs.coherence_b;
            r.eta_r_ps = pr.vs.eta_r;
            r.free_energy_mev = pr.vs.free_energy_mev;
            r.var_iterations = pr.vs.iterations;
            r.var_converged = pr.vs.converged;
            r.steady_residual = pr.steady_residual;
            r.variational_residual = pr.vs.residual;
        }

        r.p_total = obs.power_total;
        r.p_coh = obs.power_coherent;
        r.p_inc = obs.power_incoherent;
        r.min_variance = obs.min_variance;
        r.dipole_phase = obs.dipole_phase;
        r.bloch_length = obs.bloch_length;
        r.bloch_polar = obs.bloch_polar;
        r.heisenberg_lhs = obs.heisenberg_lhs;
        r.heisenberg_rhs = obs.heisenberg_rhs;

        // Metrology at Theta = pi/2 with optimal relative phases.
        ResonanceFluorescenceInput rf;
        rf.total_power = obs.power_total;
        rf.frame_coherent_power = frame_coh;
        rf.sideband_b = b_eff;
        rf.dipole_phase = obs.dipole_phase;
        rf.coherent_power = cfg.metrology_coherent_power;
        rf.coherent_phase = obs.dipole_phase;
        r.fom_rf = figure_of_merit(rf);
        r.fom_sv_matched =
            sv_variance_reduced(xi_for_power(obs.power_total),
                                cfg.metrology_coherent_power) /
            (obs.power_total + cfg.metrology_coherent_power);
        r.fom_coherent = figure_of_merit_coherent();
    } catch (const std::exception& e) {
        r.error_code = classify_error(e);
        blank_numeric_fields(r);
    }
    return r;
}

SweepTable run_sweep(const SweepConfig& cfg, int threads) {
    cfg.validate();
    if (cfg.axes.empty())
        throw ConfigError("/sweep/axes", "a sweep needs at least one axis");

    std::vector<std::vector<double>> axis_values;
    size_t total = 1;
    for (const AxisSpec& ax : cfg.axes) {
        axis_values.push_back(ax.values());
        total *= axis_values.back().size();
    }

    SweepTable table;
    table.columns = csv_columns(cfg);
    table.rows.resize(total);

    const int n_workers = std::max(1, threads == 0
                                          ? static_cast<int>(std::thread::hardware_concurrency())
                                          : threads);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            // Lexicographic decomposition, first axis slowest.
            std::vector<double> values(cfg.axes.size());
            size_t rem = idx;
            for (size_t a = cfg.axes.size(); a-- > 0;) {
                const size_t n = axis_values[a].size();
                values[a] = axis_values[a][rem % n];
                rem /= n;
            }
            table.rows[idx] = run_point(cfg, values);
        }
    };
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return table;
}

namespace {

std::string format_double(double v, int precision) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

void append_fields(std::vector<std::string>& out, const PointRecord& r, int prec) {
    auto d = [&](double v) { out.push_back(format_double(v, prec)); };
    for (double v : r.axis_values) d(v);
    d(r.rabi_ps);
    d(r.rabi_phase);
    d(r.detuning_mev);
    d(r.emission_rate_ps);
    d(r.dephasing_rate_ps);
    d(r.alpha_ps2);
    d(r.cutoff_ps);
    d(r.temperature_k);
    d(r.s);
    out.push_back(r.model);
    d(r.omega_r_ps);
    d(r.delta_r_ps);
    d(r.coherence_b);
    d(r.eta_r_ps);
    d(r.free_energy_mev);
    out.push_back(std::to_string(r.var_iterations));
    out.push_back(r.var_converged ? "1" : "0");
    d(r.p_total);
    d(r.p_coh);
    d(r.p_inc);
    d(r.min_variance);
    d(r.dipole_phase);
    d(r.bloch_length);
    d(r.bloch_polar);
    d(r.heisenberg_lhs);
    d(r.heisenberg_rhs);
    d(r.atomic_min_variance);
    d(r.thermal_min_variance);
    d(r.fom_rf);
    d(r.fom_sv_matched);
    d(r.fom_coherent);
    d(r.steady_residual);
    d(r.variational_residual);
    out.push_back(r.error_code);
}

} // namespace

void write_csv(const SweepTable& table, const SweepConfig& cfg, std::ostream& os) {
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const PointRecord& r : table.rows) {
        std::vector<std::string> fields;
        fields.reserve(table.columns.size());
        append_fields(fields, r, cfg.output_precision);
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) os << ',';
            os << fields[i];
        }
        os << '\n';
    }
}

void write_json(const SweepTable& table, const SweepConfig& cfg, std::ostream& os) {
    json root;
    root["version"] = 1;
    root["columns"] = table.columns;
    json rows = json::array();
    for (const PointRecord& r : table.rows) {
        std::vector<std::string> fields;
        append_fields(fields, r, cfg.output_precision);
        rows.push_back(fields);
    }
    root["rows"] = rows;
    os << root.dump(2) << '\n';
}

std::string dump_liouvillian_json(const SweepConfig& base,
                                  const std::vector<double>& axis_values) {
    SweepConfig cfg = base;
    if (!axis_values.empty()) {
        for (size_t i = 0; i < axis_values.size() && i < cfg.axes.size(); ++i)
            apply_axis(cfg, cfg.axes[i].parameter, axis_values[i]);
    }
    const bool phonons_on = cfg.model == ModelKind::full_phonon &&
                            cfg.phonons_enabled && cfg.phonons.alpha > 0.0;
    PhononParams pp = cfg.phonons;
    if (!phonons_on) pp.alpha = 0.0;
    double detuning_bare = energy_to_angular_frequency(cfg.detuning_mev);
    if (phonons_on && cfg.detuning_convention == DetuningConvention::shifted)
        detuning_bare += polaron_shift(pp, QuadratureSettings{});
    SystemParams sp = system_from(cfg, detuning_bare);
    sp.rabi_phase = 0.0;

    VariationalOptions vopt;
    vopt.frame = cfg.frame;
    vopt.delta_r_form = cfg.delta_r_form;
    const VariationalSolution vs = solve_variational(sp, pp, vopt);
    const Liouvillian L = assemble_liouvillian(vs, sp, pp);

    auto matrix_json = [](const Matrix4c& m) {
        json rows = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int j = 0; j < 4; ++j)
                row.push_back({m(i, j).real(), m(i, j).imag()});
            rows.push_back(row);
        }
        return rows;
    };

    json root;
    root["version"] = 1;
    root["vectorization"] = "row-major (rho_gg, rho_ge, rho_eg, rho_ee); "
                            "left action A -> kron(A, I)";
    root["omega_r_ps"] = vs.omega_r;
    root["delta_r_ps"] = vs.delta_r;
    root["coherence_b"] = vs.coherence_b;
    root["components"] = {
        {"hamiltonian", matrix_json(L.hamiltonian)},
        {"phonon", matrix_json(L.phonon)},
        {"emission", matrix_json(L.emission)},
        {"dephasing", matrix_json(L.dephasing)},
    };
    return root.dump(2) + "\n";
}

std::string wigner_csv(const std::vector<double>& field, const WignerGrid& grid,
                       int precision) {
    std::string out;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            if (j) out += ',';
            out += format_double(field[static_cast<size_t>(i) * grid.np + j],
                                 precision);
        }
        out += '\n';
    }
    return out;
}

std::string run_wigner_set(const SweepConfig& base, const WignerGrid& grid) {
    struct Named {
        const char* label;
        double s;
        double detuning_mev;
        bool driven;
    };
    // Vacuum, the weak resonant squeezing optimum, and the two strongly
    // driven off-resonant states near the variance minimum.
    const Named states[] = {
        {"vacuum", 0.0, 0.0, false},
        {"resonant_weak", 1.0 / 3.0, 0.0, true},
        {"detuned_plus", 8.0e6, 1.0, true},
        {"detuned_minus", 8.0e6, -1.0, true},
    };

    json root;
    root["version"] = 1;
    root["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max},
                    {"p_min", grid.p_min}, {"p_max", grid.p_max},
                    {"nx", grid.nx},       {"np", grid.np},
                    {"layout", "row-major over x then p"}};
    json out_states = json::array();
    for (const Named& st : states) {
        SweepConfig cfg = base;
        cfg.axes.clear();
        cfg.drive_given_as_s = true;
        cfg.drive_s = st.s;
        cfg.detuning_mev = st.detuning_mev;

        DensityOperator2 rho;
        PointRecord rec;
        if (!st.driven) {
            rho = DensityOperator2::ground();
        } else {
            rec = run_point(cfg);
            if (!rec.error_code.empty())
                throw std::runtime_error(std::string("wigner state failed: ") +
                                         rec.error_code);
            BlochVector b;
            b.length = rec.bloch_length;
            b.polar = rec.bloch_polar;
            b.phase = rec.dipole_phase;
            rho = density_from_bloch(b);
        }
        const std::vector<double> field = wigner(rho, grid);
        json jstate;
        jstate["label"] = st.label;
        jstate["s"] = st.s;
        jstate["detuning_mev"] = st.detuning_mev;
        jstate["rho"] = {
            {{rho(0, 0).real(), rho(0, 0).imag()}, {rho(0, 1).real(), rho(0, 1).imag()}},
            {{rho(1, 0).real(), rho(1, 0).imag()}, {rho(1, 1).real(), rho(1, 1).imag()}}};
        jstate["w"] = field;
        out_states.push_back(std::move(jstate));
    }
    root["states"] = out_states;
    return root.dump() + "\n";
}

int resolve_threads(int flag_value, const char* env_value) {
    if (flag_value > 0) return flag_value;
    if (flag_value == 0 && env_value != nullptr) {
        try {
            const int n = std::stoi(env_value);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? hw : 1;
}

} // namespace rfsq
