// Command-line front end: single-point evaluation, parameter sweeps, figure
// presets and Wigner grids. Exit codes: 0 success, 1 configuration error,
// 2 runtime error in point mode (sweeps record per-point errors instead).
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "rfsq/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rfsq::ConfigError("/", "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << payload;
}

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    int threads = 0;
    std::string format;
    bool no_phonons = false;
    double dephasing_rate = -1.0;
    bool raw_detuning = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out_path, "output path ('-' = stdout)");
    cmd->add_option("--threads", f.threads,
                    "worker threads (0 = auto, env RFSQUEEZE_THREADS)");
    cmd->add_option("--format", f.format, "csv|json");
    cmd->add_flag("--no-phonons", f.no_phonons, "disable the phonon environment");
    cmd->add_option("--dephasing-rate", f.dephasing_rate,
                    "pure dephasing rate in ps^-1");
    cmd->add_flag("--raw-detuning", f.raw_detuning,
                  "interpret the detuning without the polaron shift");
}

rfsq::SweepConfig load_config(const CommonFlags& f) {
    rfsq::SweepConfig cfg;
    if (!f.config_path.empty()) cfg = rfsq::parse_config(read_file(f.config_path));
    if (f.no_phonons) cfg.phonons_enabled = false;
    if (f.dephasing_rate >= 0.0) cfg.dephasing_rate_ps = f.dephasing_rate;
    if (f.raw_detuning) cfg.detuning_convention = rfsq::DetuningConvention::raw;
    if (!f.format.empty()) {
        if (f.format == "csv") cfg.output_format = rfsq::OutputFormat::csv;
        else if (f.format == "json") cfg.output_format = rfsq::OutputFormat::json;
        else throw rfsq::ConfigError("/output/format", "expected 'csv' or 'json'");
    }
    if (!f.out_path.empty()) cfg.output_path = f.out_path;
    return cfg;
}

std::string render_table(const rfsq::SweepTable& table, const rfsq::SweepConfig& cfg) {
    std::ostringstream os;
    if (cfg.output_format == rfsq::OutputFormat::csv)
        rfsq::write_csv(table, cfg, os);
    else
        rfsq::write_json(table, cfg, os);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state squeezing and phase-sensitivity calculator for a "
                 "driven two-level emitter with a phonon environment"};
    app.require_subcommand(1);

    CommonFlags point_flags, sweep_flags, preset_flags, wigner_flags;

    auto* point_cmd = app.add_subcommand("point", "evaluate a single parameter point");
    add_common(point_cmd, point_flags);
    double point_s = -1.0, point_detuning = std::numeric_limits<double>::quiet_NaN();
    std::string dump_liouvillian;
    point_cmd->add_option("--s", point_s, "scaled driving s = 2(Omega/Gamma)^2");
    point_cmd->add_option("--detuning-mev", point_detuning, "detuning in meV");
    point_cmd->add_option("--dump-liouvillian", dump_liouvillian,
                          "write the Liouvillian component matrices (JSON)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run the configured sweep");
    add_common(sweep_cmd, sweep_flags);

    auto* preset_cmd = app.add_subcommand("preset", "figure-preset pipelines");
    add_common(preset_cmd, preset_flags);
    std::string preset_name;
    bool preset_emit = false, preset_run = false;
    int preset_points = 101;
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    auto* emit_flag =
        preset_cmd->add_flag("--emit-config", preset_emit, "print the preset config");
    preset_cmd->add_flag("--run", preset_run, "run the preset")->excludes(emit_flag);
    preset_cmd->add_option("--points", preset_points, "grid points per axis");

    auto* wigner_cmd = app.add_subcommand("wigner", "emitted-field Wigner grids");
    add_common(wigner_cmd, wigner_flags);
    int wigner_res = 201;
    double wigner_extent = 4.0;
    wigner_cmd->add_option("--resolution", wigner_res, "grid points per axis");
    wigner_cmd->add_option("--extent", wigner_extent, "grid half-width in x and p");

    CLI11_PARSE(app, argc, argv);

    try {
        if (point_cmd->parsed()) {
            rfsq::SweepConfig cfg = load_config(point_flags);
            if (point_s >= 0.0) {
                cfg.drive_given_as_s = true;
                cfg.drive_s = point_s;
            }
            if (!std::isnan(point_detuning)) cfg.detuning_mev = point_detuning;
            cfg.axes.clear();
            if (!dump_liouvillian.empty())
                write_output(dump_liouvillian, rfsq::dump_liouvillian_json(cfg));
            rfsq::SweepTable table;
            table.columns = rfsq::csv_columns(cfg);
            table.rows.push_back(rfsq::run_point(cfg));
            write_output(cfg.output_path, render_table(table, cfg));
            if (!table.rows[0].error_code.empty()) {
                std::cerr << "error: " << table.rows[0].error_code << "\n";
                return 2;
            }
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const rfsq::SweepConfig cfg = load_config(sweep_flags);
            const int threads =
                rfsq::resolve_threads(sweep_flags.threads, std::getenv("RFSQUEEZE_THREADS"));
            const rfsq::SweepTable table = rfsq::run_sweep(cfg, threads);
            write_output(cfg.output_path, render_table(table, cfg));
            return 0;
        }
        if (preset_cmd->parsed()) {
            rfsq::SweepConfig cfg = rfsq::preset(preset_name, preset_points);
            if (preset_flags.no_phonons) cfg.phonons_enabled = false;
            if (preset_flags.dephasing_rate >= 0.0)
                cfg.dephasing_rate_ps = preset_flags.dephasing_rate;
            if (preset_flags.raw_detuning)
                cfg.detuning_convention = rfsq::DetuningConvention::raw;
            if (!preset_flags.out_path.empty()) cfg.output_path = preset_flags.out_path;
            if (!preset_flags.format.empty())
                cfg.output_format = preset_flags.format == "json"
                                        ? rfsq::OutputFormat::json
                                        : rfsq::OutputFormat::csv;
            if (preset_emit || !preset_run) {
                write_output(preset_emit ? cfg.output_path : "-", rfsq::emit_config(cfg));
                if (!preset_run) return 0;
            }
            const int threads =
                rfsq::resolve_threads(preset_flags.threads, std::getenv("RFSQUEEZE_THREADS"));
            if (preset_name == "wigner") {
                write_output(cfg.output_path,
                             rfsq::run_wigner_set(cfg, rfsq::WignerGrid{}));
            } else {
                const rfsq::SweepTable table = rfsq::run_sweep(cfg, threads);
                write_output(cfg.output_path, render_table(table, cfg));
            }
            return 0;
        }
        if (wigner_cmd->parsed()) {
            const rfsq::SweepConfig cfg = load_config(wigner_flags);
            rfsq::WignerGrid grid;
            grid.nx = grid.np = wigner_res;
            grid.x_min = grid.p_min = -wigner_extent;
            grid.x_max = grid.p_max = wigner_extent;
            write_output(cfg.output_path, rfsq::run_wigner_set(cfg, grid));
            return 0;
        }
    } catch (const rfsq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return point_cmd->parsed() ? 2 : 1;
    }
    return 0;
}
