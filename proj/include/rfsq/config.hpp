#ifndef RFSQ_CONFIG_HPP
#define RFSQ_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfsq/types.hpp"
#include "rfsq/variational.hpp"

namespace rfsq {

enum class ModelKind { full_phonon, atomic, thermal_approx };
enum class OutputFormat { csv, json };
enum class DetuningConvention { shifted, raw };

struct AxisSpec {
    std::string parameter; // s | rabi_mev | detuning_mev | alpha_ps2 |
                           // cutoff_ps | temperature_k
    std::string scale = "linear"; // linear | log10
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

struct SweepConfig {
    ModelKind model = ModelKind::full_phonon;

    // Drive: either s (dimensionless) or an explicit Rabi magnitude.
    double drive_s = 1.0 / 3.0;
    bool drive_given_as_s = true;
    double rabi_ps = 0.0;           // used when !drive_given_as_s
    double drive_phase = 0.0;
    double detuning_mev = 0.0;
    double emission_rate_ps = 1.0 / 700.0;
    double dephasing_rate_ps = 0.0;

    PhononParams phonons{0.027, 2.2, 4.0};
    bool phonons_enabled = true;

    bool include_sideband_b2 = true;
    DetuningConvention detuning_convention = DetuningConvention::shifted;
    DeltaRForm delta_r_form = DeltaRForm::main_text;
    FrameMode frame = FrameMode::variational;

    std::vector<AxisSpec> axes;

    double metrology_coherent_power = 1.0;

    std::string output_path = "-";
    OutputFormat output_format = OutputFormat::csv;
    int output_precision = 12;

    void validate() const;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message) {}
};

// Strict parse of the JSON schema: unknown keys are rejected with the
// offending path; T = 0 K is rejected (beta must stay finite).
SweepConfig parse_config(const std::string& text);
// Canonical emission; parse(emit(c)) reproduces c exactly.
std::string emit_config(const SweepConfig& cfg);

} // namespace rfsq

#endif
