#include "rfsq/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "rfsq/constants.hpp"

namespace rfsq {

using nlohmann::json;

std::vector<double> AxisSpec::values() const {
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(min);
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (scale == "log10") {
            const double lg = std::log10(min) + t * (std::log10(max) - std::log10(min));
            out.push_back(std::pow(10.0, lg));
        } else {
            out.push_back(min + t * (max - min));
        }
    }
    return out;
}

void SweepConfig::validate() const {
    if (drive_given_as_s) {
        if (drive_s < 0.0) throw ConfigError("/system/drive/s", "must be >= 0");
    } else if (rabi_ps < 0.0) {
        throw ConfigError("/system/drive/rabi", "must be >= 0");
    }
    if (emission_rate_ps <= 0.0)
        throw ConfigError("/system/emission_rate", "must be > 0");
    if (dephasing_rate_ps < 0.0)
        throw ConfigError("/system/dephasing_rate", "must be >= 0");
    if (phonons_enabled) {
        if (phonons.alpha < 0.0) throw ConfigError("/phonons/alpha_ps2", "must be >= 0");
        if (phonons.cutoff <= 0.0) throw ConfigError("/phonons/cutoff_ps", "must be > 0");
        if (phonons.temperature <= 0.0)
            throw ConfigError("/phonons/temperature_k",
                              "must be > 0 (beta must stay finite)");
    }
    for (size_t i = 0; i < axes.size(); ++i) {
        const std::string path = "/sweep/axes/" + std::to_string(i);
        const AxisSpec& ax = axes[i];
        static const std::set<std::string> known{
            "s", "rabi_mev", "detuning_mev", "alpha_ps2", "cutoff_ps",
            "temperature_k"};
        if (!known.count(ax.parameter))
            throw ConfigError(path + "/parameter", "unknown parameter '" + ax.parameter + "'");
        if (ax.scale != "linear" && ax.scale != "log10")
            throw ConfigError(path + "/scale", "must be 'linear' or 'log10'");
        if (ax.count < 1) throw ConfigError(path + "/count", "must be >= 1");
        if (ax.scale == "log10" && (ax.min <= 0.0 || ax.max <= 0.0))
            throw ConfigError(path + "/min", "log10 axes require positive bounds");
    }
    if (output_precision < 1 || output_precision > 17)
        throw ConfigError("/output/precision", "must be in [1, 17]");
    if (metrology_coherent_power < 0.0)
        throw ConfigError("/metrology/coherent_power", "must be >= 0");
}

namespace {

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError(path + "/" + it.key(), "unknown key");
    }
}

double require_number(const json& obj, const std::string& path) {
    if (!obj.is_number()) throw ConfigError(path, "expected a number");
    return obj.get<double>();
}

// {"value": x, "unit": "meV" | "ps^-1"} -> angular frequency in ps^-1
double parse_quantity_ps(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected {value, unit}");
    reject_unknown(obj, path, {"value", "unit"});
    if (!obj.contains("value") || !obj.contains("unit"))
        throw ConfigError(path, "expected {value, unit}");
    const double v = require_number(obj.at("value"), path + "/value");
    const std::string unit = obj.at("unit").get<std::string>();
    if (unit == "meV") return energy_to_angular_frequency(v);
    if (unit == "ps^-1") return v;
    throw ConfigError(path + "/unit", "expected 'meV' or 'ps^-1'");
}

} // namespace

SweepConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("/", "top level must be an object");
    reject_unknown(root, "",
                   {"version", "model", "system", "phonons", "toggles", "sweep",
                    "metrology", "output"});

    SweepConfig cfg;

    if (root.contains("version")) {
        if (!root["version"].is_number_integer() || root["version"].get<int>() != 1)
            throw ConfigError("/version", "only version 1 is supported");
    }

    if (root.contains("model")) {
        const std::string m = root["model"].get<std::string>();
        if (m == "full_phonon") cfg.model = ModelKind::full_phonon;
        else if (m == "atomic") cfg.model = ModelKind::atomic;
        else if (m == "thermal_approx") cfg.model = ModelKind::thermal_approx;
        else throw ConfigError("/model", "unknown model '" + m + "'");
    }

    if (root.contains("system")) {
        const json& sys = root["system"];
        if (!sys.is_object()) throw ConfigError("/system", "expected an object");
        reject_unknown(sys, "/system",
                       {"drive", "drive_phase_rad", "detuning", "emission_rate",
                        "dephasing_rate"});
        if (sys.contains("drive")) {
            const json& d = sys["drive"];
            if (!d.is_object()) throw ConfigError("/system/drive", "expected an object");
            reject_unknown(d, "/system/drive", {"s", "rabi"});
            if (d.contains("s") == d.contains("rabi"))
                throw ConfigError("/system/drive", "give exactly one of 's' or 'rabi'");
            if (d.contains("s")) {
                cfg.drive_given_as_s = true;
                cfg.drive_s = require_number(d["s"], "/system/drive/s");
            } else {
                cfg.drive_given_as_s = false;
                cfg.rabi_ps = parse_quantity_ps(d["rabi"], "/system/drive/rabi");
            }
        }
        if (sys.contains("drive_phase_rad"))
            cfg.drive_phase = require_number(sys["drive_phase_rad"], "/system/drive_phase_rad");
        if (sys.contains("detuning"))
            cfg.detuning_mev = angular_frequency_to_energy(
                parse_quantity_ps(sys["detuning"], "/system/detuning"));
        if (sys.contains("emission_rate"))
            cfg.emission_rate_ps =
                parse_quantity_ps(sys["emission_rate"], "/system/emission_rate");
        if (sys.contains("dephasing_rate"))
            cfg.dephasing_rate_ps =
                parse_quantity_ps(sys["dephasing_rate"], "/system/dephasing_rate");
    }

    if (root.contains("phonons")) {
        const json& ph = root["phonons"];
        if (!ph.is_object()) throw ConfigError("/phonons", "expected an object");
        reject_unknown(ph, "/phonons",
                       {"enabled", "alpha_ps2", "cutoff_ps", "temperature_k"});
        if (ph.contains("enabled")) {
            if (!ph["enabled"].is_boolean())
                throw ConfigError("/phonons/enabled", "expected a boolean");
            cfg.phonons_enabled = ph["enabled"].get<bool>();
        }
        if (ph.contains("alpha_ps2"))
            cfg.phonons.alpha = require_number(ph["alpha_ps2"], "/phonons/alpha_ps2");
        if (ph.contains("cutoff_ps"))
            cfg.phonons.cutoff = require_number(ph["cutoff_ps"], "/phonons/cutoff_ps");
        if (ph.contains("temperature_k"))
            cfg.phonons.temperature =
                require_number(ph["temperature_k"], "/phonons/temperature_k");
    }

    if (root.contains("toggles")) {
        const json& tg = root["toggles"];
        if (!tg.is_object()) throw ConfigError("/toggles", "expected an object");
        reject_unknown(tg, "/toggles",
                       {"include_sideband_b2", "detuning_convention", "delta_r_form",
                        "frame"});
        if (tg.contains("include_sideband_b2")) {
            if (!tg["include_sideband_b2"].is_boolean())
                throw ConfigError("/toggles/include_sideband_b2", "expected a boolean");
            cfg.include_sideband_b2 = tg["include_sideband_b2"].get<bool>();
        }
        if (tg.contains("detuning_convention")) {
            const std::string c = tg["detuning_convention"].get<std::string>();
            if (c == "shifted") cfg.detuning_convention = DetuningConvention::shifted;
            else if (c == "raw") cfg.detuning_convention = DetuningConvention::raw;
            else throw ConfigError("/toggles/detuning_convention", "expected 'shifted' or 'raw'");
        }
        if (tg.contains("delta_r_form")) {
            const std::string c = tg["delta_r_form"].get<std::string>();
            if (c == "main_text") cfg.delta_r_form = DeltaRForm::main_text;
            else if (c == "supp_note") cfg.delta_r_form = DeltaRForm::supp_note;
            else throw ConfigError("/toggles/delta_r_form", "expected 'main_text' or 'supp_note'");
        }
        if (tg.contains("frame")) {
            const std::string c = tg["frame"].get<std::string>();
            if (c == "variational") cfg.frame = FrameMode::variational;
            else if (c == "polaron") cfg.frame = FrameMode::full_polaron;
            else if (c == "weak") cfg.frame = FrameMode::weak_coupling;
            else throw ConfigError("/toggles/frame", "expected 'variational', 'polaron' or 'weak'");
        }
    }

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        if (!sw.is_object()) throw ConfigError("/sweep", "expected an object");
        reject_unknown(sw, "/sweep", {"axes"});
        if (sw.contains("axes")) {
            if (!sw["axes"].is_array()) throw ConfigError("/sweep/axes", "expected an array");
            int idx = 0;
            for (const json& a : sw["axes"]) {
                const std::string path = "/sweep/axes/" + std::to_string(idx++);
                if (!a.is_object()) throw ConfigError(path, "expected an object");
                reject_unknown(a, path, {"parameter", "scale", "min", "max", "count"});
                AxisSpec ax;
                if (!a.contains("parameter"))
                    throw ConfigError(path + "/parameter", "required");
                ax.parameter = a["parameter"].get<std::string>();
                if (a.contains("scale")) ax.scale = a["scale"].get<std::string>();
                if (a.contains("min")) ax.min = require_number(a["min"], path + "/min");
                if (a.contains("max")) ax.max = require_number(a["max"], path + "/max");
                if (a.contains("count")) {
                    if (!a["count"].is_number_integer())
                        throw ConfigError(path + "/count", "expected an integer");
                    ax.count = a["count"].get<int>();
                }
                cfg.axes.push_back(std::move(ax));
            }
        }
    }

    if (root.contains("metrology")) {
        const json& mt = root["metrology"];
        if (!mt.is_object()) throw ConfigError("/metrology", "expected an object");
        reject_unknown(mt, "/metrology", {"coherent_power"});
        if (mt.contains("coherent_power"))
            cfg.metrology_coherent_power =
                require_number(mt["coherent_power"], "/metrology/coherent_power");
    }

    if (root.contains("output")) {
        const json& out = root["output"];
        if (!out.is_object()) throw ConfigError("/output", "expected an object");
        reject_unknown(out, "/output", {"path", "format", "precision"});
        if (out.contains("path")) cfg.output_path = out["path"].get<std::string>();
        if (out.contains("format")) {
            const std::string f = out["format"].get<std::string>();
            if (f == "csv") cfg.output_format = OutputFormat::csv;
            else if (f == "json") cfg.output_format = OutputFormat::json;
            else throw ConfigError("/output/format", "expected 'csv' or 'json'");
        }
        if (out.contains("precision")) {
            if (!out["precision"].is_number_integer())
                throw ConfigError("/output/precision", "expected an integer");
            cfg.output_precision = out["precision"].get<int>();
        }
    }

    cfg.validate();
    return cfg;
}

std::string emit_config(const SweepConfig& cfg) {
    json root;
    root["version"] = 1;
    switch (cfg.model) {
        case ModelKind::full_phonon: root["model"] = "full_phonon"; break;
        case ModelKind::atomic: root["model"] = "atomic"; break;
        case ModelKind::thermal_approx: root["model"] = "thermal_approx"; break;
    }
    json drive;
    if (cfg.drive_given_as_s) drive["s"] = cfg.drive_s;
    else drive["rabi"] = {{"value", cfg.rabi_ps}, {"unit", "ps^-1"}};
    root["system"] = {
        {"drive", drive},
        {"drive_phase_rad", cfg.drive_phase},
        {"detuning", {{"value", cfg.detuning_mev}, {"unit", "meV"}}},
        {"emission_rate", {{"value", cfg.emission_rate_ps}, {"unit", "ps^-1"}}},
        {"dephasing_rate", {{"value", cfg.dephasing_rate_ps}, {"unit", "ps^-1"}}},
    };
    root["phonons"] = {
        {"enabled", cfg.phonons_enabled},
        {"alpha_ps2", cfg.phonons.alpha},
        {"cutoff_ps", cfg.phonons.cutoff},
        {"temperature_k", cfg.phonons.temperature},
    };
    root["toggles"] = {
        {"include_sideband_b2", cfg.include_sideband_b2},
        {"detuning_convention",
         cfg.detuning_convention == DetuningConvention::shifted ? "shifted" : "raw"},
        {"delta_r_form",
         cfg.delta_r_form == DeltaRForm::main_text ? "main_text" : "supp_note"},
        {"frame", cfg.frame == FrameMode::variational
                      ? "variational"
                      : (cfg.frame == FrameMode::full_polaron ? "polaron" : "weak")},
    };
    json axes = json::array();
    for (const AxisSpec& ax : cfg.axes) {
        axes.push_back({{"parameter", ax.parameter},
                        {"scale", ax.scale},
                        {"min", ax.min},
                        {"max", ax.max},
                        {"count", ax.count}});
    }
    root["sweep"] = {{"axes", axes}};
    root["metrology"] = {{"coherent_power", cfg.metrology_coherent_power}};
    root["output"] = {
        {"path", cfg.output_path},
        {"format", cfg.output_format == OutputFormat::csv ? "csv" : "json"},
        {"precision", cfg.output_precision},
    };
    return root.dump(2) + "\n";
}

} // namespace rfsq
