#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abloc/config.hpp"
#include "abloc/source_vector.hpp"
#include "abloc/tail.hpp"

namespace abloc {

/// Parses a flat key=value config file ('#' comments, SI units, scientific
/// notation).  Unknown keys are rejected.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config_text(const std::string& text);

enum class Engine { Analytic, MonteCarlo, Both };

/// One sweep: a base config, axes of parameter values, and which engines run.
struct ExperimentSpec {
    std::string preset = "custom";
    SystemConfig base;
    std::vector<std::pair<std::string, std::vector<double>>> sweep;
    Engine engine = Engine::Analytic;
    EnumerationPolicy policy = EnumerationPolicy::exact();
    TailMode tail_mode = TailMode::ExactPoisson;
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 1;
    /// metrics evaluated per sweep point, e.g. "fa_mem", "pe_l_a"
    std::vector<std::string> metrics;
    std::vector<std::string> header_comments;
};

struct CsvRow {
    std::string preset;
    std::string engine;
    std::string tail_mode;
    std::string policy;
    std::vector<double> sweep_values;
    std::string metric_name;
    double value = 0;
    double std_err = 0;
    std::uint64_t n_trials = 0;
    double residual_bound = 0;
    std::string error;
};

struct ExperimentResult {
    std::vector<std::string> sweep_names;
    std::vector<CsvRow> rows;
    std::vector<std::string> comments;
};

/// Applies a swept parameter by name; throws on unknown names.
void set_config_field(SystemConfig& cfg, const std::string& name, double value);

ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string to_csv(const ExperimentResult& result);
void write_csv(const ExperimentResult& result, const std::string& path);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> list_presets();
bool has_preset(const std::string& name);

/// Builds the spec for a named preset; seed/trials/engine may be overridden
/// by the caller afterwards.
ExperimentSpec make_preset(const std::string& name, std::uint64_t seed);

/// The full-scale reference parameter set (K = 10).
SystemConfig reference_config();
/// Detection parameters scaled to a 5-slot region for exact enumeration.
SystemConfig desk_detection_config();
/// Localization parameters at desk scale (N_s = 10, K = 5).
SystemConfig desk_localization_config();

}  // namespace abloc
