#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abloc/experiments.hpp"

namespace {

abloc::EnumerationPolicy parse_policy(const std::string& text) {
    if (text == "exact") return abloc::EnumerationPolicy::exact();
    if (text.rfind("truncated:", 0) == 0)
        return abloc::EnumerationPolicy::truncated(std::stoi(text.substr(10)));
    if (text.rfind("sampled:", 0) == 0)
        return abloc::EnumerationPolicy::sampled(std::stoull(text.substr(8)), 1);
    throw CLI::ValidationError("--policy",
                               "expected exact|truncated:<cap>|sampled:<n>");
}

/// Parses "name=v1,v2,..." into a sweep axis.
std::pair<std::string, std::vector<double>> parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--sweep", "expected name=v1,v2,...");
    std::pair<std::string, std::vector<double>> axis;
    axis.first = text.substr(0, eq);
    std::istringstream values(text.substr(eq + 1));
    std::string item;
    while (std::getline(values, item, ','))
        axis.second.push_back(std::stod(item));
    if (axis.second.empty())
        throw CLI::ValidationError("--sweep", "no values given");
    return axis;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analytic + Monte-Carlo error surfaces for cooperative "
                 "abnormality detection in a flow-driven diffusive medium"};
    app.require_subcommand(1);

    std::string config_path, preset, engine = "analytic", policy = "exact",
                tail = "exact", out_path;
    std::vector<std::string> sweeps;
    std::uint64_t trials = 100000, seed = 1;

    CLI::App* run = app.add_subcommand("run", "run an experiment and emit CSV");
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--preset", preset, "named preset (see `presets`)");
    run->add_option("--sweep", sweeps, "sweep axis name=v1,v2,... (repeatable)");
    run->add_option("--engine", engine, "analytic|mc|both")
        ->check(CLI::IsMember({"analytic", "mc", "both"}));
    run->add_option("--policy", policy, "exact|truncated:<cap>|sampled:<n>");
    run->add_option("--tail", tail, "exact|gauss")
        ->check(CLI::IsMember({"exact", "gauss"}));
    run->add_option("--trials", trials, "Monte-Carlo trials per point");
    run->add_option("--seed", seed, "root RNG seed");
    run->add_option("--out", out_path, "output CSV path (default stdout)");

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate", "check a config file and report errors");
    validate->add_option("--config", validate_path, "key=value config file")
        ->required();

    CLI::App* presets = app.add_subcommand("presets", "list available presets");

    CLI11_PARSE(app, argc, argv);

    if (presets->parsed()) {
        for (const abloc::PresetInfo& info : abloc::list_presets())
            std::printf("%-14s %s\n", info.name.c_str(), info.description.c_str());
        return 0;
    }

    if (validate->parsed()) {
        try {
            const abloc::SystemConfig cfg = abloc::load_config(validate_path);
            const abloc::Geometry geom = abloc::build_geometry(cfg);
            std::printf("ok: K=%d, subregion length %.6g m, lambda'=%.6g\n",
                        geom.slot_count, geom.subregion_len, geom.lambda_fc);
            const abloc::FlowRegimeReport flow = abloc::validate_flow_regime(cfg);
            if (flow.checked)
                std::printf("flow: Re=%.4g (%s), dispersion ratio %.4g (%s)\n",
                            flow.reynolds, flow.laminar_ok ? "laminar" : "NOT laminar",
                            flow.dispersion_ratio,
                            flow.dispersion_ok ? "ok" : "marginal");
            return 0;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 1;
        }
    }

    // run
    abloc::ExperimentSpec spec;
    try {
        if (!preset.empty()) {
            if (!abloc::has_preset(preset)) {
                std::fprintf(stderr, "config error: unknown preset '%s'\n",
                             preset.c_str());
                return 1;
            }
            spec = abloc::make_preset(preset, seed);
            if (!config_path.empty()) spec.base = abloc::load_config(config_path);
        } else {
            if (config_path.empty()) {
                std::fprintf(stderr,
                             "config error: need --config and/or --preset\n");
                return 1;
            }
            spec.base = abloc::load_config(config_path);
            spec.metrics = {"pe_d_mem", "pe_d_agg"};
        }
        spec.seed = seed;
        if (run->count("--trials")) spec.n_trials = trials;
        if (run->count("--engine"))
            spec.engine = engine == "analytic" ? abloc::Engine::Analytic
                          : engine == "mc"     ? abloc::Engine::MonteCarlo
                                               : abloc::Engine::Both;
        if (run->count("--policy")) spec.policy = parse_policy(policy);
        if (run->count("--tail"))
            spec.tail_mode = tail == "exact" ? abloc::TailMode::ExactPoisson
                                             : abloc::TailMode::GaussianApprox;
        for (const std::string& s : sweeps) spec.sweep.push_back(parse_sweep(s));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }

    try {
        const abloc::ExperimentResult result = abloc::run_experiment(spec);
        bool any_ok = false;
        for (const abloc::CsvRow& row : result.rows)
            if (row.error.empty()) any_ok = true;
        if (out_path.empty())
            std::cout << abloc::to_csv(result);
        else
            abloc::write_csv(result, out_path);
        if (!result.rows.empty() && !any_ok) {
            std::fprintf(stderr, "runtime error: every sweep point failed\n");
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
}
