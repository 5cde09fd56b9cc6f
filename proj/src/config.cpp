#include "abloc/config.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace abloc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid config: " + what);
}

int slot_count_of(const SystemConfig& cfg) {
    return static_cast<int>(std::ceil((cfg.x_fc - cfg.x_0) / (cfg.v * cfg.slot_t)));
}

}  // namespace

void validate_config(const SystemConfig& cfg) {
    require(cfg.v > 0, "v must be > 0");
    require(cfg.slot_t > 0, "T must be > 0");
    require(cfg.t_d > 0 && cfg.t_d < cfg.slot_t, "T_d must satisfy 0 < T_d < T");
    require(cfg.x_fc > cfg.x_0, "x_FC must be > x_0");
    require(cfg.a_c > 0, "a_c must be > 0");
    require(cfg.diffusion > 0, "D must be > 0");
    require(cfg.v_s > 0, "V_s must be > 0");
    require(cfg.v_fc > 0, "V_FC must be > 0");
    require(cfg.beta > 0, "beta must be > 0");
    require(cfg.n_sensors >= 1, "N_s must be >= 1");
    require(cfg.alpha >= 0 && cfg.alpha <= 1, "alpha must be in [0,1]");
    require(cfg.delta >= 0 && cfg.delta <= 1, "delta must be in [0,1]");
    require(cfg.alpha + cfg.delta <= 1, "alpha + delta must be <= 1");
    require(cfg.lambda >= 0, "lambda must be >= 0");
    require(cfg.storage_m >= 0, "M must be >= 0");
    require(cfg.tau1 >= 0, "tau1 must be >= 0");
    require(cfg.tau2 >= 0, "tau2 must be >= 0");
    require(cfg.tau2_agg >= 0, "tau2_agg must be >= 0");
    require(cfg.prior_h0 >= 0 && cfg.prior_h0 <= 1, "prior_h0 must be in [0,1]");
    require(cfg.k_s >= slot_count_of(cfg), "K_s must be >= K");
}

Geometry build_geometry(const SystemConfig& cfg) {
    validate_config(cfg);
    Geometry geom;
    geom.slot_count = slot_count_of(cfg);
    geom.subregion_len = cfg.v * cfg.slot_t;
    geom.sampling_times.resize(geom.slot_count);
    for (int i = 1; i <= geom.slot_count; ++i)
        geom.sampling_times[i - 1] = i * cfg.slot_t + cfg.t_d;
    geom.fc_scale = cfg.v_fc / cfg.v_s;
    geom.lambda_fc = geom.fc_scale * cfg.lambda;
    return geom;
}

double effective_tau2_agg(const SystemConfig& cfg, const Geometry& geom) {
    return cfg.tau2_agg > 0 ? cfg.tau2_agg : geom.slot_count * cfg.tau2;
}

double marker_hit_prob(int release_slot, int sample_slot, double receiver_volume,
                       const SystemConfig& cfg) {
    if (release_slot < 1 || sample_slot < release_slot)
        throw std::invalid_argument("marker_hit_prob: requires 1 <= j <= i");
    const double elapsed = (sample_slot - release_slot) * cfg.slot_t + cfg.t_d;
    const double pi = std::numbers::pi;
    return receiver_volume / (4.0 * pi * cfg.a_c * cfg.a_c) /
           std::sqrt(4.0 * pi * cfg.diffusion * elapsed);
}

FlowRegimeReport validate_flow_regime(const SystemConfig& cfg) {
    FlowRegimeReport report;
    if (!cfg.flow_check) return report;
    const FlowCheck& fc = *cfg.flow_check;
    report.checked = true;
    report.reynolds = fc.d_e * cfg.v * fc.rho / fc.eta;
    report.laminar_ok = report.reynolds < 2300.0;
    // "much greater than 1" read as at least one order of magnitude
    report.dispersion_ratio = cfg.diffusion * fc.delta_x / (cfg.v * cfg.a_c * cfg.a_c);
    report.dispersion_ok = report.dispersion_ratio > 10.0;
    return report;
}

}  // namespace abloc
