#pragma once

#include <optional>
#include <vector>

namespace abloc {

/// Optional fluid parameters for the laminar/dispersion advisory checks.
struct FlowCheck {
    double rho;      ///< fluid density, kg/m^3
    double eta;      ///< dynamic viscosity, Pa*s
    double d_e;      ///< equivalent channel diameter, m
    double delta_x;  ///< minimum release-to-receive distance, m
};

/// All physical and protocol parameters of one sensory region.
struct SystemConfig {
    double v = 0;         ///< flow velocity, m/s
    double a_c = 0;       ///< channel radius, m
    double diffusion = 0; ///< marker diffusion coefficient D, m^2/s
    double slot_t = 0;    ///< slot duration T, s
    double t_d = 0;       ///< sampling shift T_d, s (0 < T_d < T)
    double x_0 = 0;       ///< injection point, m
    double x_fc = 0;      ///< fusion-center location, m
    int n_sensors = 0;    ///< N_s
    double alpha = 0;     ///< direct-activation probability at the abnormality
    double delta = 0;     ///< per-slot false-activation probability
    double lambda = 0;    ///< marker-noise rate per sensor sampling volume
    double v_s = 0;       ///< sensor sampling volume, m^3
    double v_fc = 0;      ///< FC sampling volume, m^3
    double storage_m = 0; ///< storage capacity M, molecules
    double beta = 0;      ///< marker production rate, molecules/s
    int k_s = 0;          ///< slots to fill an empty storage
    int tau1 = 0;         ///< FC detection threshold, sensor count
    double tau2 = 0;      ///< memoryless sensor marker threshold
    double tau2_agg = 0;  ///< aggregate sensor threshold (0 = default K*tau2)
    double prior_h0 = 0;  ///< P(H_0)
    std::optional<FlowCheck> flow_check;
};

/// Derived region geometry: slot count, sampling times and FC scaling.
struct Geometry {
    int slot_count = 0;                  ///< K
    double subregion_len = 0;            ///< vT, m
    std::vector<double> sampling_times;  ///< t_s^i = iT + T_d, i = 1..K
    double fc_scale = 1;                 ///< V_FC / V_s
    double lambda_fc = 0;                ///< lambda' = fc_scale * lambda
};

/// Throws std::invalid_argument naming the violated invariant.
void validate_config(const SystemConfig& cfg);

/// Derives K, sampling times and the FC-scaled noise rate from a valid config.
Geometry build_geometry(const SystemConfig& cfg);

/// Effective aggregate-sensor threshold: tau2_agg if set, else K * tau2.
double effective_tau2_agg(const SystemConfig& cfg, const Geometry& geom);

/// Probability that a marker released at t = jT is observed in
/// `receiver_volume` at sampling time t_s^i = iT + T_d.  Requires 1 <= j <= i.
double marker_hit_prob(int release_slot, int sample_slot, double receiver_volume,
                       const SystemConfig& cfg);

/// Advisory laminar-flow / dispersion report. Never blocks computation.
struct FlowRegimeReport {
    bool checked = false;       ///< false when no FlowCheck record is present
    bool laminar_ok = false;    ///< Reynolds number below 2300
    bool dispersion_ok = false; ///< v*a_c^2 at least one order below D*delta_x
    double reynolds = 0;
    double dispersion_ratio = 0; ///< D*delta_x / (v*a_c^2)
};

FlowRegimeReport validate_flow_regime(const SystemConfig& cfg);

}  // namespace abloc
