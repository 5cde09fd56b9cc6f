#pragma once

#include <cstdint>
#include <vector>

#include "abloc/config.hpp"
#include "abloc/detection.hpp"
#include "abloc/estimate.hpp"
#include "abloc/localization.hpp"

namespace abloc {

enum class Hypothesis { H0, H1 };

/// One Monte-Carlo scenario.  j_star = 0 draws J* ~ Uniform[1..K] per trial.
struct Scenario {
    Hypothesis hypothesis = Hypothesis::H1;
    int j_star = 0;
    SensorType sensor_type = SensorType::Memoryless;
    FcType fc_type = FcType::TypeA;
    std::uint64_t seed = 0;
};

enum class ActivationCause { None, Direct, SensorNoise, Marker };

struct SensorRecord {
    bool flag = false;
    ActivationCause cause = ActivationCause::None;
    int activation_slot = 0;   ///< valid when flag is set
    double storage_level = 0;  ///< molecules at FC arrival
};

struct TrialOutcome {
    int n_total_active = 0;  ///< N_T
    int n_released = 0;      ///< N_1 (not-full storages)
    std::vector<SensorRecord> sensors;
    SourceVector releases;   ///< r_j = sensors releasing at slot-j end
    double z_fc = 0;         ///< FC marker sample
    int true_j_star = 0;     ///< 0 under H0
};

enum class Metric { FalseAlarm, MissDetection, DetectionError, LocalizationError };

struct DecisionCheck {
    std::uint64_t retained = 0;
    std::uint64_t discarded = 0;  ///< trials with r_{J*} = 0
    std::uint64_t type_a_errors = 0;
    std::uint64_t type_b_errors = 0;
    std::uint64_t argmax_errors = 0;
};

/// Discrete-time Monte-Carlo engine.  All randomness derives from the scenario
/// seed: trial t uses an independent stream seeded by (seed, t), so results
/// are reproducible regardless of the number of worker threads.
class Simulator {
  public:
    explicit Simulator(const SystemConfig& cfg);

    const Geometry& geometry() const { return geom_; }

    TrialOutcome run_trial(const Scenario& scenario, std::uint64_t trial_index) const;

    ErrorEstimate estimate_error(Metric metric, const Scenario& scenario,
                                 std::uint64_t n_trials, int n_threads = 1) const;

    DecisionCheck ground_truth_decision_check(const Scenario& scenario,
                                              std::uint64_t n_trials) const;

  private:
    bool trial_error(Metric metric, const Scenario& scenario,
                     std::uint64_t trial_index, bool* retained) const;

    SystemConfig cfg_;
    Geometry geom_;
    LocalizationModel loc_;
    std::vector<double> mu_;     // sensor-volume kernel, lower triangular
    std::vector<double> mu_fc_;  // mu'_{jK}
    double tau2_agg_;
};

}  // namespace abloc
