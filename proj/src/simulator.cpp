#include "abloc/simulator.hpp"

#include <cmath>
#include <random>
#include <thread>

namespace abloc {

Simulator::Simulator(const SystemConfig& cfg)
    : cfg_(cfg), geom_(build_geometry(cfg)), loc_(cfg) {
    const int k = geom_.slot_count;
    mu_.assign(k * k, 0.0);
    for (int j = 1; j <= k; ++j)
        for (int i = j; i <= k; ++i)
            mu_[(j - 1) * k + (i - 1)] = marker_hit_prob(j, i, cfg_.v_s, cfg_);
    mu_fc_.resize(k);
    for (int j = 1; j <= k; ++j)
        mu_fc_[j - 1] = marker_hit_prob(j, k, cfg_.v_fc, cfg_);
    tau2_agg_ = effective_tau2_agg(cfg_, geom_);
}

TrialOutcome Simulator::run_trial(const Scenario& scenario,
                                  std::uint64_t trial_index) const {
    // independent per-trial stream: (seed, trial) -> seed_seq
    std::seed_seq seq{static_cast<std::uint64_t>(scenario.seed),
                      static_cast<std::uint64_t>(trial_index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const int k = geom_.slot_count;
    const int ns = cfg_.n_sensors;
    TrialOutcome out;
    out.sensors.assign(ns, {});
    out.releases.assign(k, 0);

    int j_star = 0;
    if (scenario.hypothesis == Hypothesis::H1) {
        j_star = scenario.j_star;
        if (j_star == 0) {
            std::uniform_int_distribution<int> pick(1, k);
            j_star = pick(rng);
        }
    }
    out.true_j_star = j_star;

    std::vector<double> agg_sum(ns, 0.0);
    for (int slot = 1; slot <= k; ++slot) {
        // (a) direct and sensor-noise activation of still-inactive sensors
        for (int n = 0; n < ns; ++n) {
            SensorRecord& s = out.sensors[n];
            if (s.flag) continue;
            const bool at_abnormality = slot == j_star;
            const bool direct = at_abnormality && unif(rng) < cfg_.alpha;
            const bool noise = cfg_.delta > 0 && unif(rng) < cfg_.delta;
            if (direct || noise) {
                s.flag = true;
                s.cause = direct ? ActivationCause::Direct : ActivationCause::SensorNoise;
                s.activation_slot = slot;
                out.releases[slot - 1] += 1;  // M molecules released at t = slot*T
            }
        }
        // (b)+(c) marker sampling at t_s^slot; releases of this slot (at
        // t = slot*T) are already diffusing for T_d seconds
        double mean = cfg_.lambda;
        for (int j = 1; j <= slot; ++j)
            mean += out.releases[j - 1] * cfg_.storage_m * mu_[(j - 1) * k + (slot - 1)];
        std::poisson_distribution<long long> sample(mean > 0 ? mean : 1.0);
        for (int n = 0; n < ns; ++n) {
            SensorRecord& s = out.sensors[n];
            if (s.flag) continue;
            const double y = mean > 0 ? static_cast<double>(sample(rng)) : 0.0;
            bool activated = false;
            if (scenario.sensor_type == SensorType::Memoryless) {
                activated = y >= cfg_.tau2;
            } else {
                agg_sum[n] += y;
                activated = agg_sum[n] >= tau2_agg_;
            }
            if (activated) {
                s.flag = true;
                s.cause = ActivationCause::Marker;
                s.activation_slot = slot;
                // marker-activated sensors do not release; storage stays full
            }
        }
    }

    // (d) FC absorbs everything at t_s^K
    double fc_mean = geom_.lambda_fc;
    for (int j = 1; j <= k; ++j)
        fc_mean += out.releases[j - 1] * cfg_.storage_m * mu_fc_[j - 1];
    std::poisson_distribution<long long> fc_sample(fc_mean > 0 ? fc_mean : 1.0);
    out.z_fc = fc_mean > 0 ? static_cast<double>(fc_sample(rng)) : 0.0;

    for (int n = 0; n < ns; ++n) {
        SensorRecord& s = out.sensors[n];
        if (s.cause == ActivationCause::Direct || s.cause == ActivationCause::SensorNoise) {
            const double charged = cfg_.beta * (k - s.activation_slot) * cfg_.slot_t;
            s.storage_level = std::min(cfg_.storage_m, charged);
            ++out.n_released;
        } else {
            s.storage_level = cfg_.storage_m;  // never released
        }
        if (s.flag) ++out.n_total_active;
    }
    return out;
}

bool Simulator::trial_error(Metric metric, const Scenario& scenario,
                            std::uint64_t trial_index, bool* retained) const {
    *retained = true;
    Scenario trial_scenario = scenario;
    if (metric == Metric::DetectionError) {
        // hypothesis drawn with the configured prior, from a stream decoupled
        // from the trial stream
        std::seed_seq seq{static_cast<std::uint64_t>(scenario.seed ^ 0x9e3779b97f4a7c15ULL),
                          static_cast<std::uint64_t>(trial_index)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        trial_scenario.hypothesis =
            unif(rng) < cfg_.prior_h0 ? Hypothesis::H0 : Hypothesis::H1;
    }
    const TrialOutcome out = run_trial(trial_scenario, trial_index);
    switch (metric) {
        case Metric::FalseAlarm:
            return out.n_total_active >= cfg_.tau1;
        case Metric::MissDetection:
            return out.n_total_active < cfg_.tau1;
        case Metric::DetectionError:
            if (trial_scenario.hypothesis == Hypothesis::H0)
                return out.n_total_active >= cfg_.tau1;
            return out.n_total_active < cfg_.tau1;
        case Metric::LocalizationError: {
            // localization runs only after detection: require a source at J*
            if (out.true_j_star == 0 || out.releases[out.true_j_star - 1] == 0) {
                *retained = false;
                return false;
            }
            int decided;
            if (scenario.fc_type == FcType::TypeA) {
                const ThresholdVector thr =
                    loc_.optimal_thresholds_type_a(out.n_released);
                decided = loc_.decide_subregion_type_a(out.z_fc, thr);
            } else {
                // reconstruct the source vector from storage levels
                SourceVector r(geom_.slot_count, 0);
                for (const SensorRecord& s : out.sensors)
                    if (s.storage_level < cfg_.storage_m)
                        r[loc_.storage_to_slot(s.storage_level) - 1] += 1;
                decided = cfg_.delta > 0 ? loc_.ml_decide_type_b(r)
                                         : LocalizationModel::argmax_decide_type_b(r);
            }
            return decided != out.true_j_star;
        }
    }
    return false;
}

ErrorEstimate Simulator::estimate_error(Metric metric, const Scenario& scenario,
                                        std::uint64_t n_trials, int n_threads) const {
    std::uint64_t errors = 0, retained_count = 0;
    if (n_threads <= 1) {
        for (std::uint64_t t = 0; t < n_trials; ++t) {
            bool retained;
            const bool err = trial_error(metric, scenario, t, &retained);
            if (retained) {
                ++retained_count;
                if (err) ++errors;
            }
        }
    } else {
        std::vector<std::uint64_t> err_by(n_threads, 0), kept_by(n_threads, 0);
        std::vector<std::thread> workers;
        for (int w = 0; w < n_threads; ++w) {
            workers.emplace_back([&, w] {
                for (std::uint64_t t = w; t < n_trials; t += n_threads) {
                    bool retained;
                    const bool err = trial_error(metric, scenario, t, &retained);
                    if (retained) {
                        ++kept_by[w];
                        if (err) ++err_by[w];
                    }
                }
            });
        }
        for (auto& t : workers) t.join();
        for (int w = 0; w < n_threads; ++w) {
            errors += err_by[w];
            retained_count += kept_by[w];
        }
    }
    ErrorEstimate est;
    est.provenance = Provenance::MonteCarlo;
    est.n_trials = retained_count;
    if (retained_count > 0) {
        const double p = static_cast<double>(errors) / retained_count;
        est.value = p;
        est.std_err = std::sqrt(p * (1.0 - p) / retained_count);
    }
    return est;
}

DecisionCheck Simulator::ground_truth_decision_check(const Scenario& scenario,
                                                     std::uint64_t n_trials) const {
    DecisionCheck check;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        const TrialOutcome out = run_trial(scenario, t);
        if (out.true_j_star == 0 || out.releases[out.true_j_star - 1] == 0) {
            ++check.discarded;
            continue;
        }
        ++check.retained;
        const ThresholdVector thr = loc_.optimal_thresholds_type_a(out.n_released);
        if (loc_.decide_subregion_type_a(out.z_fc, thr) != out.true_j_star)
            ++check.type_a_errors;
        SourceVector r(geom_.slot_count, 0);
        for (const SensorRecord& s : out.sensors)
            if (s.storage_level < cfg_.storage_m)
                r[loc_.storage_to_slot(s.storage_level) - 1] += 1;
        const int ml = cfg_.delta > 0 ? loc_.ml_decide_type_b(r)
                                      : LocalizationModel::argmax_decide_type_b(r);
        if (ml != out.true_j_star) ++check.type_b_errors;
        if (LocalizationModel::argmax_decide_type_b(r) != out.true_j_star)
            ++check.argmax_errors;
    }
    return check;
}

}  // namespace abloc
