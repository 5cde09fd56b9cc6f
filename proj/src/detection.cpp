#include "abloc/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace abloc {

namespace {

struct KahanSum {
    double sum = 0, c = 0;
    void add(double y) {
        y -= c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

int vector_sum(const SourceVector& r) {
    int n = 0;
    for (int ri : r) n += ri;
    return n;
}

}  // namespace

DetectionModel::DetectionModel(const SystemConfig& cfg)
    : cfg_(cfg), geom_(build_geometry(cfg)) {
    const int k = geom_.slot_count;
    mu_.assign(k * k, 0.0);
    for (int j = 1; j <= k; ++j)
        for (int i = j; i <= k; ++i)
            mu_[(j - 1) * k + (i - 1)] = marker_hit_prob(j, i, cfg_.v_s, cfg_);
    tau2_agg_ = effective_tau2_agg(cfg_, geom_);
}

double DetectionModel::mu(int release_slot, int sample_slot) const {
    return mu_[(release_slot - 1) * geom_.slot_count + (sample_slot - 1)];
}

double DetectionModel::marker_activation_prob(const SourceVector& r, SensorType type,
                                              TailMode mode) const {
    const int k = geom_.slot_count;
    if (type == SensorType::Memoryless) {
        double log_miss = 0.0;  // log prod (1 - P_{a,i|r})
        for (int i = 1; i <= k; ++i) {
            double mean = cfg_.lambda;
            for (int j = 1; j <= i; ++j)
                mean += r[j - 1] * cfg_.storage_m * mu(j, i);
            const double p_slot = count_tail(cfg_.tau2, mean, mode);
            if (p_slot >= 1.0) return 1.0;
            log_miss += std::log1p(-p_slot);
        }
        return -std::expm1(log_miss);
    }
    double mean = k * cfg_.lambda;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= i; ++j)
            mean += r[j - 1] * cfg_.storage_m * mu(j, i);
    return count_tail(tau2_agg_, mean, mode);
}

double DetectionModel::fa_term(const SourceVector& r, int n1, SensorType type,
                               TailMode mode, int tau1) const {
    if (n1 >= tau1) return 1.0;
    const double p_active = marker_activation_prob(r, type, mode);
    return binomial_tail_ge(cfg_.n_sensors - n1, p_active, tau1 - n1);
}

double DetectionModel::md_term(const SourceVector& r, int n1, SensorType type,
                               TailMode mode, int tau1) const {
    if (n1 >= tau1) return 0.0;
    const double p_active = marker_activation_prob(r, type, mode);
    return binomial_cdf_le(cfg_.n_sensors - n1, p_active, tau1 - n1 - 1);
}

ErrorEstimate DetectionModel::false_alarm_prob(SensorType type, TailMode mode,
                                               const EnumerationPolicy& policy) const {
    const SlotProbs probs = slot_probs_h0(cfg_, geom_);
    const int tau1 = cfg_.tau1;
    ErrorEstimate est;
    if (policy.mode == EnumerationPolicy::Mode::SampledR) {
        std::mt19937_64 rng(policy.seed);
        KahanSum sum, sum_sq;
        for (std::uint64_t s = 0; s < policy.n_samples; ++s) {
            const SourceVector r = sample_source_vector(probs, cfg_.n_sensors, rng);
            const double term = fa_term(r, vector_sum(r), type, mode, tau1);
            sum.add(term);
            sum_sq.add(term * term);
        }
        const double n = static_cast<double>(policy.n_samples);
        est.value = sum.sum / n;
        est.std_err = std::sqrt(std::max(0.0, sum_sq.sum / n - est.value * est.value) / n);
        est.n_trials = policy.n_samples;
        est.provenance = Provenance::AnalyticSampled;
        return est;
    }
    check_exact_budget(cfg_.n_sensors, geom_.slot_count, policy);
    const bool truncated = policy.mode == EnumerationPolicy::Mode::Truncated;
    const int max_sum = truncated ? policy.cap : cfg_.n_sensors;
    KahanSum sum;
    std::uint64_t terms = 0;
    enumerate_source_vectors(cfg_.n_sensors, geom_.slot_count, max_sum,
                             [&](const SourceVector& r) {
                                 const int n1 = vector_sum(r);
                                 const double w = source_vector_pmf(r, probs, cfg_);
                                 if (w > 0) sum.add(w * fa_term(r, n1, type, mode, tau1));
                                 ++terms;
                             });
    est.value = std::min(1.0, sum.sum);
    est.n_trials = terms;
    est.provenance = truncated ? Provenance::AnalyticTruncated : Provenance::AnalyticExact;
    if (truncated)
        est.residual_bound = truncation_residual(probs, cfg_.n_sensors, policy.cap);
    return est;
}

ErrorEstimate DetectionModel::miss_detection_prob(SensorType type, TailMode mode,
                                                  const EnumerationPolicy& policy) const {
    const int k = geom_.slot_count;
    const int tau1 = cfg_.tau1;
    ErrorEstimate est;
    if (policy.mode == EnumerationPolicy::Mode::SampledR) {
        // samples J* ~ Unif[1:K] jointly with r
        std::mt19937_64 rng(policy.seed);
        std::uniform_int_distribution<int> pick_j(1, k);
        std::vector<SlotProbs> probs_by_j;
        for (int j = 1; j <= k; ++j) probs_by_j.push_back(slot_probs_h1(j, cfg_, geom_));
        KahanSum sum, sum_sq;
        for (std::uint64_t s = 0; s < policy.n_samples; ++s) {
            const int j_star = pick_j(rng);
            const SourceVector r =
                sample_source_vector(probs_by_j[j_star - 1], cfg_.n_sensors, rng);
            const double term = md_term(r, vector_sum(r), type, mode, tau1);
            sum.add(term);
            sum_sq.add(term * term);
        }
        const double n = static_cast<double>(policy.n_samples);
        est.value = sum.sum / n;
        est.std_err = std::sqrt(std::max(0.0, sum_sq.sum / n - est.value * est.value) / n);
        est.n_trials = policy.n_samples;
        est.provenance = Provenance::AnalyticSampled;
        return est;
    }
    check_exact_budget(cfg_.n_sensors, geom_.slot_count, policy);
    const bool truncated = policy.mode == EnumerationPolicy::Mode::Truncated;
    const int max_sum = truncated ? policy.cap : cfg_.n_sensors;
    KahanSum total;
    double residual = 0;
    std::uint64_t terms = 0;
    for (int j_star = 1; j_star <= k; ++j_star) {
        const SlotProbs probs = slot_probs_h1(j_star, cfg_, geom_);
        KahanSum sum;
        enumerate_source_vectors(cfg_.n_sensors, geom_.slot_count, max_sum,
                                 [&](const SourceVector& r) {
                                     const int n1 = vector_sum(r);
                                     if (n1 >= tau1) return;
                                     const double w = source_vector_pmf(r, probs, cfg_);
                                     if (w > 0) sum.add(w * md_term(r, n1, type, mode, tau1));
                                     ++terms;
                                 });
        total.add(sum.sum / k);
        if (truncated)
            residual += truncation_residual(probs, cfg_.n_sensors, policy.cap) / k;
    }
    est.value = std::min(1.0, total.sum);
    est.n_trials = terms;
    est.provenance = truncated ? Provenance::AnalyticTruncated : Provenance::AnalyticExact;
    est.residual_bound = residual;
    return est;
}

ErrorEstimate DetectionModel::detection_error_prob(SensorType type, TailMode mode,
                                                   const EnumerationPolicy& policy) const {
    const ErrorEstimate fa = false_alarm_prob(type, mode, policy);
    const ErrorEstimate md = miss_detection_prob(type, mode, policy);
    const double p0 = cfg_.prior_h0;
    ErrorEstimate est;
    est.value = p0 * fa.value + (1.0 - p0) * md.value;
    est.std_err = std::sqrt(p0 * p0 * fa.std_err * fa.std_err +
                            (1.0 - p0) * (1.0 - p0) * md.std_err * md.std_err);
    est.n_trials = fa.n_trials + md.n_trials;
    est.provenance = fa.provenance;
    est.residual_bound = p0 * fa.residual_bound + (1.0 - p0) * md.residual_bound;
    return est;
}

ThresholdSearchResult optimize_thresholds(const SystemConfig& cfg, SensorType type,
                                          const std::vector<int>& tau1_grid,
                                          const std::vector<double>& tau2_grid,
                                          TailMode mode,
                                          const EnumerationPolicy& policy) {
    if (tau1_grid.empty() || tau2_grid.empty())
        throw std::invalid_argument("optimize_thresholds: empty grid");
    ThresholdSearchResult result;
    for (double tau2 : tau2_grid) {
        SystemConfig point = cfg;
        if (type == SensorType::Memoryless)
            point.tau2 = tau2;
        else
            point.tau2_agg = tau2;
        for (int tau1 : tau1_grid) {
            point.tau1 = tau1;
            const DetectionModel model(point);
            const ErrorEstimate fa = model.false_alarm_prob(type, mode, policy);
            const ErrorEstimate md = model.miss_detection_prob(type, mode, policy);
            const double pe = cfg.prior_h0 * fa.value + (1.0 - cfg.prior_h0) * md.value;
            result.surface.push_back({tau1, tau2, fa.value, md.value, pe});
            const bool better =
                pe < result.best_error ||
                (pe == result.best_error &&
                 (tau1 < result.best_tau1 ||
                  (tau1 == result.best_tau1 && tau2 < result.best_tau2)));
            if (result.surface.size() == 1 || better) {
                result.best_tau1 = tau1;
                result.best_tau2 = tau2;
                result.best_error = pe;
            }
        }
    }
    return result;
}

}  // namespace abloc
