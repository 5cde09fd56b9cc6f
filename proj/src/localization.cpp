#include "abloc/localization.hpp"

#include <cmath>
#include <limits>
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

LocalizationModel::LocalizationModel(const SystemConfig& cfg)
    : cfg_(cfg), geom_(build_geometry(cfg)) {
    mu_fc_.resize(geom_.slot_count);
    for (int j = 1; j <= geom_.slot_count; ++j)
        mu_fc_[j - 1] = marker_hit_prob(j, geom_.slot_count, cfg_.v_fc, cfg_);
}

double LocalizationModel::mu_fc(int release_slot) const {
    return mu_fc_[release_slot - 1];
}

double LocalizationModel::fc_marker_mean(const SourceVector& r) const {
    double mean = geom_.lambda_fc;
    for (int j = 1; j <= geom_.slot_count; ++j)
        mean += r[j - 1] * cfg_.storage_m * mu_fc(j);
    return mean;
}

ThresholdVector LocalizationModel::optimal_thresholds_type_a(int r_active) const {
    if (r_active < 1)
        throw std::invalid_argument("optimal_thresholds_type_a: r_active must be >= 1");
    const int k = geom_.slot_count;
    ThresholdVector thr;
    thr.gamma.resize(k + 1);
    thr.gamma[0] = 0.0;
    thr.gamma[k] = std::numeric_limits<double>::infinity();
    const double signal = r_active * cfg_.storage_m;
    for (int j = 1; j < k; ++j) {
        const double a = signal * mu_fc(j) + geom_.lambda_fc;
        const double b = signal * mu_fc(j + 1) + geom_.lambda_fc;
        if (b > a) {
            thr.gamma[j] = std::sqrt(a * b * (std::log(b / a) / (b - a) + 1.0));
        } else {
            // signal-free degenerate case (M = 0): all hypotheses share one
            // marker law, so any increasing partition gives the same error
            thr.gamma[j] = geom_.lambda_fc + j;
        }
    }
    return thr;
}

int LocalizationModel::decide_subregion_type_a(double z,
                                               const ThresholdVector& thresholds) const {
    const int k = geom_.slot_count;
    for (int j = 1; j < k; ++j)
        if (z < thresholds.gamma[j]) return j;
    return k;
}

double LocalizationModel::perfect_error_given(int j_star, int r_active,
                                              TailMode mode) const {
    const ThresholdVector thr = optimal_thresholds_type_a(r_active);
    const double mean = r_active * cfg_.storage_m * mu_fc(j_star) + geom_.lambda_fc;
    return 1.0 - count_interval(thr.gamma[j_star - 1], thr.gamma[j_star], mean, mode);
}

ErrorEstimate LocalizationModel::localization_error_perfect(TailMode mode) const {
    if (cfg_.alpha <= 0)
        throw std::invalid_argument(
            "localization_error_perfect: alpha must be > 0 (no detection possible)");
    const int k = geom_.slot_count;
    ErrorEstimate est;
    est.provenance = Provenance::AnalyticExact;
    if (k == 1) return est;  // single hypothesis, no error
    // r_{J*} ~ Binomial(N_s, alpha) conditioned on at least one activation
    const double cond = 1.0 - binomial_pmf(cfg_.n_sensors, cfg_.alpha, 0);
    KahanSum sum;
    for (int r = 1; r <= cfg_.n_sensors; ++r) {
        const double w = binomial_pmf(cfg_.n_sensors, cfg_.alpha, r) / cond;
        for (int j = 1; j <= k; ++j)
            sum.add(w * perfect_error_given(j, r, mode) / k);
        ++est.n_trials;
    }
    est.value = std::min(1.0, sum.sum);
    return est;
}

ImperfectTypeAResult LocalizationModel::localization_error_imperfect_type_a(
    TailMode mode, const EnumerationPolicy& policy) const {
    if (cfg_.delta <= 0)
        throw std::invalid_argument(
            "localization_error_imperfect_type_a: requires delta > 0");
    const int k = geom_.slot_count;
    ImperfectTypeAResult result;
    result.error.provenance = policy.mode == EnumerationPolicy::Mode::SampledR
                                  ? Provenance::AnalyticSampled
                                  : Provenance::AnalyticExact;
    KahanSum value_sum;
    KahanSum bound_sum;
    std::uint64_t terms = 0;
    for (int j_star = 1; j_star <= k; ++j_star) {
        const SlotProbs probs = slot_probs_h1(j_star, cfg_, geom_);
        const double p_jstar = probs.p[j_star - 1];
        const double cond = 1.0 - std::pow(1.0 - p_jstar, cfg_.n_sensors);
        if (policy.mode == EnumerationPolicy::Mode::SampledR) {
            std::mt19937_64 rng(policy.seed + j_star);
            std::uint64_t kept = 0;
            KahanSum sum;
            while (kept < policy.n_samples) {
                const SourceVector r =
                    sample_source_vector(probs, cfg_.n_sensors, rng);
                if (r[j_star - 1] == 0) continue;
                ++kept;
                const ThresholdVector thr = optimal_thresholds_type_a(vector_sum(r));
                const double mean = fc_marker_mean(r);
                sum.add(1.0 - count_interval(thr.gamma[j_star - 1],
                                             thr.gamma[j_star], mean, mode));
            }
            value_sum.add(sum.sum / policy.n_samples / k);
            terms += kept;
        } else {
            check_exact_budget(cfg_.n_sensors, k, policy);
            KahanSum sum;
            enumerate_source_vectors(
                cfg_.n_sensors, k, cfg_.n_sensors, [&](const SourceVector& r) {
                    if (r[j_star - 1] == 0) return;
                    const double w = source_vector_pmf(r, probs, cfg_) / cond;
                    if (w <= 0) return;
                    const ThresholdVector thr =
                        optimal_thresholds_type_a(vector_sum(r));
                    const double mean = fc_marker_mean(r);
                    sum.add(w * (1.0 - count_interval(thr.gamma[j_star - 1],
                                                      thr.gamma[j_star], mean, mode)));
                    ++terms;
                });
            value_sum.add(sum.sum / k);
        }
        // closed-form bound: average of 1 - p_{N3}(0) (1 - P_e,perfect) over
        // the marginal of r_{J*}
        for (int r = 1; r <= cfg_.n_sensors; ++r) {
            const double w = binomial_pmf(cfg_.n_sensors, p_jstar, r) / cond;
            const double p_n3_zero = std::pow(
                1.0 - cfg_.delta,
                cfg_.n_sensors * (k - 1.0) - static_cast<double>(r) * (k - j_star));
            const double perfect = perfect_error_given(j_star, r, mode);
            bound_sum.add(w * p_n3_zero * (1.0 - perfect) / k);
        }
    }
    result.error.value = std::min(1.0, value_sum.sum);
    result.error.n_trials = terms;
    result.upper_bound = 1.0 - bound_sum.sum;
    return result;
}

int LocalizationModel::ml_decide_type_b(const SourceVector& r) const {
    if (cfg_.delta <= 0)
        throw std::invalid_argument("ml_decide_type_b: requires delta > 0; "
                                    "use storage_to_slot for perfect sensing");
    if (vector_sum(r) < 1)
        throw std::invalid_argument("ml_decide_type_b: sum(r) must be >= 1");
    const double log_gain = std::log1p(cfg_.alpha / cfg_.delta);
    const double log_decay = std::log1p(-cfg_.alpha / (1.0 - cfg_.delta));
    int best = 1;
    double best_score = -std::numeric_limits<double>::infinity();
    int cum = 0;
    for (int m = 1; m <= geom_.slot_count; ++m) {
        cum += r[m - 1];
        const double score = r[m - 1] * log_gain - cum * log_decay;
        if (score >= best_score) {  // ties go to the largest m
            best_score = score;
            best = m;
        }
    }
    return best;
}

int LocalizationModel::argmax_decide_type_b(const SourceVector& r) {
    if (vector_sum(r) < 1)
        throw std::invalid_argument("argmax_decide_type_b: sum(r) must be >= 1");
    int best = 1;
    for (int m = 1; m <= static_cast<int>(r.size()); ++m)
        if (r[m - 1] >= r[best - 1]) best = m;
    return best;
}

bool LocalizationModel::theorem1_condition() const {
    if (cfg_.delta <= 0 || cfg_.alpha >= 1.0 - cfg_.delta)
        throw std::invalid_argument("theorem1_condition: requires 0 < delta and "
                                    "alpha < 1 - delta");
    return std::log1p(cfg_.alpha / cfg_.delta) +
               (cfg_.n_sensors - 1) * std::log1p(-cfg_.alpha / (1.0 - cfg_.delta)) >
           0.0;
}

ErrorEstimate LocalizationModel::localization_error_type_b(
    const EnumerationPolicy& policy) const {
    const int k = geom_.slot_count;
    ErrorEstimate est;
    est.provenance = Provenance::AnalyticExact;
    if (cfg_.delta <= 0) return est;  // perfect sensing decodes exactly
    KahanSum total;
    std::uint64_t terms = 0;
    for (int j_star = 1; j_star <= k; ++j_star) {
        const SlotProbs probs = slot_probs_h1(j_star, cfg_, geom_);
        const double cond =
            1.0 - std::pow(1.0 - probs.p[j_star - 1], cfg_.n_sensors);
        if (policy.mode == EnumerationPolicy::Mode::SampledR) {
            est.provenance = Provenance::AnalyticSampled;
            std::mt19937_64 rng(policy.seed + j_star);
            std::uint64_t kept = 0, errors = 0;
            while (kept < policy.n_samples) {
                const SourceVector r =
                    sample_source_vector(probs, cfg_.n_sensors, rng);
                if (r[j_star - 1] == 0) continue;
                ++kept;
                if (ml_decide_type_b(r) != j_star) ++errors;
            }
            total.add(static_cast<double>(errors) / policy.n_samples / k);
            terms += kept;
        } else {
            check_exact_budget(cfg_.n_sensors, k, policy);
            KahanSum sum;
            enumerate_source_vectors(
                cfg_.n_sensors, k, cfg_.n_sensors, [&](const SourceVector& r) {
                    if (r[j_star - 1] == 0) return;
                    if (ml_decide_type_b(r) == j_star) return;
                    sum.add(source_vector_pmf(r, probs, cfg_) / cond);
                    ++terms;
                });
            total.add(sum.sum / k);
        }
    }
    est.value = std::min(1.0, total.sum);
    est.n_trials = terms;
    return est;
}

int LocalizationModel::storage_to_slot(double level) const {
    if (level < 0 || level >= cfg_.storage_m)
        throw std::invalid_argument("storage_to_slot: level must be in [0, M)");
    const int k = geom_.slot_count;
    const int slot =
        k - static_cast<int>(std::lround(level / (cfg_.beta * cfg_.slot_t)));
    return std::max(1, std::min(k, slot));
}

}  // namespace abloc
