#include "abloc/source_vector.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace abloc {

SlotProbs slot_probs_h0(const SystemConfig& cfg, const Geometry& geom) {
    const int k = geom.slot_count;
    SlotProbs probs;
    probs.p.resize(k + 1);
    const double d = cfg.delta;
    for (int i = 1; i <= k; ++i)
        probs.p[i - 1] = d * std::pow(1.0 - d, i - 1);
    probs.p[k] = std::pow(1.0 - d, k);
    return probs;
}

SlotProbs slot_probs_h1(int j_star, const SystemConfig& cfg, const Geometry& geom) {
    const int k = geom.slot_count;
    if (j_star < 1 || j_star > k)
        throw std::invalid_argument("slot_probs_h1: j_star out of [1, K]");
    SlotProbs probs;
    probs.j_star = j_star;
    probs.p.resize(k + 1);
    const double a = cfg.alpha;
    const double d = cfg.delta;
    for (int i = 1; i < j_star; ++i)
        probs.p[i - 1] = d * std::pow(1.0 - d, i - 1);
    probs.p[j_star - 1] = (a + d) * std::pow(1.0 - d, j_star - 1);
    for (int i = j_star + 1; i <= k; ++i)
        probs.p[i - 1] = d * (1.0 - a - d) * std::pow(1.0 - d, i - 2);
    probs.p[k] = (1.0 - a - d) * std::pow(1.0 - d, k - 1);
    return probs;
}

double source_vector_log_pmf(const SourceVector& r, const SlotProbs& probs,
                             const SystemConfig& cfg) {
    const int k = static_cast<int>(probs.p.size()) - 1;
    if (static_cast<int>(r.size()) != k)
        throw std::invalid_argument("source_vector_log_pmf: wrong vector length");
    int n1 = 0;
    for (int ri : r) {
        if (ri < 0) throw std::invalid_argument("source_vector_log_pmf: negative entry");
        n1 += ri;
    }
    if (n1 > cfg.n_sensors)
        throw std::invalid_argument("source_vector_log_pmf: sum(r) > N_s");
    double log_p = std::lgamma(cfg.n_sensors + 1.0);
    for (int i = 0; i <= k; ++i) {
        const int ri = (i < k) ? r[i] : cfg.n_sensors - n1;
        log_p -= std::lgamma(ri + 1.0);
        if (ri > 0) {
            if (probs.p[i] <= 0) return -std::numeric_limits<double>::infinity();
            log_p += ri * std::log(probs.p[i]);
        }
    }
    return log_p;
}

double source_vector_pmf(const SourceVector& r, const SlotProbs& probs,
                         const SystemConfig& cfg) {
    return std::exp(source_vector_log_pmf(r, probs, cfg));
}

std::uint64_t count_source_vectors(int n_sensors, int slot_count) {
    // C(N_s + K, K) by the multiplicative rule
    std::uint64_t result = 1;
    for (int i = 1; i <= slot_count; ++i)
        result = result * (n_sensors + i) / i;
    return result;
}

EnumerationPolicy EnumerationPolicy::truncated(int cap) {
    EnumerationPolicy p;
    p.mode = Mode::Truncated;
    p.cap = cap;
    return p;
}

EnumerationPolicy EnumerationPolicy::sampled(std::uint64_t n, std::uint64_t seed) {
    EnumerationPolicy p;
    p.mode = Mode::SampledR;
    p.n_samples = n;
    p.seed = seed;
    return p;
}

namespace {

void enumerate_rec(SourceVector& r, int slot, int remaining,
                   const std::function<void(const SourceVector&)>& visit) {
    if (slot == static_cast<int>(r.size())) {
        visit(r);
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        r[slot] = c;
        enumerate_rec(r, slot + 1, remaining - c, visit);
    }
    r[slot] = 0;
}

}  // namespace

void enumerate_source_vectors(int n_sensors, int slot_count, int max_sum,
                              const std::function<void(const SourceVector&)>& visit) {
    SourceVector r(slot_count, 0);
    enumerate_rec(r, 0, std::min(max_sum, n_sensors), visit);
}

void check_exact_budget(int n_sensors, int slot_count, const EnumerationPolicy& policy) {
    if (policy.mode != EnumerationPolicy::Mode::Exact) return;
    const std::uint64_t count = count_source_vectors(n_sensors, slot_count);
    if (count > policy.exact_budget)
        throw std::runtime_error(
            "exact enumeration over budget (" + std::to_string(count) +
            " source vectors); use a truncated or sampled policy");
}

double truncation_residual(const SlotProbs& probs, int n_sensors, int cap) {
    const double p_active_slot = 1.0 - probs.p.back();
    return binomial_tail_ge(n_sensors, p_active_slot, cap + 1);
}

SourceVector sample_source_vector(const SlotProbs& probs, int n_sensors,
                                  std::mt19937_64& rng) {
    const int k = static_cast<int>(probs.p.size()) - 1;
    SourceVector r(k, 0);
    // sequential conditional binomials
    double remaining_p = 1.0;
    int remaining_n = n_sensors;
    for (int i = 0; i < k && remaining_n > 0; ++i) {
        const double p = std::min(1.0, probs.p[i] / remaining_p);
        std::binomial_distribution<int> bin(remaining_n, p);
        r[i] = bin(rng);
        remaining_n -= r[i];
        remaining_p -= probs.p[i];
    }
    return r;
}

double binomial_pmf(int n, double p, int k) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1) return k == n ? 1.0 : 0.0;
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n - k + 1.0) + k * std::log(p) +
                           (n - k) * std::log1p(-p);
    return std::exp(log_pmf);
}

double binomial_tail_ge(int n, double p, int k) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    double sum = 0.0, c = 0.0;
    for (int j = k; j <= n; ++j) {
        const double y = binomial_pmf(n, p, j) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return std::min(1.0, sum);
}

double binomial_cdf_le(int n, double p, int k) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    double sum = 0.0, c = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double y = binomial_pmf(n, p, j) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return std::min(1.0, sum);
}

}  // namespace abloc
