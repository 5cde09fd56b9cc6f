#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "abloc/config.hpp"

namespace abloc {

/// r[i-1] = number of sensors activated by the abnormality or by sensor noise
/// in slot i.  The implicit (K+1)-th entry is N_s - sum(r).
using SourceVector = std::vector<int>;

/// Per-slot activation probabilities p_1..p_{K+1} under one hypothesis.
struct SlotProbs {
    std::vector<double> p;  ///< size K+1
    int j_star = 0;         ///< abnormality slot; 0 under H0
};

/// H0 probabilities: p_i = delta (1-delta)^(i-1), p_{K+1} = (1-delta)^K.
SlotProbs slot_probs_h0(const SystemConfig& cfg, const Geometry& geom);

/// H1 probabilities with the abnormality in slot j_star (1-based).
SlotProbs slot_probs_h1(int j_star, const SystemConfig& cfg, const Geometry& geom);

/// Multinomial log-pmf of a source vector (log space, N_s trials).
double source_vector_log_pmf(const SourceVector& r, const SlotProbs& probs,
                             const SystemConfig& cfg);
double source_vector_pmf(const SourceVector& r, const SlotProbs& probs,
                         const SystemConfig& cfg);

/// Number of source vectors with sum <= N_s: C(N_s + K, K).
std::uint64_t count_source_vectors(int n_sensors, int slot_count);

/// How the sum over source vectors is realized.
struct EnumerationPolicy {
    enum class Mode { Exact, Truncated, SampledR };
    Mode mode = Mode::Exact;
    int cap = 0;                          ///< Truncated: keep sum(r) <= cap
    std::uint64_t n_samples = 0;          ///< SampledR: i.i.d. draws
    std::uint64_t seed = 0;
    std::uint64_t exact_budget = 4000000; ///< max vector count for Exact

    static EnumerationPolicy exact() { return {}; }
    static EnumerationPolicy truncated(int cap);
    static EnumerationPolicy sampled(std::uint64_t n, std::uint64_t seed);
};

/// Visits every source vector with sum <= max_sum exactly once.
void enumerate_source_vectors(int n_sensors, int slot_count, int max_sum,
                              const std::function<void(const SourceVector&)>& visit);

/// Throws std::runtime_error when an Exact policy exceeds its budget.
void check_exact_budget(int n_sensors, int slot_count, const EnumerationPolicy& policy);

/// Residual probability mass omitted by a Truncated policy: the tail
/// P(sum(r) > cap) of Binomial(N_s, 1 - p_{K+1}).
double truncation_residual(const SlotProbs& probs, int n_sensors, int cap);

/// One multinomial draw of a source vector.
SourceVector sample_source_vector(const SlotProbs& probs, int n_sensors,
                                  std::mt19937_64& rng);

/// Exact binomial tails, computed in log space.
double binomial_tail_ge(int n, double p, int k);  ///< P(Bin(n,p) >= k)
double binomial_cdf_le(int n, double p, int k);   ///< P(Bin(n,p) <= k)
double binomial_pmf(int n, double p, int k);

}  // namespace abloc
