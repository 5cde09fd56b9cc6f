#pragma once

#include <vector>

#include "abloc/config.hpp"
#include "abloc/estimate.hpp"
#include "abloc/source_vector.hpp"
#include "abloc/tail.hpp"

namespace abloc {

enum class FcType { TypeA, TypeB };

/// K+1 subregion thresholds gamma_0 = 0 < gamma_1 < ... < gamma_K = inf.
struct ThresholdVector {
    std::vector<double> gamma;  ///< size K+1; gamma[0] = 0, gamma[K] = inf
};

struct ImperfectTypeAResult {
    ErrorEstimate error;
    double upper_bound = 1;  ///< closed-form bound via p_{N3}(0)
};

/// Subregion hypothesis testing at the FC: type-A marker-count thresholds and
/// type-B storage-level decisions.
class LocalizationModel {
  public:
    explicit LocalizationModel(const SystemConfig& cfg);

    const SystemConfig& config() const { return cfg_; }
    const Geometry& geometry() const { return geom_; }

    /// mu'_{jK}: hit probability at FC volume for a release in slot j.
    double mu_fc(int release_slot) const;

    /// Mean of the FC marker sample given the source vector r.
    double fc_marker_mean(const SourceVector& r) const;

    /// Thresholds minimizing the per-realization error when r_active sensors
    /// released at a single (unknown) slot.  r_active >= 1.
    ThresholdVector optimal_thresholds_type_a(int r_active) const;

    /// j such that gamma_{j-1} <= z < gamma_j (1-based).
    int decide_subregion_type_a(double z, const ThresholdVector& thresholds) const;

    /// Perfect sensing (delta = 0): averages over J* uniform and
    /// r_{J*} ~ Binomial(N_s, alpha) conditioned on >= 1.
    ErrorEstimate localization_error_perfect(TailMode mode) const;

    /// Imperfect sensing (delta > 0), suboptimal thresholds from the total
    /// release count; also returns the closed-form upper bound.
    ImperfectTypeAResult localization_error_imperfect_type_a(
        TailMode mode, const EnumerationPolicy& policy) const;

    /// ML rule over the reconstructed source vector; requires delta > 0 and
    /// sum(r) >= 1.  Ties break toward the largest slot.
    int ml_decide_type_b(const SourceVector& r) const;

    /// Largest index attaining max r_m; requires sum(r) >= 1.
    static int argmax_decide_type_b(const SourceVector& r);

    /// Condition under which the ML rule reduces to the argmax rule.
    bool theorem1_condition() const;

    ErrorEstimate localization_error_type_b(const EnumerationPolicy& policy) const;

    /// Recovers the activation slot from a storage level in [0, M).
    int storage_to_slot(double level) const;

  private:
    double perfect_error_given(int j_star, int r_active, TailMode mode) const;

    SystemConfig cfg_;
    Geometry geom_;
    std::vector<double> mu_fc_;  // mu'_{jK}, j = 1..K
};

}  // namespace abloc
