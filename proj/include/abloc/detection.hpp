#pragma once

#include <vector>

#include "abloc/config.hpp"
#include "abloc/estimate.hpp"
#include "abloc/source_vector.hpp"
#include "abloc/tail.hpp"

namespace abloc {

enum class SensorType { Memoryless, Aggregate };

/// Closed-form detection error probabilities for one sensory region.
///
/// Precomputes the marker hit-probability kernel mu_ji at sensor volume so the
/// enumeration over source vectors stays cheap.
class DetectionModel {
  public:
    explicit DetectionModel(const SystemConfig& cfg);

    const SystemConfig& config() const { return cfg_; }
    const Geometry& geometry() const { return geom_; }

    /// Probability that an otherwise-inactive sensor is activated by markers
    /// before reaching the FC, given the source vector r.
    double marker_activation_prob(const SourceVector& r, SensorType type,
                                  TailMode mode) const;

    ErrorEstimate false_alarm_prob(SensorType type, TailMode mode,
                                   const EnumerationPolicy& policy) const;
    ErrorEstimate miss_detection_prob(SensorType type, TailMode mode,
                                      const EnumerationPolicy& policy) const;
    ErrorEstimate detection_error_prob(SensorType type, TailMode mode,
                                       const EnumerationPolicy& policy) const;

    /// mu_ji at sensor volume, 1 <= j <= i <= K.
    double mu(int release_slot, int sample_slot) const;

  private:
    double fa_term(const SourceVector& r, int n1, SensorType type, TailMode mode,
                   int tau1) const;
    double md_term(const SourceVector& r, int n1, SensorType type, TailMode mode,
                   int tau1) const;

    SystemConfig cfg_;
    Geometry geom_;
    std::vector<double> mu_;  // lower-triangular K x K, sensor volume
    double tau2_agg_;
};

/// One evaluated point of the threshold surface.
struct ThresholdPoint {
    int tau1;
    double tau2;
    double false_alarm;
    double miss_detection;
    double error_prob;
};

struct ThresholdSearchResult {
    int best_tau1 = 0;
    double best_tau2 = 0;
    double best_error = 1;
    std::vector<ThresholdPoint> surface;
};

/// Exhaustive grid search over (tau1, tau2-or-tau2_agg).  Ties break toward
/// the smallest tau1, then the smallest tau2.
ThresholdSearchResult optimize_thresholds(const SystemConfig& cfg, SensorType type,
                                          const std::vector<int>& tau1_grid,
                                          const std::vector<double>& tau2_grid,
                                          TailMode mode,
                                          const EnumerationPolicy& policy);

}  // namespace abloc
