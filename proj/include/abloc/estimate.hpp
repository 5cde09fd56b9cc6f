#pragma once

#include <cstdint>
#include <string>

namespace abloc {

enum class Provenance { AnalyticExact, AnalyticTruncated, AnalyticSampled, MonteCarlo };

std::string to_string(Provenance p);

/// An error probability together with how it was obtained.
struct ErrorEstimate {
    double value = 0;
    double std_err = 0;          ///< 0 for analytic-exact
    std::uint64_t n_trials = 0;  ///< enumeration terms, samples or MC trials
    Provenance provenance = Provenance::AnalyticExact;
    double residual_bound = 0;   ///< omitted-mass bound for truncated sums
};

}  // namespace abloc
