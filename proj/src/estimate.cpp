#include "abloc/estimate.hpp"

namespace abloc {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::AnalyticExact: return "analytic-exact";
        case Provenance::AnalyticTruncated: return "analytic-truncated";
        case Provenance::AnalyticSampled: return "analytic-sampled";
        case Provenance::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

}  // namespace abloc
