#include "abloc/tail.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace abloc {

double gaussian_tail_q(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double count_tail(double threshold, double mean, TailMode mode) {
    if (mean < 0) throw std::invalid_argument("count_tail: mean must be >= 0");
    if (threshold <= 0) return 1.0;
    if (mean == 0) return 0.0;
    if (std::isinf(threshold)) return 0.0;
    if (mode == TailMode::GaussianApprox)
        return gaussian_tail_q((threshold - mean) / std::sqrt(mean));
    // P(Y >= k) for integer k >= 1 equals the regularized lower incomplete
    // gamma function P(k, mean).
    const double k = std::ceil(threshold);
    return boost::math::gamma_p(k, mean);
}

double count_interval(double lo, double hi, double mean, TailMode mode) {
    if (hi <= lo) return 0.0;
    return count_tail(lo, mean, mode) - count_tail(hi, mean, mode);
}

}  // namespace abloc
