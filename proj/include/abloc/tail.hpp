#pragma once

namespace abloc {

/// Which tail law produced a probability: the exact Poisson tail (the
/// validation oracle) or its Gaussian approximation.
enum class TailMode { ExactPoisson, GaussianApprox };

/// Standard Gaussian tail Q(x) = P(N(0,1) > x).
double gaussian_tail_q(double x);

/// P(Y >= threshold) for Y ~ Poisson(mean).  In GaussianApprox mode this is
/// Q((threshold - mean) / sqrt(mean)).  mean = 0 gives 0 for any positive
/// threshold and 1 for threshold <= 0.
double count_tail(double threshold, double mean, TailMode mode);

/// P(lo <= Y < hi) for Y ~ Poisson(mean); hi may be +infinity.
double count_interval(double lo, double hi, double mean, TailMode mode);

}  // namespace abloc
