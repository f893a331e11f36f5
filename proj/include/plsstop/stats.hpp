#ifndef PLSSTOP_STATS_HPP
#define PLSSTOP_STATS_HPP

#include <cmath>
#include <vector>

// Small numeric helpers shared across modules.

namespace plsstop::stats {

// Standard normal CDF / quantile. quantile requires p in (0, 1).
double normal_cdf(double x);
double normal_quantile(double p);

// CDF of Student's t with real df > 0.
double t_cdf(double x, double df);

// Type-7 quantile (the R default): linear interpolation between order
// statistics. `sorted` must be ascending and non-empty; level is clamped
// to [0, 1].
double quantile_type7(const std::vector<double>& sorted, double level);

// Sample mean / sample variance (n-1 denominator; variance of a single
// observation is 0).
double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);

inline double sd(const std::vector<double>& v) {
    double s2 = variance(v);
    return s2 > 0 ? std::sqrt(s2) : 0.0;
}

}  // namespace plsstop::stats

#endif
