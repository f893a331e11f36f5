#include "plsstop/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "plsstop/errors.hpp"

namespace plsstop::stats {

double normal_cdf(double x) {
    // erfc keeps full precision in the tails, unlike 0.5*(1+erf(.)).
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidArgs("normal_quantile requires p in (0,1)");
    static const boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

double t_cdf(double x, double df) {
    if (!(df > 0.0)) throw InvalidArgs("t_cdf requires df > 0");
    boost::math::students_t_distribution<double> dist(df);
    return boost::math::cdf(dist, x);
}

double quantile_type7(const std::vector<double>& sorted, double level) {
    if (sorted.empty()) throw InvalidArgs("quantile of empty sample");
    level = std::clamp(level, 0.0, 1.0);
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n - 1) * level;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw InvalidArgs("mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    if (v.empty()) throw InvalidArgs("variance of empty sample");
    if (v.size() == 1) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace plsstop::stats
