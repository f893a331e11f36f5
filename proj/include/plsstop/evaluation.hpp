#ifndef PLSSTOP_EVALUATION_HPP
#define PLSSTOP_EVALUATION_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "plsstop/criteria.hpp"
#include "plsstop/dataset.hpp"

namespace plsstop {

// Normalized mean squared error: sum((y - yhat)^2) / sum((y - ybar)^2),
// with ybar the *training* response mean. Throws ZeroDenominator when the
// normalizer vanishes. A constant predictor at ybar scores exactly 1.
double nmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred,
            double y_train_mean);

// Number of 0/1 observations on the wrong side of 0.5 (strict: a predicted
// probability of exactly 0.5 counts as class 0).
int missclassed_count(const Eigen::VectorXd& y01,
                      const Eigen::VectorXd& prob);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;            // Welch-Satterthwaite, real-valued
    double p = 1.0;             // two-sided
    double mean_a = 0.0, mean_b = 0.0;
    double var_a = 0.0, var_b = 0.0;
    int n_a = 0, n_b = 0;
};

// Welch two-sample t-test (unequal variances). Requires >= 2 observations
// per side; throws DegenerateVariances when both sample variances are zero.
TTestResult welch_t_test(const std::vector<double>& a,
                         const std::vector<double>& b);

// Number of distinct ways to split n items into q unordered groups whose
// sizes differ by at most one (r groups of s+1 and q-r of s, n = q*s + r).
// Exact integer arithmetic; q must lie in [1, n].
boost::multiprecision::cpp_int partition_count(long n, long q);

enum class ResampleMode { Bootstrap, Jackknife };

// Distribution of the selected K when the criterion is rerun on resampled
// rows of `data` (B bootstrap draws, or all n leave-one-out subsets).
struct KHistogram {
    std::map<int, int> counts;       // K -> frequency (successful runs)
    int errors = 0;                  // resamples where the criterion threw
    int total = 0;
    int mode_k = -1;                 // smallest K on ties; -1 if none
    double mean_k = 0.0;             // over successful runs
};

KHistogram robustness_distribution(const Dataset& data,
                                   const CriterionSpec& spec,
                                   ResampleMode mode, int B,
                                   std::uint64_t seed);

// Long-format summary of a simulation grid: per-couple stats and pairwise
// Welch verdicts on the held-out metrics.
struct SummaryStatRow {
    double sigma4 = 0.0, sigma5 = 0.0;
    Criterion criterion = Criterion::Q2;
    std::string metric;              // K / nmse_train / nmse_test / missclassed_test
    int n_ok = 0;
    double mean = 0.0;
    double variance = 0.0;
};

struct SummaryTestRow {
    double sigma4 = 0.0, sigma5 = 0.0;
    Criterion criterion_a = Criterion::Q2;
    Criterion criterion_b = Criterion::Q2;
    std::string metric;
    // NaN = not computable for this pair (serialized as an empty field).
    double mean_a = std::numeric_limits<double>::quiet_NaN();
    double mean_b = std::numeric_limits<double>::quiet_NaN();
    double t = std::numeric_limits<double>::quiet_NaN();
    double df = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    std::string verdict;             // A_better / B_better / no_difference / insufficient
};

struct GridSummary {
    std::vector<SummaryStatRow> stats;
    std::vector<SummaryTestRow> tests;
};

struct GridRow;  // simulation.hpp

GridSummary summarize_grid(const std::vector<GridRow>& rows,
                           double alpha = 0.05);

}  // namespace plsstop

#endif
