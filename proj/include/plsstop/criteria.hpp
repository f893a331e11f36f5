#ifndef PLSSTOP_CRITERIA_HPP
#define PLSSTOP_CRITERIA_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "plsstop/dataset.hpp"
#include "plsstop/pls.hpp"
#include "plsstop/resampling.hpp"

// Stopping criteria: each one picks the number K of PLS components to
// retain. All of them return a CriterionResult whose trace records, per
// candidate k, the statistic the decision was based on.

namespace plsstop {

enum class Criterion { Q2, BicDof, BicGlob, Aic, Bic, CvMissclassed, PVal, BootYT };

std::string criterion_name(Criterion c);
Criterion criterion_from_name(const std::string& name);  // throws InvalidArgs

enum class BicRule { FirstLocalMin, GlobalMin };

// Cross-validation folds: q nearly-equal parts, or leave-one-out.
struct FoldSpec {
    int q = 5;
    bool loo = false;
};

// The seeded partition used by every fold-based criterion: r folds of size
// s+1 followed by q-r of size s (n = q*s + r), drawn by shuffling 0..n-1.
// Leave-one-out is the identity partition, independent of the seed.
std::vector<std::vector<int>> make_folds(int n, const FoldSpec& folds,
                                         std::uint64_t seed);

struct TraceRow {
    int k = 0;
    double statistic = std::numeric_limits<double>::quiet_NaN();
    bool decision = false;      // criterion-specific: accepted / selected
    // Optional per-criterion extras (NaN / -1 when not applicable):
    double q2 = std::numeric_limits<double>::quiet_NaN();
    double press = std::numeric_limits<double>::quiet_NaN();
    double rss = std::numeric_limits<double>::quiet_NaN();
    double dof = std::numeric_limits<double>::quiet_NaN();
    double sigma2_hat = std::numeric_limits<double>::quiet_NaN();
    double aic = std::numeric_limits<double>::quiet_NaN();
    double bic = std::numeric_limits<double>::quiet_NaN();
    int missclassed = -1;
    double min_wald_p = std::numeric_limits<double>::quiet_NaN();
    double ci_lower = std::numeric_limits<double>::quiet_NaN();
    double ci_upper = std::numeric_limits<double>::quiet_NaN();
    int x_excluding = -1;       // double-bootstrap X step: #loadings whose CI excludes 0
};

struct CriterionResult {
    Criterion criterion = Criterion::Q2;
    int K = 0;
    std::vector<TraceRow> trace;
    std::optional<int> k_max;          // double bootstrap: X-step bound
    int glm_nonconvergence = 0;
    bool sigma2_fallback = false;      // BICdof: n - dof guard fired
    bool k_capped = false;             // search range clamped (rank / 7-cap)
    // Double bootstrap: the per-k intervals behind the trace.
    std::vector<std::vector<BcaInterval>> x_step_cis;  // [k-1][l]
    std::vector<BcaInterval> y_step_cis;               // [k-1]
};

// Uniform entry point used by the CLI / simulation grid.
struct CriterionSpec {
    Criterion criterion = Criterion::Q2;
    int kmax = 0;              // 0 = auto: min(n-1, p, 10)
    double alpha = 0.05;       // p_val threshold / CI risk level
    int R = 500;               // bootstrap replicates
    FoldSpec folds;            // Q2 / CV-MClassed
    BicRule rule = BicRule::FirstLocalMin;
    std::uint64_t seed = 0;
};

// Dispatches on spec.criterion; throws InvalidArgs when the criterion does
// not support data.family.
CriterionResult run_criterion(const Dataset& data, const CriterionSpec& spec);

// --- individual criteria -------------------------------------------------

// PRESS_k (out-of-fold squared prediction error, original y units) and
// RSS_k (in-sample). Gaussian only. Throws FoldTooSmall when a training
// fold cannot structurally support k components.
std::pair<double, double> press_rss(const Dataset& data, int k,
                                    const FoldSpec& folds,
                                    std::uint64_t seed);

// Q2_k = 1 - PRESS_k / RSS_{k-1}; keep while Q2_k >= 0.0975, stop at the
// first failure.
CriterionResult select_q2(const Dataset& data, int kmax,
                          const FoldSpec& folds, std::uint64_t seed);

// Model degrees of freedom of the k-component pipeline: trace of d(yhat)/dy
// by forward finite differences (h = 1e-6 * sd(y), n refits). k = 0 -> 1.
double dof_estimate(const Dataset& data, int k);

// BIC_k = RSS_k / n + log(n) * (dof_k / n) * sigma2_hat, selected by
// first-local-min (default) or global-min rule over k = 0..kmax.
CriterionResult select_bic_dof(const Dataset& data, int kmax,
                               BicRule rule = BicRule::FirstLocalMin);

enum class InfoCriterion { Aic, Bic };

// Naive AIC/BIC with k+1 parameters, k capped at 7; any family.
CriterionResult select_aic_bic_naive(const Dataset& data, int kmax,
                                     InfoCriterion which);

// Binomial only: q-fold CV count of misclassified held-out points
// (threshold 0.5, strict), K = argmin over k = 0..kmax.
CriterionResult select_cv_missclassed(const Dataset& data, int kmax,
                                      const FoldSpec& folds,
                                      std::uint64_t seed);

// Binomial/poisson: keep component k while the smallest Wald p-value of
// the step-GLM coefficients that built it is < alpha; K = last consecutive
// significant k.
CriterionResult select_pval(const Dataset& data, int kmax, double alpha);

// Double bootstrap. X step: bootstrap (X, T_k) pairs, bilateral BCa CI for
// each loading of the newest component; some CI excluding 0 means X still
// carries structure, k_max = last such k. y step: bootstrap (y, T_k) pairs,
// lower-unilateral BCa CI for the coefficient of t_k in the regression of
// y on all k components; advance while the bound stays > 0 and k <= k_max.
CriterionResult select_boot_yt(const Dataset& data, const ResamplePlan& plan,
                               int kmax = 0);

}  // namespace plsstop

#endif
