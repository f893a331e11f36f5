#ifndef PLSSTOP_GLM_HPP
#define PLSSTOP_GLM_HPP

#include <Eigen/Dense>
#include <vector>

#include "plsstop/dataset.hpp"

namespace plsstop {

// One fitted (generalized) linear model. `coef` has the intercept first
// when the model was fitted with one.
struct GlmFit {
    Eigen::VectorXd coef;
    Eigen::MatrixXd cov;        // estimated covariance of coef
    double deviance = 0.0;
    double loglik = 0.0;
    int iterations = 0;         // 0 for OLS
    bool converged = true;
    Family family = Family::Gaussian;
    bool intercept = true;
    std::vector<double> deviance_trace;  // IRLS: deviance after each iteration
};

double inv_logit(double x);

// Ordinary least squares via column-pivoted Householder QR.
// Requires rows >= cols(+1 with intercept) + 1; throws SingularDesign when
// the design is rank deficient (relative pivot threshold 1e-10).
// cov = sigma2 * (D'D)^-1 with sigma2 = RSS / (n - q).
GlmFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               bool intercept = true);

// IRLS for binomial (logit) / poisson (log) with the canonical link.
// The linear predictor is clamped to [-30, 30] each iteration; step-halving
// enforces a non-increasing deviance path. Non-convergence after max_iter
// is reported via `converged`, not thrown. Gaussian family dispatches to
// fit_ols. cov = (D' W D)^-1 at the final weights.
GlmFit fit_irls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                Family family, bool intercept = true, int max_iter = 50,
                double tol = 1e-8);

// Two-sided Wald p-values, normal reference: p_j = 2*(1 - Phi(|coef_j/se_j|)).
// se_j == 0 gives p = 0 when coef_j != 0 and p = 1 otherwise.
Eigen::VectorXd wald_pvalues(const GlmFit& fit);

// Family deviance of observations y under mean prediction mu.
double family_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       Family family);

// Family log-likelihood (gaussian uses the profiled sigma2 = RSS/n form).
double family_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                     Family family);

}  // namespace plsstop

#endif
