#ifndef PLSSTOP_PLS_HPP
#define PLSSTOP_PLS_HPP

#include <Eigen/Dense>

#include "plsstop/dataset.hpp"

namespace plsstop {

// A fitted PLS (univariate response, NIPALS) or PLS-GLM model.
//
// W, T, P, c live in the standardized-X space the model was fitted in;
// beta/intercept are back-transformed to original data units. For the
// generalized families `c0_std` is the link-scale intercept of the final
// GLM on the components and predictions go through the inverse link.
struct PlsModel {
    int k = 0;                 // components actually built
    Family family = Family::Gaussian;

    Eigen::MatrixXd W;         // p x k  weights (unit norm columns)
    Eigen::MatrixXd Wstar;     // p x k  weights for the raw (undeflated) X
    Eigen::MatrixXd T;         // n x k  scores, pairwise orthogonal
    Eigen::MatrixXd P;         // p x k  X loadings
    Eigen::VectorXd c;         // k      component coefficients
    double c0_std = 0.0;       // link-scale intercept (standardized space)

    Eigen::VectorXd beta;      // p      coefficients, original X units
    double intercept = 0.0;    // original units / link scale

    ScalingParams scaling;

    bool rank_exhausted = false;   // stopped before the requested k
    int glm_nonconvergence = 0;    // step-GLMs that failed to converge
    bool final_glm_converged = true;
    double final_loglik = 0.0;     // log-likelihood of y on the k components
    double final_deviance = 0.0;

    // p x k matrix of two-sided Wald p-values of each predictor's step-GLM
    // coefficient (generalized families only; empty for gaussian).
    Eigen::MatrixXd step_pvalues;
};

// NIPALS PLS1 on standardized data (gaussian response).
// Pre: `std_data` is the output of center_scale, 1 <= k <= min(n-1, p).
// Rank exhaustion (no covariance direction left) stops early and is
// reported via rank_exhausted, never thrown.
PlsModel fit_pls(const Dataset& std_data, const ScalingParams& scaling,
                 int k);

// PLS for binomial/poisson responses: component weights come from the
// coefficient of each predictor in a GLM of y on (t_1..t_{k-1}, x_j),
// X is deflated exactly as in PLS1, y is never deflated, and the final
// model is a GLM of y on the k components.
PlsModel fit_plsglr(const Dataset& std_data, const ScalingParams& scaling,
                    int k, int max_iter = 50, double tol = 1e-8);

// center_scale + family dispatch in one call (data in original units).
PlsModel fit_pipeline(const Dataset& data, int k);

// Predictions in response units: identity (gaussian), probability
// (binomial), mean count (poisson). Throws DimensionMismatch if the column
// count differs from the training p. k = 0 models predict a constant.
Eigen::VectorXd predict(const PlsModel& model, const Eigen::MatrixXd& X_new);

}  // namespace plsstop

#endif
