#ifndef PLSSTOP_DATASET_HPP
#define PLSSTOP_DATASET_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace plsstop {

enum class Family { Gaussian, Binomial, Poisson };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws InvalidArgs

// A regression problem: n x p predictor matrix plus response.
//
// Family encodes the response type and is validated, not inferred:
// binomial y must be 0/1, poisson y must be non-negative integers.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Family family = Family::Gaussian;
    std::vector<std::string> column_names;  // empty => x1..xp

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }

    // Throws InvalidArgs / DimensionMismatch on any violated invariant:
    // n >= 2, p >= 1, rows(X) == len(y), all entries finite, y matches
    // the family's support.
    void validate() const;

    // Row subset (bootstrap / fold construction). Indices may repeat.
    Dataset rows(const std::vector<int>& idx) const;
};

// Column means/sds of X and mean/sd of y, as used for standardization.
// All sds use the n-1 (sample) convention.
struct ScalingParams {
    Eigen::VectorXd x_mean, x_sd;
    double y_mean = 0.0;
    double y_sd = 1.0;
};

// Center and scale every X column to mean 0 / sample sd 1. For gaussian
// data y is standardized the same way; binomial/poisson responses are left
// untouched (the link-scale models need the raw response). Throws
// ZeroVarianceColumn if any X column (or gaussian y) is constant.
std::pair<Dataset, ScalingParams> center_scale(const Dataset& data);

// Map a standardized X (or y) back to original units.
Eigen::MatrixXd unscale_x(const Eigen::MatrixXd& Xs, const ScalingParams& s);
Eigen::VectorXd unscale_y(const Eigen::VectorXd& ys, const ScalingParams& s);

}  // namespace plsstop

#endif
