#include "plsstop/dataset.hpp"

#include <cmath>

#include "plsstop/errors.hpp"

namespace plsstop {

std::string family_name(Family f) {
    switch (f) {
        case Family::Gaussian: return "gaussian";
        case Family::Binomial: return "binomial";
        case Family::Poisson: return "poisson";
    }
    return "gaussian";
}

Family family_from_name(const std::string& name) {
    if (name == "gaussian") return Family::Gaussian;
    if (name == "binomial") return Family::Binomial;
    if (name == "poisson") return Family::Poisson;
    throw InvalidArgs("unknown family '" + name + "'");
}

void Dataset::validate() const {
    if (X.rows() < 2) throw InvalidArgs("dataset needs at least 2 rows");
    if (X.cols() < 1) throw InvalidArgs("dataset needs at least 1 predictor");
    if (y.size() != X.rows())
        throw DimensionMismatch("response length differs from row count");
    if (!column_names.empty() &&
        static_cast<Eigen::Index>(column_names.size()) != X.cols())
        throw DimensionMismatch("column name count differs from p");
    if (!X.allFinite()) throw InvalidArgs("X contains non-finite values");
    if (!y.allFinite()) throw InvalidArgs("y contains non-finite values");
    if (family == Family::Binomial) {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (y[i] != 0.0 && y[i] != 1.0)
                throw InvalidArgs("binomial response must be 0/1");
    } else if (family == Family::Poisson) {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (y[i] < 0.0 || y[i] != std::floor(y[i]))
                throw InvalidArgs(
                    "poisson response must be non-negative integers");
    }
}

Dataset Dataset::rows(const std::vector<int>& idx) const {
    Dataset out;
    out.family = family;
    out.column_names = column_names;
    out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
    out.y.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= X.rows())
            throw InvalidArgs("row index out of range");
        out.X.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
        out.y[static_cast<Eigen::Index>(i)] = y[idx[i]];
    }
    return out;
}

namespace {

// Sample (n-1) standard deviation of one column.
double sample_sd(const Eigen::VectorXd& v) {
    const double m = v.mean();
    const double ss = (v.array() - m).square().sum();
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::pair<Dataset, ScalingParams> center_scale(const Dataset& data) {
    data.validate();
    const Eigen::Index n = data.n(), p = data.p();

    ScalingParams s;
    s.x_mean.resize(p);
    s.x_sd.resize(p);

    Dataset out = data;
    for (Eigen::Index j = 0; j < p; ++j) {
        s.x_mean[j] = data.X.col(j).mean();
        s.x_sd[j] = sample_sd(data.X.col(j));
        if (!(s.x_sd[j] > 0.0)) throw ZeroVarianceColumn(static_cast<int>(j));
        out.X.col(j) = (data.X.col(j).array() - s.x_mean[j]) / s.x_sd[j];
    }

    if (data.family == Family::Gaussian) {
        s.y_mean = data.y.mean();
        s.y_sd = sample_sd(data.y);
        if (!(s.y_sd > 0.0)) throw ZeroVarianceColumn(static_cast<int>(p));
        out.y = (data.y.array() - s.y_mean) / s.y_sd;
    } else {
        // Link-scale families model the raw response.
        s.y_mean = 0.0;
        s.y_sd = 1.0;
    }
    (void)n;
    return {out, s};
}

Eigen::MatrixXd unscale_x(const Eigen::MatrixXd& Xs, const ScalingParams& s) {
    if (Xs.cols() != s.x_mean.size())
        throw DimensionMismatch("unscale_x: column count mismatch");
    Eigen::MatrixXd out = Xs;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        out.col(j) = out.col(j).array() * s.x_sd[j] + s.x_mean[j];
    return out;
}

Eigen::VectorXd unscale_y(const Eigen::VectorXd& ys, const ScalingParams& s) {
    return (ys.array() * s.y_sd + s.y_mean).matrix();
}

}  // namespace plsstop
