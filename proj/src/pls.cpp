#include "plsstop/pls.hpp"

#include <cmath>

#include "plsstop/errors.hpp"
#include "plsstop/glm.hpp"

namespace plsstop {

namespace {

constexpr double kRankTol = 1e-10;   // relative deflated-norm cutoff
constexpr double kEtaClamp = 30.0;   // same linear-predictor cap as IRLS

// Shrink the component matrices to the k columns actually built.
void truncate(PlsModel& m, int k) {
    m.W.conservativeResize(Eigen::NoChange, k);
    m.Wstar.conservativeResize(Eigen::NoChange, k);
    m.T.conservativeResize(Eigen::NoChange, k);
    m.P.conservativeResize(Eigen::NoChange, k);
    m.c.conservativeResize(k);
    if (m.step_pvalues.size() > 0)
        m.step_pvalues.conservativeResize(Eigen::NoChange, k);
    m.k = k;
}

// W* = W (P'W)^-1: weights that apply to the undeflated X.
Eigen::MatrixXd wstar_of(const Eigen::MatrixXd& W, const Eigen::MatrixXd& P) {
    const Eigen::Index k = W.cols();
    if (k == 0) return W;
    const Eigen::MatrixXd PtW = P.transpose() * W;
    return W * PtW.partialPivLu().solve(Eigen::MatrixXd::Identity(k, k));
}

void check_k_request(const Dataset& d, int k) {
    const int cap =
        static_cast<int>(std::min<Eigen::Index>(d.n() - 1, d.p()));
    if (k < 1 || k > cap)
        throw InvalidArgs("requested components must lie in [1, min(n-1,p)]");
}

}  // namespace

PlsModel fit_pls(const Dataset& std_data, const ScalingParams& scaling,
                 int k) {
    if (std_data.family != Family::Gaussian)
        throw InvalidArgs("fit_pls handles the gaussian family only");
    check_k_request(std_data, k);

    const Eigen::Index n = std_data.n(), p = std_data.p();
    Eigen::MatrixXd Xd = std_data.X;   // deflated copies
    Eigen::VectorXd yd = std_data.y;
    const double x_norm0 = Xd.norm();

    PlsModel m;
    m.family = Family::Gaussian;
    m.scaling = scaling;
    m.W.resize(p, k);
    m.T.resize(n, k);
    m.P.resize(p, k);
    m.c.resize(k);
    m.Wstar.resize(p, k);

    int built = 0;
    for (int step = 0; step < k; ++step) {
        if (Xd.norm() <= kRankTol * x_norm0) break;
        Eigen::VectorXd w = Xd.transpose() * yd;
        const double wn = w.norm();
        if (!(wn > kRankTol * x_norm0)) break;  // no covariance left
        w /= wn;
        const Eigen::VectorXd t = Xd * w;
        const double tn2 = t.squaredNorm();
        if (!(tn2 > 0.0)) break;
        const Eigen::VectorXd load = Xd.transpose() * t / tn2;
        const double c_step = t.dot(yd) / tn2;
        Xd.noalias() -= t * load.transpose();
        yd.noalias() -= c_step * t;
        m.W.col(built) = w;
        m.T.col(built) = t;
        m.P.col(built) = load;
        ++built;
    }
    m.rank_exhausted = built < k;
    truncate(m, built);

    // Component coefficients for the *undeflated* response; with exact
    // orthogonality this matches the per-step c, solved jointly for
    // numerical safety.
    if (built > 0) {
        m.c = (m.T.transpose() * m.T)
                  .ldlt()
                  .solve(m.T.transpose() * std_data.y);
        m.Wstar = wstar_of(m.W, m.P);
    }
    m.c0_std = 0.0;

    // Back-transform beta to original units.
    const Eigen::VectorXd beta_std =
        built > 0 ? Eigen::VectorXd(m.Wstar * m.c)
                  : Eigen::VectorXd(Eigen::VectorXd::Zero(p));
    m.beta.resize(p);
    double dot = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
        m.beta[j] = beta_std[j] * scaling.y_sd / scaling.x_sd[j];
        dot += m.beta[j] * scaling.x_mean[j];
    }
    m.intercept = scaling.y_mean - dot;

    const Eigen::VectorXd fitted_std =
        built > 0 ? Eigen::VectorXd(m.T * m.c)
                  : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
    m.final_deviance =
        (unscale_y(std_data.y, scaling) - unscale_y(fitted_std, scaling))
            .squaredNorm();
    m.final_loglik = family_loglik(unscale_y(std_data.y, scaling),
                                   unscale_y(fitted_std, scaling),
                                   Family::Gaussian);
    return m;
}

PlsModel fit_plsglr(const Dataset& std_data, const ScalingParams& scaling,
                    int k, int max_iter, double tol) {
    if (std_data.family == Family::Gaussian)
        throw InvalidArgs("fit_plsglr handles binomial/poisson only");
    check_k_request(std_data, k);

    const Eigen::Index n = std_data.n(), p = std_data.p();
    const Eigen::VectorXd& y = std_data.y;  // never deflated
    Eigen::MatrixXd Xd = std_data.X;
    const double x_norm0 = Xd.norm();

    PlsModel m;
    m.family = std_data.family;
    m.scaling = scaling;
    m.W.resize(p, k);
    m.T.resize(n, k);
    m.P.resize(p, k);
    m.c.resize(k);
    m.Wstar.resize(p, k);
    m.step_pvalues.resize(p, k);

    int built = 0;
    for (int step = 0; step < k; ++step) {
        if (Xd.norm() <= kRankTol * x_norm0) break;

        // Weight of predictor j: its coefficient in a GLM of y on the
        // components built so far plus the deflated x_j.
        Eigen::VectorXd w(p);
        Eigen::MatrixXd design(n, built + 1);
        if (built > 0) design.leftCols(built) = m.T.leftCols(built);
        for (Eigen::Index j = 0; j < p; ++j) {
            design.col(built) = Xd.col(j);
            try {
                GlmFit f = fit_irls(design, y, std_data.family, true,
                                    max_iter, tol);
                if (f.converged) {
                    w[j] = f.coef[built + 1];
                    m.step_pvalues(j, built) = wald_pvalues(f)[built + 1];
                } else {
                    ++m.glm_nonconvergence;
                    w[j] = 0.0;
                    m.step_pvalues(j, built) = 1.0;
                }
            } catch (const SingularDesign&) {
                // Deflation annihilated this predictor: nothing to test.
                ++m.glm_nonconvergence;
                w[j] = 0.0;
                m.step_pvalues(j, built) = 1.0;
            }
        }

        const double wn = w.norm();
        if (!(wn > 0.0)) break;
        w /= wn;
        const Eigen::VectorXd t = Xd * w;
        const double tn2 = t.squaredNorm();
        if (!(tn2 > kRankTol * kRankTol * x_norm0 * x_norm0)) break;
        const Eigen::VectorXd load = Xd.transpose() * t / tn2;
        Xd.noalias() -= t * load.transpose();
        m.W.col(built) = w;
        m.T.col(built) = t;
        m.P.col(built) = load;
        ++built;
    }
    m.rank_exhausted = built < k;
    truncate(m, built);

    // Final GLM of y on the retained components.
    if (built > 0) {
        GlmFit f = fit_irls(m.T, y, std_data.family, true, max_iter, tol);
        m.final_glm_converged = f.converged;
        if (!f.converged) ++m.glm_nonconvergence;
        m.c0_std = f.coef[0];
        m.c = f.coef.tail(built);
        m.Wstar = wstar_of(m.W, m.P);
        m.final_loglik = f.loglik;
        m.final_deviance = f.deviance;
    } else {
        // Intercept-only model.
        const double ybar = y.mean();
        m.c0_std = std_data.family == Family::Binomial
                       ? std::log(ybar / (1.0 - ybar))
                       : std::log(std::max(ybar, 1e-15));
        const Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, ybar);
        m.final_loglik = family_loglik(y, mu, std_data.family);
        m.final_deviance = family_deviance(y, mu, std_data.family);
    }

    // Link-scale coefficients in original X units.
    const Eigen::VectorXd beta_std =
        built > 0 ? Eigen::VectorXd(m.Wstar * m.c)
                  : Eigen::VectorXd(Eigen::VectorXd::Zero(p));
    m.beta.resize(p);
    double dot = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
        m.beta[j] = beta_std[j] / scaling.x_sd[j];
        dot += beta_std[j] * scaling.x_mean[j] / scaling.x_sd[j];
    }
    m.intercept = m.c0_std - dot;
    return m;
}

PlsModel fit_pipeline(const Dataset& data, int k) {
    auto [std_data, scaling] = center_scale(data);
    if (k == 0) {
        // Constant model: keep the scaling so predict() can emit the mean.
        PlsModel m;
        m.family = data.family;
        m.scaling = scaling;
        const Eigen::Index p = data.p();
        m.W.resize(p, 0);
        m.Wstar.resize(p, 0);
        m.T.resize(data.n(), 0);
        m.P.resize(p, 0);
        m.c.resize(0);
        m.beta = Eigen::VectorXd::Zero(p);
        if (data.family == Family::Gaussian) {
            m.intercept = scaling.y_mean;
        } else {
            const double ybar = data.y.mean();
            m.c0_std = data.family == Family::Binomial
                           ? std::log(std::max(ybar, 1e-15) /
                                      std::max(1.0 - ybar, 1e-15))
                           : std::log(std::max(ybar, 1e-15));
            m.intercept = m.c0_std;
        }
        const Eigen::VectorXd mu = Eigen::VectorXd::Constant(
            data.n(),
            data.family == Family::Gaussian ? scaling.y_mean : data.y.mean());
        m.final_loglik = family_loglik(data.y, mu, data.family);
        m.final_deviance = family_deviance(data.y, mu, data.family);
        return m;
    }
    return data.family == Family::Gaussian
               ? fit_pls(std_data, scaling, k)
               : fit_plsglr(std_data, scaling, k);
}

Eigen::VectorXd predict(const PlsModel& model, const Eigen::MatrixXd& X_new) {
    const Eigen::Index p = model.beta.size();
    if (X_new.cols() != p)
        throw DimensionMismatch("predict: column count differs from model");

    Eigen::VectorXd eta =
        Eigen::VectorXd::Constant(X_new.rows(), model.intercept);
    eta.noalias() += X_new * model.beta;

    switch (model.family) {
        case Family::Gaussian:
            return eta;
        case Family::Binomial:
            return eta.unaryExpr([](double e) { return inv_logit(e); });
        case Family::Poisson:
            // Same cap as the IRLS linear predictor, so extreme
            // extrapolation cannot overflow exp().
            return eta.unaryExpr([](double e) {
                return std::exp(std::min(std::max(e, -kEtaClamp), kEtaClamp));
            });
    }
    return eta;
}

}  // namespace plsstop
