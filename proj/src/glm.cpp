#include "plsstop/glm.hpp"

#include <cmath>

#include "plsstop/errors.hpp"
#include "plsstop/stats.hpp"

namespace plsstop {

namespace {

constexpr double kEtaClamp = 30.0;   // linear-predictor cap (link scale)
constexpr double kVarFloor = 1e-10;  // IRLS working-weight floor
constexpr double kPivotTol = 1e-10;  // relative rank tolerance for QR

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X, bool intercept) {
    if (!intercept) return X;
    Eigen::MatrixXd D(X.rows(), X.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(X.cols()) = X;
    return D;
}

double clamp_eta(double e) {
    if (e > kEtaClamp) return kEtaClamp;
    if (e < -kEtaClamp) return -kEtaClamp;
    return e;
}

// log(y!) for the poisson log-likelihood.
double log_factorial(double y) { return std::lgamma(y + 1.0); }

}  // namespace

double inv_logit(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double family_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                       Family family) {
    if (y.size() != mu.size())
        throw DimensionMismatch("deviance: length mismatch");
    double dev = 0.0;
    switch (family) {
        case Family::Gaussian:
            dev = (y - mu).squaredNorm();
            break;
        case Family::Binomial:
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double m = std::min(std::max(mu[i], 1e-15), 1.0 - 1e-15);
                dev += y[i] > 0.5 ? -2.0 * std::log(m)
                                  : -2.0 * std::log1p(-m);
            }
            break;
        case Family::Poisson:
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double m = std::max(mu[i], 1e-15);
                double term = (y[i] - m);
                if (y[i] > 0.0) term -= y[i] * std::log(y[i] / m);
                dev += -2.0 * term;
            }
            break;
    }
    return dev;
}

double family_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                     Family family) {
    const auto n = static_cast<double>(y.size());
    switch (family) {
        case Family::Gaussian: {
            // Profiled gaussian likelihood: sigma2 = RSS / n.
            const double rss = (y - mu).squaredNorm();
            const double s2 = std::max(rss / n, 1e-300);
            return -0.5 * n * (std::log(2.0 * M_PI * s2) + 1.0);
        }
        case Family::Binomial: {
            double ll = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double m = std::min(std::max(mu[i], 1e-15), 1.0 - 1e-15);
                ll += y[i] > 0.5 ? std::log(m) : std::log1p(-m);
            }
            return ll;
        }
        case Family::Poisson: {
            double ll = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double m = std::max(mu[i], 1e-15);
                ll += y[i] * std::log(m) - m - log_factorial(y[i]);
            }
            return ll;
        }
    }
    return 0.0;
}

GlmFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               bool intercept) {
    if (y.size() != X.rows()) throw DimensionMismatch("fit_ols: size mismatch");
    const Eigen::MatrixXd D = with_intercept(X, intercept);
    const Eigen::Index n = D.rows(), q = D.cols();
    if (n < q + 1)
        throw InvalidArgs("fit_ols needs at least cols+1 rows");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    qr.setThreshold(kPivotTol);
    if (qr.rank() < q) throw SingularDesign("fit_ols: rank-deficient design");

    GlmFit fit;
    fit.family = Family::Gaussian;
    fit.intercept = intercept;
    fit.coef = qr.solve(y);
    const Eigen::VectorXd resid = y - D * fit.coef;
    const double rss = resid.squaredNorm();
    const double sigma2 = rss / static_cast<double>(n - q);
    fit.cov = sigma2 *
              (D.transpose() * D)
                  .ldlt()
                  .solve(Eigen::MatrixXd::Identity(q, q));
    fit.deviance = rss;
    fit.loglik = family_loglik(y, D * fit.coef, Family::Gaussian);
    fit.converged = true;
    return fit;
}

GlmFit fit_irls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                Family family, bool intercept, int max_iter, double tol) {
    if (family == Family::Gaussian) return fit_ols(X, y, intercept);
    if (y.size() != X.rows())
        throw DimensionMismatch("fit_irls: size mismatch");
    const Eigen::MatrixXd D = with_intercept(X, intercept);
    const Eigen::Index n = D.rows(), q = D.cols();
    if (n < q + 1)
        throw InvalidArgs("fit_irls needs at least cols+1 rows");

    const bool binom = family == Family::Binomial;

    auto mu_of = [&](const Eigen::VectorXd& eta) {
        Eigen::VectorXd mu(n);
        for (Eigen::Index i = 0; i < n; ++i)
            mu[i] = binom ? inv_logit(eta[i]) : std::exp(eta[i]);
        return mu;
    };

    // Start from the standard mu initialization rather than beta = 0: it is
    // scale-free and keeps the first working response finite.
    Eigen::VectorXd mu(n), eta(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (binom) {
            mu[i] = (y[i] + 0.5) / 2.0;
            eta[i] = std::log(mu[i] / (1.0 - mu[i]));
        } else {
            mu[i] = y[i] + 0.5;
            eta[i] = std::log(mu[i]);
        }
    }

    GlmFit fit;
    fit.family = family;
    fit.intercept = intercept;
    fit.coef = Eigen::VectorXd::Zero(q);
    fit.converged = false;

    double dev = family_deviance(y, mu, family);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(q);
    bool have_beta = false;

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Canonical link: d(mu)/d(eta) equals the variance function.
        Eigen::VectorXd w(n), z(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v =
                std::max(binom ? mu[i] * (1.0 - mu[i]) : mu[i], kVarFloor);
            w[i] = v;
            z[i] = eta[i] + (y[i] - mu[i]) / v;
        }
        const Eigen::ArrayXd sw = w.array().sqrt();
        Eigen::MatrixXd Dw = sw.matrix().asDiagonal() * D;
        Eigen::VectorXd zw = (sw * z.array()).matrix();

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Dw);
        qr.setThreshold(kPivotTol);
        if (qr.rank() < q) {
            if (!have_beta)
                throw SingularDesign("fit_irls: rank-deficient design");
            break;  // weights collapsed; keep the last good fit
        }
        Eigen::VectorXd beta_new = qr.solve(zw);

        // Step-halve until the deviance stops increasing (1e-10 slack).
        Eigen::VectorXd eta_new, mu_new, cand;
        double dev_new = 0.0;
        double step = 1.0;
        for (int half = 0;; ++half) {
            cand = have_beta ? (beta + step * (beta_new - beta)).eval()
                             : beta_new;
            eta_new = (D * cand).unaryExpr([](double e) { return clamp_eta(e); });
            mu_new = mu_of(eta_new);
            dev_new = family_deviance(y, mu_new, family);
            if (dev_new <= dev + 1e-10 || !have_beta || half >= 30) break;
            step *= 0.5;
        }
        beta_new = cand;

        beta = beta_new;
        have_beta = true;
        eta = eta_new;
        mu = mu_new;
        fit.iterations = iter;
        fit.deviance_trace.push_back(dev_new);

        const double rel = std::abs(dev - dev_new) / (std::abs(dev_new) + 0.1);
        dev = dev_new;
        if (rel < tol) {
            fit.converged = true;
            break;
        }
    }

    fit.coef = beta;
    fit.deviance = dev;
    fit.loglik = family_loglik(y, mu, family);

    // Observed-information covariance at the final weights.
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i)
        w[i] = std::max(binom ? mu[i] * (1.0 - mu[i]) : mu[i], kVarFloor);
    const Eigen::MatrixXd DtWD =
        D.transpose() * w.asDiagonal() * D;
    fit.cov = DtWD.ldlt().solve(Eigen::MatrixXd::Identity(q, q));
    return fit;
}

Eigen::VectorXd wald_pvalues(const GlmFit& fit) {
    const Eigen::Index q = fit.coef.size();
    Eigen::VectorXd p(q);
    for (Eigen::Index j = 0; j < q; ++j) {
        const double var = fit.cov(j, j);
        const double se = var > 0.0 ? std::sqrt(var) : 0.0;
        if (se == 0.0) {
            p[j] = fit.coef[j] != 0.0 ? 0.0 : 1.0;
        } else {
            // 2 * (1 - Phi(|z|)) computed in the tail-stable form.
            p[j] = 2.0 * stats::normal_cdf(-std::abs(fit.coef[j] / se));
        }
    }
    return p;
}

}  // namespace plsstop
