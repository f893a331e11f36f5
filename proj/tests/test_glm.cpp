#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "plsstop/errors.hpp"
#include "plsstop/glm.hpp"
#include "plsstop/rng.hpp"
#include "plsstop/stats.hpp"

using namespace plsstop;
using Catch::Matchers::WithinAbs;

TEST_CASE("OLS matches the normal equations on a 6x2 design") {
    Eigen::MatrixXd X(6, 2);
    X << 1, 2, 2, 1, 3, 5, 4, 3, 5, 8, 6, 4;
    Eigen::VectorXd y(6);
    y << 3.1, 2.2, 7.8, 6.1, 12.3, 9.0;

    const GlmFit fit = fit_ols(X, y, true);
    REQUIRE(fit.coef.size() == 3);

    // independent oracle: solve (D'D) b = D'y directly
    Eigen::MatrixXd D(6, 3);
    D.col(0).setOnes();
    D.rightCols(2) = X;
    const Eigen::VectorXd oracle =
        (D.transpose() * D).ldlt().solve(D.transpose() * y);
    for (int j = 0; j < 3; ++j)
        CHECK_THAT(fit.coef[j], WithinAbs(oracle[j], 1e-10));

    const double rss = (y - D * oracle).squaredNorm();
    const Eigen::MatrixXd cov_oracle =
        (D.transpose() * D).inverse() * (rss / (6 - 3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK_THAT(fit.cov(a, b), WithinAbs(cov_oracle(a, b), 1e-10));
    CHECK_THAT(fit.deviance, WithinAbs(rss, 1e-10));
}

TEST_CASE("OLS rejects rank-deficient designs") {
    Eigen::MatrixXd X(5, 2);
    X << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;  // second column = 2 * first
    Eigen::VectorXd y(5);
    y << 1, 2, 3, 4, 5;
    CHECK_THROWS_AS(fit_ols(X, y, true), SingularDesign);
}

TEST_CASE("logistic IRLS matches a Newton-Raphson oracle") {
    auto eng = rng::engine(17);
    std::normal_distribution<double> g;
    const int n = 80;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = g(eng);
        X(i, 1) = g(eng);
        const double eta = -0.3 + 0.9 * X(i, 0) - 0.5 * X(i, 1);
        y[i] = rng::uniform01(eng) < inv_logit(eta) ? 1.0 : 0.0;
    }

    const GlmFit fit = fit_irls(X, y, Family::Binomial);
    REQUIRE(fit.converged);

    // oracle: plain Newton-Raphson on the logistic log-likelihood
    Eigen::MatrixXd D(n, 3);
    D.col(0).setOnes();
    D.rightCols(2) = X;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(3);
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd eta = D * beta;
        Eigen::VectorXd mu(n), w(n);
        for (int i = 0; i < n; ++i) {
            mu[i] = inv_logit(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        const Eigen::VectorXd grad = D.transpose() * (y - mu);
        const Eigen::MatrixXd hess =
            D.transpose() * w.asDiagonal() * D;
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        beta += step;
        if (step.cwiseAbs().maxCoeff() < 1e-12) break;
    }
    for (int j = 0; j < 3; ++j)
        CHECK_THAT(fit.coef[j], WithinAbs(beta[j], 1e-6));

    // covariance oracle at the optimum
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
        const double m = inv_logit((D * beta)[i]);
        w[i] = m * (1.0 - m);
    }
    const Eigen::MatrixXd cov =
        (D.transpose() * w.asDiagonal() * D).inverse();
    for (int j = 0; j < 3; ++j)
        CHECK_THAT(fit.cov(j, j), WithinAbs(cov(j, j), 1e-5));
}

TEST_CASE("poisson IRLS matches a Newton-Raphson oracle") {
    auto eng = rng::engine(23);
    std::normal_distribution<double> g;
    const int n = 100;
    Eigen::MatrixXd X(n, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = g(eng);
        std::poisson_distribution<long> pois(std::exp(0.5 + 0.7 * X(i, 0)));
        y[i] = static_cast<double>(pois(eng));
    }
    const GlmFit fit = fit_irls(X, y, Family::Poisson);
    REQUIRE(fit.converged);

    Eigen::MatrixXd D(n, 2);
    D.col(0).setOnes();
    D.col(1) = X.col(0);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(2);
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd mu = (D * beta).array().exp();
        const Eigen::VectorXd grad = D.transpose() * (y - mu);
        const Eigen::MatrixXd hess =
            D.transpose() * mu.asDiagonal() * D;
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        beta += step;
        if (step.cwiseAbs().maxCoeff() < 1e-12) break;
    }
    CHECK_THAT(fit.coef[0], WithinAbs(beta[0], 1e-6));
    CHECK_THAT(fit.coef[1], WithinAbs(beta[1], 1e-6));

    // deviance oracle: 2 * sum[y log(y/mu) - (y - mu)]
    const Eigen::VectorXd mu = (D * beta).array().exp();
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        if (y[i] > 0.0) dev += y[i] * std::log(y[i] / mu[i]);
        dev -= y[i] - mu[i];
    }
    CHECK_THAT(fit.deviance, WithinAbs(2.0 * dev, 1e-5));
}

TEST_CASE("IRLS deviance trace never increases") {
    auto eng = rng::engine(31);
    std::normal_distribution<double> g;
    const int n = 40;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) X(i, j) = g(eng);
        y[i] = rng::uniform01(eng) < 0.4 ? 1.0 : 0.0;
    }
    const GlmFit fit = fit_irls(X, y, Family::Binomial);
    for (std::size_t i = 1; i < fit.deviance_trace.size(); ++i)
        CHECK(fit.deviance_trace[i] <= fit.deviance_trace[i - 1] + 1e-8);
}

TEST_CASE("separated logistic data still yields a finite fit") {
    Eigen::MatrixXd X(8, 1);
    X << -4, -3, -2, -1, 1, 2, 3, 4;
    Eigen::VectorXd y(8);
    y << 0, 0, 0, 0, 1, 1, 1, 1;  // perfectly separated at 0
    const GlmFit fit = fit_irls(X, y, Family::Binomial);
    CHECK(std::isfinite(fit.coef[0]));
    CHECK(std::isfinite(fit.coef[1]));
    CHECK(fit.coef[1] > 0.0);
    // fitted probabilities saturate, deviance near zero
    CHECK(fit.deviance < 1e-2);
}

TEST_CASE("Wald p-values follow the normal reference") {
    GlmFit fit;
    fit.coef.resize(2);
    fit.coef << 1.959963984540054, 0.0;
    fit.cov = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::VectorXd p = wald_pvalues(fit);
    CHECK_THAT(p[0], WithinAbs(0.05, 1e-10));
    CHECK_THAT(p[1], WithinAbs(1.0, 1e-15));

    // zero variance: significant iff the coefficient is nonzero
    fit.cov.setZero();
    const Eigen::VectorXd pz = wald_pvalues(fit);
    CHECK(pz[0] == 0.0);
    CHECK(pz[1] == 1.0);
}

TEST_CASE("gaussian family helpers agree with closed forms") {
    Eigen::VectorXd y(4), mu(4);
    y << 1, 2, 3, 4;
    mu << 1.5, 1.5, 3.5, 3.5;
    const double rss = 4 * 0.25;
    CHECK_THAT(family_deviance(y, mu, Family::Gaussian),
               WithinAbs(rss, 1e-12));
    // profiled gaussian log-likelihood: -n/2 (log(2 pi rss / n) + 1)
    const double expect = -2.0 * (std::log(2.0 * M_PI * rss / 4.0) + 1.0);
    CHECK_THAT(family_loglik(y, mu, Family::Gaussian),
               WithinAbs(expect, 1e-12));
}

TEST_CASE("binomial deviance matches the manual sum") {
    Eigen::VectorXd y(3), mu(3);
    y << 1, 0, 1;
    mu << 0.8, 0.3, 0.6;
    const double expect = -2.0 * (std::log(0.8) + std::log(0.7) +
                                  std::log(0.6));
    CHECK_THAT(family_deviance(y, mu, Family::Binomial),
               WithinAbs(expect, 1e-12));
}
