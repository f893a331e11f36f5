#include "plsstop/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "plsstop/errors.hpp"
#include "plsstop/glm.hpp"
#include "plsstop/rng.hpp"
#include "plsstop/stats.hpp"

namespace plsstop {

namespace {

constexpr double kQ2Threshold = 0.0975;  // classical Q2 acceptance bound
constexpr int kNaiveCap = 7;             // hard cap for naive AIC/BIC
constexpr int kAutoKmax = 10;            // default search bound

int structural_kmax(const Dataset& d) {
    return static_cast<int>(std::min<Eigen::Index>(d.n() - 1, d.p()));
}

// Components the full-data fit can actually build (rank collapse point).
int attainable_kmax(const Dataset& d, int upto) {
    if (upto < 1) return 0;
    return fit_pipeline(d, upto).k;
}

int resolve_kmax(const Dataset& d, int requested) {
    const int cap = structural_kmax(d);
    if (requested <= 0) return std::min(cap, kAutoKmax);
    return std::min(requested, cap);
}

double rss_about_mean(const Eigen::VectorXd& y) {
    return (y.array() - y.mean()).square().sum();
}

std::vector<int> complement_of(const std::vector<int>& fold, int n) {
    std::vector<char> in_fold(static_cast<std::size_t>(n), 0);
    for (int i : fold) in_fold[static_cast<std::size_t>(i)] = 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - fold.size());
    for (int i = 0; i < n; ++i)
        if (!in_fold[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

// Last coefficient of the least-squares fit of y on [1 M]; never throws on
// rank deficiency (pivoted-QR basic solution), which keeps bootstrap
// replicates total.
double last_coef_ols(const Eigen::MatrixXd& M, const Eigen::VectorXd& y) {
    Eigen::MatrixXd D(M.rows(), M.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(M.cols()) = M;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    qr.setThreshold(1e-10);
    const Eigen::VectorXd b = qr.solve(y);
    return b[b.size() - 1];
}

// Same, but the full coefficient row for many left-hand sides at once:
// returns the last regression coefficient of each column of Ys.
Eigen::VectorXd last_coef_ols_multi(const Eigen::MatrixXd& M,
                                    const Eigen::MatrixXd& Ys) {
    Eigen::MatrixXd D(M.rows(), M.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(M.cols()) = M;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    qr.setThreshold(1e-10);
    const Eigen::MatrixXd B = qr.solve(Ys);
    return B.row(B.rows() - 1);
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& M,
                          const std::vector<int>& idx) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), M.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = M.row(idx[i]);
    return out;
}

Eigen::VectorXd take_rows(const Eigen::VectorXd& v,
                          const std::vector<int>& idx) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = v[idx[i]];
    return out;
}

}  // namespace

std::vector<std::vector<int>> make_folds(int n, const FoldSpec& folds,
                                         std::uint64_t seed) {
    const int q = folds.loo ? n : folds.q;
    if (q < 2 || q > n)
        throw InvalidArgs("fold count must lie in [2, n]");
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    if (!folds.loo) {
        auto eng = rng::engine(rng::derive(seed, 0x666f6c64ull));  // "fold"
        for (int i = n - 1; i > 0; --i) {
            const auto j = static_cast<int>(
                rng::bounded(eng, static_cast<std::uint64_t>(i + 1)));
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(j)]);
        }
    }
    const int s = n / q, r = n % q;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(q));
    int pos = 0;
    for (int f = 0; f < q; ++f) {
        const int size = f < r ? s + 1 : s;
        for (int i = 0; i < size; ++i)
            out[static_cast<std::size_t>(f)].push_back(
                perm[static_cast<std::size_t>(pos++)]);
    }
    return out;
}

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Q2: return "q2";
        case Criterion::BicDof: return "bicdof";
        case Criterion::BicGlob: return "bicglob";
        case Criterion::Aic: return "aic";
        case Criterion::Bic: return "bic";
        case Criterion::CvMissclassed: return "cvmc";
        case Criterion::PVal: return "pval";
        case Criterion::BootYT: return "bootyt";
    }
    return "q2";
}

Criterion criterion_from_name(const std::string& name) {
    if (name == "q2") return Criterion::Q2;
    if (name == "bicdof") return Criterion::BicDof;
    if (name == "bicglob") return Criterion::BicGlob;
    if (name == "aic") return Criterion::Aic;
    if (name == "bic") return Criterion::Bic;
    if (name == "cvmc") return Criterion::CvMissclassed;
    if (name == "pval") return Criterion::PVal;
    if (name == "bootyt") return Criterion::BootYT;
    throw InvalidArgs("unknown criterion '" + name + "'");
}

std::pair<double, double> press_rss(const Dataset& data, int k,
                                    const FoldSpec& folds,
                                    std::uint64_t seed) {
    if (data.family != Family::Gaussian)
        throw InvalidArgs("press_rss requires the gaussian family");
    if (k < 1) throw InvalidArgs("press_rss: k must be >= 1");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int p = static_cast<int>(data.p());

    const auto fold_sets = make_folds(n, folds, seed);

    double press = 0.0;
    for (const auto& fold : fold_sets) {
        const int n_train = n - static_cast<int>(fold.size());
        if (k > std::min(n_train - 1, p))
            throw FoldTooSmall("training fold of " + std::to_string(n_train) +
                               " rows cannot support " + std::to_string(k) +
                               " components");
        const Dataset train = data.rows(complement_of(fold, n));
        const PlsModel m = fit_pipeline(train, k);  // best effort on collapse
        const Eigen::VectorXd pred = predict(m, take_rows(data.X, fold));
        const Eigen::VectorXd truth = take_rows(data.y, fold);
        press += (truth - pred).squaredNorm();
    }

    const PlsModel full = fit_pipeline(data, k);
    const double rss = (data.y - predict(full, data.X)).squaredNorm();
    return {press, rss};
}

CriterionResult select_q2(const Dataset& data, int kmax,
                          const FoldSpec& folds, std::uint64_t seed) {
    if (data.family != Family::Gaussian)
        throw InvalidArgs("criterion requires gaussian family");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int p = static_cast<int>(data.p());

    CriterionResult res;
    res.criterion = Criterion::Q2;

    // Clamp the search to what every training fold can structurally carry.
    const int q = folds.loo ? n : folds.q;
    if (q < 2 || q > n) throw InvalidArgs("fold count must lie in [2, n]");
    const int biggest_fold = n / q + (n % q ? 1 : 0);
    int kcap = resolve_kmax(data, kmax);
    kcap = std::min(kcap, std::min(n - biggest_fold - 1, p));
    const int attain = attainable_kmax(data, kcap);
    if (attain < kcap) {
        kcap = attain;
        res.k_capped = true;
    }

    double rss_prev = rss_about_mean(data.y);
    for (int k = 1; k <= kcap; ++k) {
        const auto [press, rss] = press_rss(data, k, folds, seed);
        const double q2 = 1.0 - press / rss_prev;
        TraceRow row;
        row.k = k;
        row.statistic = q2;
        row.q2 = q2;
        row.press = press;
        row.rss = rss;
        row.decision = q2 >= kQ2Threshold;
        res.trace.push_back(row);
        if (!row.decision) break;
        res.K = k;
        rss_prev = rss;
    }
    return res;
}

double dof_estimate(const Dataset& data, int k) {
    if (data.family != Family::Gaussian)
        throw InvalidArgs("dof_estimate requires the gaussian family");
    if (k < 0) throw InvalidArgs("dof_estimate: k must be >= 0");
    if (k == 0) return 1.0;  // intercept only
    data.validate();

    const int n = static_cast<int>(data.n());
    const double h = 1e-6 * std::sqrt(rss_about_mean(data.y) /
                                      static_cast<double>(n - 1));
    if (!(h > 0.0)) throw InvalidArgs("dof_estimate: constant response");

    const PlsModel base = fit_pipeline(data, k);
    const Eigen::VectorXd fitted0 = predict(base, data.X);

    // trace of d(yhat)/dy: forward difference, one refit per observation.
    double trace = 0.0;
    Dataset pert = data;
    for (int i = 0; i < n; ++i) {
        pert.y[i] = data.y[i] + h;
        const PlsModel m = fit_pipeline(pert, k);
        trace += (predict(m, data.X)[i] - fitted0[i]) / h;
        pert.y[i] = data.y[i];
    }
    return trace;
}

CriterionResult select_bic_dof(const Dataset& data, int kmax, BicRule rule) {
    if (data.family != Family::Gaussian)
        throw InvalidArgs("criterion requires gaussian family");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int p = static_cast<int>(data.p());

    CriterionResult res;
    res.criterion =
        rule == BicRule::FirstLocalMin ? Criterion::BicDof : Criterion::BicGlob;

    int kcap = resolve_kmax(data, kmax);
    const int attain = attainable_kmax(data, kcap);
    if (attain < kcap) {
        kcap = attain;
        res.k_capped = true;
    }

    // Noise-level estimate from the most flexible reference model.
    double sigma2_hat;
    if (n > p) {
        // Rank-aware least squares of y on [1 X]: fitted values are the
        // projection onto the column space, sigma2 = RSS / (n - rank).
        Eigen::MatrixXd D(n, p + 1);
        D.col(0).setOnes();
        D.rightCols(p) = data.X;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
        qr.setThreshold(1e-10);
        const int rank = static_cast<int>(qr.rank());
        const double rss_ref = (data.y - D * qr.solve(data.y)).squaredNorm();
        if (n - rank >= 1) {
            sigma2_hat = rss_ref / static_cast<double>(n - rank);
        } else {
            sigma2_hat = rss_ref;
            res.sigma2_fallback = true;
        }
    } else {
        const double gamma_cap = dof_estimate(data, kcap);
        const PlsModel ref = fit_pipeline(data, kcap);
        const double rss_ref = (data.y - predict(ref, data.X)).squaredNorm();
        const double denom = static_cast<double>(n) - gamma_cap;
        if (denom >= 1.0) {
            sigma2_hat = rss_ref / denom;
        } else {
            sigma2_hat = rss_ref;
            res.sigma2_fallback = true;
        }
    }

    std::vector<double> bic(static_cast<std::size_t>(kcap) + 1);
    const double logn = std::log(static_cast<double>(n));
    for (int k = 0; k <= kcap; ++k) {
        const double gamma = dof_estimate(data, k);
        double rss;
        if (k == 0) {
            rss = rss_about_mean(data.y);
        } else {
            const PlsModel m = fit_pipeline(data, k);
            rss = (data.y - predict(m, data.X)).squaredNorm();
        }
        bic[static_cast<std::size_t>(k)] =
            rss / n + logn * (gamma / n) * sigma2_hat;
        TraceRow row;
        row.k = k;
        row.statistic = bic[static_cast<std::size_t>(k)];
        row.bic = row.statistic;
        row.rss = rss;
        row.dof = gamma;
        row.sigma2_hat = sigma2_hat;
        res.trace.push_back(row);
    }

    int K = 0;
    if (rule == BicRule::FirstLocalMin) {
        for (int k = 0; k <= kcap; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const bool left_ok = k == 0 || bic[ks] < bic[ks - 1];
            const bool right_ok = k == kcap || bic[ks] <= bic[ks + 1];
            if (left_ok && right_ok) {
                K = k;
                break;
            }
        }
    } else {
        K = static_cast<int>(std::min_element(bic.begin(), bic.end()) -
                             bic.begin());
    }
    res.K = K;
    res.trace[static_cast<std::size_t>(K)].decision = true;
    return res;
}

CriterionResult select_aic_bic_naive(const Dataset& data, int kmax,
                                     InfoCriterion which) {
    data.validate();
    const int n = static_cast<int>(data.n());

    CriterionResult res;
    res.criterion =
        which == InfoCriterion::Aic ? Criterion::Aic : Criterion::Bic;

    int kcap = resolve_kmax(data, kmax);
    if (kcap > kNaiveCap) {
        kcap = kNaiveCap;
        res.k_capped = true;
    }
    const int attain = attainable_kmax(data, kcap);
    if (attain < kcap) {
        kcap = attain;
        res.k_capped = true;
    }

    const double logn = std::log(static_cast<double>(n));
    std::vector<double> crit(static_cast<std::size_t>(kcap) + 1);
    for (int k = 0; k <= kcap; ++k) {
        const PlsModel m = fit_pipeline(data, k);
        res.glm_nonconvergence += m.glm_nonconvergence;
        const double ll = m.final_loglik;
        const double params = static_cast<double>(k + 1);
        const double aic = -2.0 * ll + 2.0 * params;
        const double bic = -2.0 * ll + params * logn;
        crit[static_cast<std::size_t>(k)] =
            which == InfoCriterion::Aic ? aic : bic;
        TraceRow row;
        row.k = k;
        row.aic = aic;
        row.bic = bic;
        row.statistic = crit[static_cast<std::size_t>(k)];
        res.trace.push_back(row);
    }
    res.K = static_cast<int>(std::min_element(crit.begin(), crit.end()) -
                             crit.begin());
    res.trace[static_cast<std::size_t>(res.K)].decision = true;
    return res;
}

CriterionResult select_cv_missclassed(const Dataset& data, int kmax,
                                      const FoldSpec& folds,
                                      std::uint64_t seed) {
    if (data.family != Family::Binomial)
        throw InvalidArgs("criterion requires binomial family");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int p = static_cast<int>(data.p());

    CriterionResult res;
    res.criterion = Criterion::CvMissclassed;

    const int q = folds.loo ? n : folds.q;
    if (q < 2 || q > n) throw InvalidArgs("fold count must lie in [2, n]");
    const int biggest_fold = n / q + (n % q ? 1 : 0);
    int kcap = resolve_kmax(data, kmax);
    kcap = std::min(kcap, std::min(n - biggest_fold - 1, p));
    if (kcap < resolve_kmax(data, kmax)) res.k_capped = true;

    const auto fold_sets = make_folds(n, folds, seed);
    std::vector<int> wrong(static_cast<std::size_t>(kcap) + 1, 0);

    for (const auto& fold : fold_sets) {
        const Dataset train = data.rows(complement_of(fold, n));
        const Eigen::MatrixXd X_hold = take_rows(data.X, fold);
        const Eigen::VectorXd y_hold = take_rows(data.y, fold);

        auto [train_std, scaling] = center_scale(train);
        const PlsModel m = kcap > 0
                               ? fit_plsglr(train_std, scaling, kcap)
                               : fit_pipeline(train, 0);
        res.glm_nonconvergence += m.glm_nonconvergence;

        // Standardize the held-out block with the fold's own scaling.
        Eigen::MatrixXd Xh_std = X_hold;
        for (Eigen::Index j = 0; j < Xh_std.cols(); ++j)
            Xh_std.col(j) =
                (Xh_std.col(j).array() - scaling.x_mean[j]) / scaling.x_sd[j];

        for (int k = 0; k <= kcap; ++k) {
            Eigen::VectorXd prob;
            if (k == 0) {
                prob = Eigen::VectorXd::Constant(y_hold.size(),
                                                 train.y.mean());
            } else {
                const int kk = std::min(k, m.k);  // fold may have collapsed
                if (kk == 0) {
                    prob = Eigen::VectorXd::Constant(y_hold.size(),
                                                     train.y.mean());
                } else {
                    GlmFit f = fit_irls(m.T.leftCols(kk), train.y,
                                        Family::Binomial);
                    if (!f.converged) ++res.glm_nonconvergence;
                    const Eigen::MatrixXd Wk = m.W.leftCols(kk);
                    const Eigen::MatrixXd Pk = m.P.leftCols(kk);
                    const Eigen::MatrixXd Wstar =
                        Wk * (Pk.transpose() * Wk)
                                 .partialPivLu()
                                 .solve(Eigen::MatrixXd::Identity(kk, kk));
                    const Eigen::MatrixXd Th = Xh_std * Wstar;
                    Eigen::VectorXd eta =
                        Eigen::VectorXd::Constant(Th.rows(), f.coef[0]);
                    eta.noalias() += Th * f.coef.tail(kk);
                    prob = eta.unaryExpr(
                        [](double e) { return inv_logit(e); });
                }
            }
            int miss = 0;
            for (Eigen::Index i = 0; i < y_hold.size(); ++i) {
                const int cls = prob[i] > 0.5 ? 1 : 0;
                if (cls != static_cast<int>(y_hold[i])) ++miss;
            }
            wrong[static_cast<std::size_t>(k)] += miss;
        }
    }

    int K = 0;
    for (int k = 0; k <= kcap; ++k) {
        TraceRow row;
        row.k = k;
        row.statistic = wrong[static_cast<std::size_t>(k)];
        row.missclassed = wrong[static_cast<std::size_t>(k)];
        res.trace.push_back(row);
        if (wrong[static_cast<std::size_t>(k)] <
            wrong[static_cast<std::size_t>(K)])
            K = k;
    }
    res.K = K;
    res.trace[static_cast<std::size_t>(K)].decision = true;
    return res;
}

CriterionResult select_pval(const Dataset& data, int kmax, double alpha) {
    if (data.family == Family::Gaussian)
        throw InvalidArgs("criterion requires binomial or poisson family");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgs("alpha must lie in (0, 1)");
    data.validate();

    CriterionResult res;
    res.criterion = Criterion::PVal;

    const int kcap = resolve_kmax(data, kmax);
    auto [std_data, scaling] = center_scale(data);
    const PlsModel m = fit_plsglr(std_data, scaling, kcap);
    res.glm_nonconvergence = m.glm_nonconvergence;
    if (m.k < kcap) res.k_capped = true;

    for (int k = 1; k <= m.k; ++k) {
        const double minp = m.step_pvalues.col(k - 1).minCoeff();
        TraceRow row;
        row.k = k;
        row.statistic = minp;
        row.min_wald_p = minp;
        row.decision = minp < alpha;
        res.trace.push_back(row);
        if (!row.decision) break;
        res.K = k;
    }
    return res;
}

CriterionResult select_boot_yt(const Dataset& data, const ResamplePlan& plan,
                               int kmax) {
    plan.validate();
    data.validate();
    const int n = static_cast<int>(data.n());
    const int p = static_cast<int>(data.p());

    CriterionResult res;
    res.criterion = Criterion::BootYT;

    const int kcap = resolve_kmax(data, kmax);
    auto [std_data, scaling] = center_scale(data);
    const bool gaussian = data.family == Family::Gaussian;

    // Components are recomputed from scratch for each candidate k (the
    // prefix columns agree; this keeps every step self-contained).
    auto fit_k = [&](int k) {
        return gaussian ? fit_pls(std_data, scaling, k)
                        : fit_plsglr(std_data, scaling, k);
    };

    auto trace_row_for = [&](int k) -> TraceRow& {
        while (static_cast<int>(res.trace.size()) < k) {
            TraceRow row;
            row.k = static_cast<int>(res.trace.size()) + 1;
            res.trace.push_back(row);
        }
        return res.trace[static_cast<std::size_t>(k - 1)];
    };

    // --- X step: how many components does X itself support? -------------
    int k_max = 0;
    for (int k = 1; k <= kcap; ++k) {
        const PlsModel m = fit_k(k);
        if (m.k < k) break;  // rank exhausted: X carries no k-th direction

        const Eigen::MatrixXd& T = m.T;
        const Eigen::VectorXd theta =
            last_coef_ols_multi(T, std_data.X);  // loadings of component k

        // Leave-one-out loadings (acceleration), same regression.
        Eigen::MatrixXd jack(n, p);
        for (int i = 0; i < n; ++i) {
            const auto keep = jackknife_indices(n, i);
            jack.row(i) =
                last_coef_ols_multi(take_rows(T, keep),
                                    take_rows(std_data.X, keep));
        }

        // Bootstrap loadings from resampled (X, T) pairs.
        const std::uint64_t seed_k =
            rng::derive(plan.seed, 1, static_cast<std::uint64_t>(k));
        Eigen::MatrixXd boot(plan.R, p);
        for (int r = 0; r < plan.R; ++r) {
            const auto idx = bootstrap_indices(n, seed_k, r);
            boot.row(r) = last_coef_ols_multi(take_rows(T, idx),
                                              take_rows(std_data.X, idx));
        }

        std::vector<BcaInterval> cis;
        cis.reserve(static_cast<std::size_t>(p));
        int excluding = 0;
        for (int l = 0; l < p; ++l) {
            std::vector<double> bl(static_cast<std::size_t>(plan.R));
            for (int r = 0; r < plan.R; ++r) bl[static_cast<std::size_t>(r)] = boot(r, l);
            std::vector<double> jl(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) jl[static_cast<std::size_t>(i)] = jack(i, l);
            BcaInterval ci = bca_interval(bl, theta[l], jl, plan.alpha,
                                          Sidedness::Bilateral);
            if (ci.lower > 0.0 || ci.upper < 0.0) ++excluding;
            cis.push_back(ci);
        }
        res.x_step_cis.push_back(std::move(cis));
        trace_row_for(k).x_excluding = excluding;

        if (excluding == 0) break;  // component k is not real in X
        k_max = k;
    }
    res.k_max = k_max;

    // --- y step: significance of c_k given the components ----------------
    int K = 0;
    for (int k = 1; k <= k_max; ++k) {
        const PlsModel m = fit_k(k);
        const Eigen::MatrixXd& T = m.T;
        const Eigen::VectorXd& y_work = gaussian ? std_data.y : data.y;

        auto coef_k = [&](const Eigen::MatrixXd& Tsub,
                          const Eigen::VectorXd& ysub) -> double {
            if (gaussian) return last_coef_ols(Tsub, ysub);
            try {
                GlmFit f = fit_irls(Tsub, ysub, data.family, true);
                if (!f.converged) ++res.glm_nonconvergence;
                return f.coef[f.coef.size() - 1];
            } catch (const SingularDesign&) {
                ++res.glm_nonconvergence;
                return 0.0;
            }
        };

        const double theta = coef_k(T, y_work);

        std::vector<double> jack(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto keep = jackknife_indices(n, i);
            jack[static_cast<std::size_t>(i)] =
                coef_k(take_rows(T, keep), take_rows(y_work, keep));
        }

        const std::uint64_t seed_k =
            rng::derive(plan.seed, 2, static_cast<std::uint64_t>(k));
        std::vector<double> boot(static_cast<std::size_t>(plan.R));
        for (int r = 0; r < plan.R; ++r) {
            const auto idx = bootstrap_indices(n, seed_k, r);
            boot[static_cast<std::size_t>(r)] =
                coef_k(take_rows(T, idx), take_rows(y_work, idx));
        }

        const BcaInterval ci = bca_interval(boot, theta, jack, plan.alpha,
                                            Sidedness::LowerUnilateral);
        res.y_step_cis.push_back(ci);
        TraceRow& row = trace_row_for(k);
        row.statistic = ci.lower;
        row.ci_lower = ci.lower;
        row.ci_upper = ci.upper;
        row.decision = ci.lower > 0.0;
        if (!row.decision) break;
        K = k;
    }
    res.K = K;
    return res;
}

CriterionResult run_criterion(const Dataset& data, const CriterionSpec& spec) {
    switch (spec.criterion) {
        case Criterion::Q2:
            return select_q2(data, spec.kmax, spec.folds, spec.seed);
        case Criterion::BicDof:
            return select_bic_dof(data, spec.kmax, BicRule::FirstLocalMin);
        case Criterion::BicGlob:
            return select_bic_dof(data, spec.kmax, BicRule::GlobalMin);
        case Criterion::Aic:
            return select_aic_bic_naive(data, spec.kmax, InfoCriterion::Aic);
        case Criterion::Bic:
            return select_aic_bic_naive(data, spec.kmax, InfoCriterion::Bic);
        case Criterion::CvMissclassed:
            return select_cv_missclassed(data, spec.kmax, spec.folds,
                                         spec.seed);
        case Criterion::PVal:
            return select_pval(data, spec.kmax, spec.alpha);
        case Criterion::BootYT: {
            ResamplePlan plan;
            plan.R = spec.R;
            plan.seed = spec.seed;
            plan.alpha = spec.alpha;
            return select_boot_yt(data, plan, spec.kmax);
        }
    }
    throw InvalidArgs("unknown criterion");
}

}  // namespace plsstop
