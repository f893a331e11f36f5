#include "plsstop/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "plsstop/errors.hpp"
#include "plsstop/rng.hpp"
#include "plsstop/simulation.hpp"
#include "plsstop/stats.hpp"

namespace plsstop {

double nmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred,
            double y_train_mean) {
    if (y_true.size() != y_pred.size())
        throw DimensionMismatch("nmse: length mismatch");
    if (y_true.size() == 0) throw InvalidArgs("nmse: empty sample");
    const double denom = (y_true.array() - y_train_mean).square().sum();
    if (!(denom > 0.0))
        throw ZeroDenominator("nmse: reference sum of squares is zero");
    return (y_true - y_pred).squaredNorm() / denom;
}

int missclassed_count(const Eigen::VectorXd& y01,
                      const Eigen::VectorXd& prob) {
    if (y01.size() != prob.size())
        throw DimensionMismatch("missclassed_count: length mismatch");
    int miss = 0;
    for (Eigen::Index i = 0; i < y01.size(); ++i) {
        const int cls = prob[i] > 0.5 ? 1 : 0;  // exactly 0.5 -> class 0
        if (cls != static_cast<int>(y01[i])) ++miss;
    }
    return miss;
}

TTestResult welch_t_test(const std::vector<double>& a,
                         const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw InvalidArgs("welch_t_test needs >= 2 observations per sample");

    TTestResult r;
    r.n_a = static_cast<int>(a.size());
    r.n_b = static_cast<int>(b.size());
    r.mean_a = stats::mean(a);
    r.mean_b = stats::mean(b);
    r.var_a = stats::variance(a);
    r.var_b = stats::variance(b);

    if (r.var_a == 0.0 && r.var_b == 0.0)
        throw DegenerateVariances("welch_t_test: both samples are constant");

    const double qa = r.var_a / r.n_a;
    const double qb = r.var_b / r.n_b;
    const double se = std::sqrt(qa + qb);
    r.t = (r.mean_a - r.mean_b) / se;
    // Welch-Satterthwaite degrees of freedom (real-valued).
    r.df = (qa + qb) * (qa + qb) /
           (qa * qa / (r.n_a - 1) + qb * qb / (r.n_b - 1));
    r.p = 2.0 * stats::t_cdf(-std::abs(r.t), r.df);
    return r;
}

boost::multiprecision::cpp_int partition_count(long n, long q) {
    if (n < 1) throw InvalidArgs("partition_count: n must be >= 1");
    if (q < 1 || q > n)
        throw InvalidArgs("partition_count: q must lie in [1, n]");
    using boost::multiprecision::cpp_int;
    auto factorial = [](long m) {
        cpp_int f = 1;
        for (long i = 2; i <= m; ++i) f *= i;
        return f;
    };
    auto ipow = [](cpp_int base, long e) {
        cpp_int out = 1;
        for (long i = 0; i < e; ++i) out *= base;
        return out;
    };
    const long s = n / q, r = n % q;
    // r groups of size s+1, q-r groups of size s; the division is exact.
    const cpp_int denom = factorial(r) * factorial(q - r) *
                          ipow(factorial(s + 1), r) * ipow(factorial(s), q - r);
    return factorial(n) / denom;
}

KHistogram robustness_distribution(const Dataset& data,
                                   const CriterionSpec& spec,
                                   ResampleMode mode, int B,
                                   std::uint64_t seed) {
    data.validate();
    const int n = static_cast<int>(data.n());
    if (mode == ResampleMode::Bootstrap && B < 1)
        throw InvalidArgs("robustness: B must be >= 1");

    const std::uint64_t idx_seed = rng::derive(seed, 1);
    const std::uint64_t crit_seed = rng::derive(seed, 2);
    const int total = mode == ResampleMode::Bootstrap ? B : n;

    KHistogram hist;
    hist.total = total;
    double k_sum = 0.0;
    int ok = 0;

    for (int r = 0; r < total; ++r) {
        std::vector<int> idx =
            mode == ResampleMode::Bootstrap
                ? bootstrap_indices(n, idx_seed, r)
                : jackknife_indices(n, r);
        CriterionSpec sub = spec;
        sub.seed = rng::derive(crit_seed, static_cast<std::uint64_t>(r));
        try {
            const Dataset resampled = data.rows(idx);
            const CriterionResult res = run_criterion(resampled, sub);
            ++hist.counts[res.K];
            k_sum += res.K;
            ++ok;
        } catch (const std::exception&) {
            ++hist.errors;
        }
    }

    hist.mean_k = ok > 0 ? k_sum / ok : 0.0;
    hist.mode_k = -1;
    int best = -1;
    for (const auto& [k, cnt] : hist.counts) {
        if (cnt > best) {  // map iterates ascending: smallest K wins ties
            best = cnt;
            hist.mode_k = k;
        }
    }
    return hist;
}

GridSummary summarize_grid(const std::vector<GridRow>& rows, double alpha) {
    GridSummary out;

    // Preserve first-appearance order of couples and criteria.
    std::vector<std::pair<double, double>> couples;
    std::vector<Criterion> criteria;
    for (const auto& row : rows) {
        const std::pair<double, double> cp{row.sigma4, row.sigma5};
        if (std::find(couples.begin(), couples.end(), cp) == couples.end())
            couples.push_back(cp);
        if (std::find(criteria.begin(), criteria.end(), row.criterion) ==
            criteria.end())
            criteria.push_back(row.criterion);
    }

    struct Samples {
        std::vector<double> k, nmse_train, nmse_test, missclassed;
        int n_ok = 0;
    };

    for (const auto& cp : couples) {
        std::vector<Samples> per_crit(criteria.size());
        for (const auto& row : rows) {
            if (row.sigma4 != cp.first || row.sigma5 != cp.second) continue;
            if (!row.error.empty()) continue;
            const std::size_t ci = static_cast<std::size_t>(
                std::find(criteria.begin(), criteria.end(), row.criterion) -
                criteria.begin());
            Samples& s = per_crit[ci];
            ++s.n_ok;
            s.k.push_back(row.K);
            if (std::isfinite(row.nmse_train))
                s.nmse_train.push_back(row.nmse_train);
            if (std::isfinite(row.nmse_test))
                s.nmse_test.push_back(row.nmse_test);
            if (row.missclassed_test >= 0)
                s.missclassed.push_back(row.missclassed_test);
        }

        auto add_stat = [&](Criterion c, const std::string& metric,
                            const std::vector<double>& v, int n_ok) {
            if (v.empty()) return;
            SummaryStatRow row;
            row.sigma4 = cp.first;
            row.sigma5 = cp.second;
            row.criterion = c;
            row.metric = metric;
            row.n_ok = n_ok;
            row.mean = stats::mean(v);
            row.variance = stats::variance(v);
            out.stats.push_back(row);
        };

        for (std::size_t ci = 0; ci < criteria.size(); ++ci) {
            const Samples& s = per_crit[ci];
            add_stat(criteria[ci], "K", s.k, s.n_ok);
            add_stat(criteria[ci], "nmse_train", s.nmse_train, s.n_ok);
            add_stat(criteria[ci], "nmse_test", s.nmse_test, s.n_ok);
            add_stat(criteria[ci], "missclassed_test", s.missclassed, s.n_ok);
        }

        // Pairwise held-out comparisons (lower is better for both metrics).
        auto add_test = [&](std::size_t ca, std::size_t cb,
                            const std::string& metric,
                            const std::vector<double>& va,
                            const std::vector<double>& vb) {
            if (metric == "nmse_test" && va.empty() && vb.empty()) return;
            if (metric == "missclassed_test" && va.empty() && vb.empty())
                return;
            SummaryTestRow row;
            row.sigma4 = cp.first;
            row.sigma5 = cp.second;
            row.criterion_a = criteria[ca];
            row.criterion_b = criteria[cb];
            row.metric = metric;
            if (va.size() < 2 || vb.size() < 2) {
                row.verdict = "insufficient";
                out.tests.push_back(row);
                return;
            }
            row.mean_a = stats::mean(va);
            row.mean_b = stats::mean(vb);
            try {
                const TTestResult t = welch_t_test(va, vb);
                row.t = t.t;
                row.df = t.df;
                row.p = t.p;
                if (t.p < alpha)
                    row.verdict = t.mean_a < t.mean_b ? "A_better" : "B_better";
                else
                    row.verdict = "no_difference";
            } catch (const DegenerateVariances&) {
                row.verdict = "insufficient";
            }
            out.tests.push_back(row);
        };

        for (std::size_t ca = 0; ca + 1 < criteria.size(); ++ca)
            for (std::size_t cb = ca + 1; cb < criteria.size(); ++cb) {
                add_test(ca, cb, "nmse_test", per_crit[ca].nmse_test,
                         per_crit[cb].nmse_test);
                add_test(ca, cb, "missclassed_test", per_crit[ca].missclassed,
                         per_crit[cb].missclassed);
            }
    }
    return out;
}

}  // namespace plsstop
