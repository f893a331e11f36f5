#include "plsstop/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "plsstop/errors.hpp"
#include "plsstop/evaluation.hpp"
#include "plsstop/glm.hpp"
#include "plsstop/rng.hpp"

namespace plsstop {

void SimConfig::validate() const {
    if (n < 6) throw InvalidArgs("simulation needs n >= 6");
    if (p_min < 2 || p_max < p_min)
        throw InvalidArgs("need 2 <= p_min <= p_max");
    for (int j = 0; j < 4; ++j)
        if (!(sigma[static_cast<std::size_t>(j)] > 0.0))
            throw InvalidArgs("latent sds must be positive");
    if (sigma[4] < 0.0) throw InvalidArgs("response noise sd must be >= 0");
    if (test_rows < 0) throw InvalidArgs("test_rows must be >= 0");
}

namespace {

double sample_sd(const Eigen::VectorXd& v) {
    const double m = v.mean();
    return std::sqrt((v.array() - m).square().sum() /
                     static_cast<double>(v.size() - 1));
}

// Latent scale on the link/response scale: gaussian keeps the raw sum,
// binomial pins its sd at 3, poisson at 1.727 (log scale).
double eta_scale_for(Family family, const std::array<double, 5>& sigma) {
    const double eta_sd = std::sqrt(sigma[0] * sigma[0] + sigma[1] * sigma[1] +
                                    sigma[2] * sigma[2]);
    switch (family) {
        case Family::Gaussian: return 1.0;
        case Family::Binomial: return 3.0 / eta_sd;
        case Family::Poisson: return 1.727 / eta_sd;
    }
    return 1.0;
}

double draw_response(Family family, double eta, std::mt19937_64& eng) {
    switch (family) {
        case Family::Gaussian:
            return eta;  // noise already added by the caller
        case Family::Binomial:
            return rng::uniform01(eng) < inv_logit(eta) ? 1.0 : 0.0;
        case Family::Poisson: {
            const double mu = std::exp(std::min(std::max(eta, -30.0), 30.0));
            std::poisson_distribution<long> pd(mu);
            return static_cast<double>(pd(eng));
        }
    }
    return eta;
}

}  // namespace

SimulatedDataset simulate_univ_yx(const SimConfig& config, int replicate) {
    config.validate();
    if (replicate < 0) throw InvalidArgs("replicate must be >= 0");

    auto eng = rng::engine(
        rng::derive(config.seed, static_cast<std::uint64_t>(replicate)));
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int n = config.n;
    const int p = config.p_min +
                  static_cast<int>(rng::bounded(
                      eng, static_cast<std::uint64_t>(config.p_max -
                                                      config.p_min + 1)));

    // Four latent columns: centered, exactly orthogonalized (modified
    // Gram-Schmidt), then rescaled to exact sample sds sigma[0..3].
    Eigen::MatrixXd L(n, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < n; ++i)
            L(i, j) = config.sigma[static_cast<std::size_t>(j)] * gauss(eng);
    for (int j = 0; j < 4; ++j) {
        L.col(j).array() -= L.col(j).mean();
        for (int prev = 0; prev < j; ++prev) {
            const double coef =
                L.col(prev).dot(L.col(j)) / L.col(prev).squaredNorm();
            L.col(j) -= coef * L.col(prev);
        }
        const double sd = sample_sd(L.col(j));
        if (!(sd > 0.0))
            throw InvalidArgs("degenerate latent draw (n too small?)");
        L.col(j) *= config.sigma[static_cast<std::size_t>(j)] / sd;
    }

    // Mixing matrix: unit-norm rows drawn from the 16 signed Hadamard
    // patterns, in orthogonal blocks of four.  Equal-sd columns keep the
    // per-column standardization from rotating the latent directions, so
    // three components recover the signal exactly (up to the y-noise) and
    // the fourth stays useless for the response.
    static const double kH[4][4] = {{1, 1, 1, 1},
                                    {1, -1, 1, -1},
                                    {1, 1, -1, -1},
                                    {1, -1, -1, 1}};
    Eigen::MatrixXd A(p, 4);
    double sign[4] = {1, 1, 1, 1};
    for (int j = 0; j < p; ++j) {
        if (j % 4 == 0)
            for (double& s : sign) s = rng::uniform01(eng) < 0.5 ? -1.0 : 1.0;
        for (int m = 0; m < 4; ++m) A(j, m) = 0.5 * kH[j % 4][m] * sign[m];
    }

    SimulatedDataset out;
    out.latent = L;
    out.mixing = A;
    out.p_drawn = p;
    out.eta_scale = eta_scale_for(config.family, config.sigma);

    out.train.family = config.family;
    out.train.X = L * A.transpose();
    out.train.y.resize(n);
    const Eigen::VectorXd eta_raw = L.col(0) + L.col(1) + L.col(2);
    for (int i = 0; i < n; ++i) {
        const double noise = config.sigma[4] * gauss(eng);
        if (config.family == Family::Gaussian) {
            out.train.y[i] = eta_raw[i] + noise;
        } else {
            out.train.y[i] = draw_response(
                config.family, out.eta_scale * eta_raw[i] + noise, eng);
        }
    }

    if (config.test_rows > 0) {
        // Fresh draws from the population law: raw gaussian latents, same
        // mixing, no re-orthogonalization.
        const int m = config.test_rows;
        Eigen::MatrixXd Lt(m, 4);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < m; ++i)
                Lt(i, j) =
                    config.sigma[static_cast<std::size_t>(j)] * gauss(eng);
        Dataset test;
        test.family = config.family;
        test.X = Lt * A.transpose();
        test.y.resize(m);
        const Eigen::VectorXd eta_t = Lt.col(0) + Lt.col(1) + Lt.col(2);
        for (int i = 0; i < m; ++i) {
            const double noise = config.sigma[4] * gauss(eng);
            if (config.family == Family::Gaussian)
                test.y[i] = eta_t[i] + noise;
            else
                test.y[i] = draw_response(
                    config.family, out.eta_scale * eta_t[i] + noise, eng);
        }
        out.test = std::move(test);
    }
    return out;
}

std::vector<GridRow> grid_run(
    const std::vector<std::pair<double, double>>& couples,
    const SimConfig& base, const std::vector<Criterion>& criteria,
    const GridOptions& options) {
    if (couples.empty()) throw InvalidArgs("grid_run: no sigma couples");
    if (criteria.empty()) throw InvalidArgs("grid_run: no criteria");
    if (options.datasets_per_cell < 1)
        throw InvalidArgs("grid_run: datasets_per_cell must be >= 1");
    if (options.jobs < 1) throw InvalidArgs("grid_run: jobs must be >= 1");

    const std::size_t dpc = static_cast<std::size_t>(options.datasets_per_cell);
    const std::size_t n_cells = couples.size() * dpc;
    const std::size_t n_crit = criteria.size();
    std::vector<GridRow> rows(n_cells * n_crit);

    // Each (couple, replicate) cell is independent and carries its own
    // derived seed, so any scheduling yields identical rows.
    auto run_cell = [&](std::size_t cell) {
        const std::size_t couple_idx = cell / dpc;
        const int rep = static_cast<int>(cell % dpc);
        const auto [s4, s5] = couples[couple_idx];

        SimConfig cfg = base;
        cfg.sigma[3] = s4;
        cfg.sigma[4] = s5;
        cfg.seed = rng::derive(options.seed, couple_idx);

        for (std::size_t qi = 0; qi < n_crit; ++qi) {
            GridRow& row = rows[cell * n_crit + qi];
            row.sigma4 = s4;
            row.sigma5 = s5;
            row.replicate = rep;
            row.criterion = criteria[qi];
        }

        SimulatedDataset sim;
        try {
            sim = simulate_univ_yx(cfg, rep);
        } catch (const std::exception& e) {
            for (std::size_t qi = 0; qi < n_crit; ++qi)
                rows[cell * n_crit + qi].error = e.what();
            return;
        }

        for (std::size_t qi = 0; qi < n_crit; ++qi) {
            GridRow& row = rows[cell * n_crit + qi];
            row.p_drawn = sim.p_drawn;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                CriterionSpec spec;
                spec.criterion = criteria[qi];
                spec.kmax = options.kmax;
                spec.alpha = options.alpha;
                spec.R = options.R;
                spec.folds = options.folds;
                spec.seed = rng::derive(options.seed, couple_idx,
                                        static_cast<std::uint64_t>(rep), qi);
                const CriterionResult res = run_criterion(sim.train, spec);
                row.K = res.K;

                const PlsModel refit = fit_pipeline(sim.train, res.K);
                const double ybar_train = sim.train.y.mean();
                row.nmse_train = nmse(sim.train.y,
                                      predict(refit, sim.train.X), ybar_train);
                if (sim.test) {
                    const Eigen::VectorXd pred =
                        predict(refit, sim.test->X);
                    row.nmse_test = nmse(sim.test->y, pred, ybar_train);
                    if (base.family == Family::Binomial)
                        row.missclassed_test =
                            missclassed_count(sim.test->y, pred);
                }
            } catch (const std::exception& e) {
                row.K = -1;
                row.error = e.what();
            }
            if (options.timings) {
                const auto t1 = std::chrono::steady_clock::now();
                row.runtime_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
            }
        }
    };

    const int jobs =
        std::min<int>(options.jobs, static_cast<int>(n_cells));
    if (jobs <= 1) {
        for (std::size_t cell = 0; cell < n_cells; ++cell) run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t cell = next.fetch_add(1);
                    if (cell >= n_cells) break;
                    run_cell(cell);
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace plsstop
