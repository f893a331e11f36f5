#ifndef PLSSTOP_SIMULATION_HPP
#define PLSSTOP_SIMULATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plsstop/criteria.hpp"
#include "plsstop/dataset.hpp"

namespace plsstop {

// Synthetic-data generator: X mixes four mutually orthogonal latent
// columns with sample sds sigma[0..3]; y depends on the first three only.
struct SimConfig {
    int n = 200;
    int p_min = 7, p_max = 50;       // p drawn uniformly per dataset
    // sigma[0..2]: signal latents; sigma[3]: noise latent inside X;
    // sigma[4]: response noise (gaussian units resp. link-scale units).
    std::array<double, 5> sigma = {10.0, 8.0, 6.0, 0.01, 0.01};
    Family family = Family::Gaussian;
    int test_rows = 0;               // extra rows from the population law
    std::uint64_t seed = 0;

    void validate() const;           // throws InvalidArgs
};

struct SimulatedDataset {
    Dataset train;
    std::optional<Dataset> test;
    Eigen::MatrixXd latent;          // n x 4, exactly orthogonal columns
    Eigen::MatrixXd mixing;          // p x 4, unit-norm rows
    int p_drawn = 0;
    double eta_scale = 1.0;          // link-scale multiplier on l1+l2+l3
    int true_k = 3;
};

// Deterministic in (config.seed, replicate).
SimulatedDataset simulate_univ_yx(const SimConfig& config, int replicate);

// One grid cell result: a criterion run on one simulated dataset.
struct GridRow {
    double sigma4 = 0.0, sigma5 = 0.0;
    int replicate = 0;
    int p_drawn = 0;
    Criterion criterion = Criterion::Q2;
    int K = -1;                      // -1 on error
    double nmse_train = std::numeric_limits<double>::quiet_NaN();
    double nmse_test = std::numeric_limits<double>::quiet_NaN();
    int missclassed_test = -1;       // binomial only
    double runtime_ms = 0.0;         // 0 unless timings were requested
    std::string error;               // empty on success
};

struct GridOptions {
    int datasets_per_cell = 20;
    int jobs = 1;
    bool timings = false;
    int kmax = 0;                    // 0 = auto
    double alpha = 0.05;
    int R = 250;                     // bootstrap replicates for grid runs
    FoldSpec folds;
    std::uint64_t seed = 0;
};

// Runs every criterion on every (sigma4, sigma5) couple x replicate.
// Row order is (couple, replicate, criterion) regardless of `jobs`; every
// cell derives its own seed, so results are independent of scheduling.
// Per-cell failures are recorded in GridRow::error and do not abort.
std::vector<GridRow> grid_run(
    const std::vector<std::pair<double, double>>& couples,
    const SimConfig& base, const std::vector<Criterion>& criteria,
    const GridOptions& options);

}  // namespace plsstop

#endif
