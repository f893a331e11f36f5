#ifndef PLSSTOP_RESAMPLING_HPP
#define PLSSTOP_RESAMPLING_HPP

#include <cstdint>
#include <vector>

namespace plsstop {

// Shared configuration for bootstrap confidence-interval work.
struct ResamplePlan {
    int R = 500;                 // bootstrap replicates, >= 50
    std::uint64_t seed = 0;
    double alpha = 0.05;         // CI risk level, in (0, 0.5)

    void validate() const;       // throws InvalidArgs
};

// n indices drawn iid uniform from [0, n). Fully determined by
// (seed, replicate, n); replicates are independent substreams, so the call
// order never matters. The plan overload additionally validates the plan
// and 0 <= replicate < R.
std::vector<int> bootstrap_indices(int n, std::uint64_t seed, int replicate);
std::vector<int> bootstrap_indices(int n, const ResamplePlan& plan,
                                   int replicate);

// The n-1 indices with `leave_out` removed, in ascending order.
std::vector<int> jackknife_indices(int n, int leave_out);

enum class Sidedness { Bilateral, LowerUnilateral };

// Bias-corrected accelerated bootstrap interval.
struct BcaInterval {
    double lower = 0.0;
    double upper = 0.0;
    double z0 = 0.0;             // bias correction
    double accel = 0.0;          // acceleration
    Sidedness sided = Sidedness::Bilateral;
    bool degenerate = false;     // all bootstrap estimates identical
    bool accel_undefined = false;  // jackknife spread was zero -> a = 0
};

// boot: R >= 50 finite bootstrap estimates of theta. jack: leave-one-out
// estimates of theta on the original sample (acceleration). Bilateral
// covers alpha/2 on each side; LowerUnilateral returns [lower, +inf).
// A degenerate bootstrap yields [theta_hat, theta_hat] (bilateral) or
// [theta_hat, +inf) with the flag set, rather than an error.
BcaInterval bca_interval(const std::vector<double>& boot, double theta_hat,
                         const std::vector<double>& jack, double alpha,
                         Sidedness sided);

}  // namespace plsstop

#endif
