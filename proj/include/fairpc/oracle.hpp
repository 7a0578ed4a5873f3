#pragma once

#include <span>
#include <vector>

#include "fairpc/environment.hpp"
#include "fairpc/feasible_sets.hpp"

namespace fairpc {

// Optimal randomized stationary benchmark: maximize expected reward subject to each
// arm's marginal reward meeting its target with slack delta.
//
//   max  sum_S q(S) sum_n mu_n S_n
//   s.t. lambda_n + delta <= mu_n sum_S q(S) S_n   for every arm n
//        sum_S q(S) = 1,  q >= 0
struct OracleSolution {
    std::vector<double> distribution;  // q*(S) per family member, >= 0, sums to 1
    double optimal_reward = 0.0;       // r* = sum_S q*(S) sum_n mu_n S_n
    std::vector<double> marginals;     // E[S*_n] = sum_S q*(S) S_n
    double delta_used = 0.0;
};

// Throws infeasible_error (carrying delta_max) when no distribution satisfies the
// targets at the requested slack.
OracleSolution solve_benchmark(const InstanceSpec& instance, const FeasibleFamily& family,
                               double delta);

// Largest delta for which solve_benchmark is feasible; negative values certify that
// the targets themselves are unattainable.
double max_slack(const InstanceSpec& instance, const FeasibleFamily& family);

// Family member maximizing sum_n weight_n * S_n, smallest canonical index on ties.
int32_t full_argmax(const FeasibleFamily& family, std::span<const double> per_arm_weights);

}  // namespace fairpc
