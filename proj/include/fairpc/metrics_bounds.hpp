#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairpc/environment.hpp"
#include "fairpc/feasible_sets.hpp"
#include "fairpc/oracle.hpp"
#include "fairpc/policies.hpp"

namespace fairpc {

// Compact record of one replication. Per-round service is reconstructed on demand
// from the selection index and the reward bits of the selected member's arms
// (bit j = reward of the j-th arm in the member's sorted arm list).
struct RunTrace {
    uint64_t horizon = 0;
    int num_arms = 0;
    std::vector<int32_t> selections;    // per round, canonical member index
    std::vector<uint64_t> reward_bits;  // per round
    uint64_t comparisons = 0;           // total weight evaluations

    // Shadow diagnostics; populated only when the run enabled them.
    bool shadow_enabled = false;
    std::vector<uint32_t> best_pick_rounds;  // rounds whose sample held the weight argmax
    std::vector<float> queue_gaps;           // per round, max queue weight minus selected
    uint64_t drift_violations = 0;
};

double realized_reward(const RunTrace& trace, uint64_t round);

// Calls fn(round, member, reward_bits) for rounds [0, upto).
template <typename Fn>
void replay_trace(const RunTrace& trace, const FeasibleFamily& family, uint64_t upto, Fn&& fn) {
    for (uint64_t t = 0; t < upto; ++t) {
        fn(t, family.member(trace.selections[static_cast<size_t>(t)]),
           trace.reward_bits[static_cast<size_t>(t)]);
    }
}

// Cumulative realized service per arm over rounds [0, upto).
std::vector<double> per_arm_service(const RunTrace& trace, const FeasibleFamily& family,
                                    uint64_t upto);

// Positive-part fairness debt summed over arms at round `upto`, on one replication's
// realized service.
double cumulative_violation(const RunTrace& trace, const FeasibleFamily& family,
                            std::span<const double> targets, uint64_t upto);

// Same debt on the cross-replication mean service (the expectation form).
double mean_service_violation(std::span<const RunTrace> traces, const FeasibleFamily& family,
                              std::span<const double> targets, uint64_t upto);

// Cumulative gap to the benchmark's expected reward over rounds [0, upto); may be
// negative on short horizons because the benchmark is constrained.
double pseudo_regret(const RunTrace& trace, const OracleSolution& oracle,
                     std::span<const double> means, const FeasibleFamily& family, uint64_t upto);

// Full violation curve (index t = violation over rounds [0, t)), length horizon + 1.
std::vector<double> violation_curve(const RunTrace& trace, const FeasibleFamily& family,
                                    std::span<const double> targets);
std::vector<double> mean_service_violation_curve(std::span<const RunTrace> traces,
                                                 const FeasibleFamily& family,
                                                 std::span<const double> targets);

// Smallest t with curve[s] == 0 for all s in [t, T]; nullopt if curve[T] > 0.
std::optional<uint64_t> zero_violation_point(std::span<const double> curve);

// Fraction of rounds whose queue-weight gap is at most `gap_bound`. Requires shadow
// diagnostics on the trace.
double queue_gap_frequency(const RunTrace& trace, double gap_bound);

// Every analytical constant of the regret and zero-violation guarantees, evaluated
// for one policy configuration on one instance.
struct BoundReport {
    double alpha = 0.0;  // per-round probability the sample holds the weight argmax
    double c1 = 0.0;     // (alpha^2 - 3 alpha + 2) / alpha^2
    double c2 = 0.0;     // 1/alpha - 1
    double c3 = 0.0;     // -ln(1 - alpha); +inf at alpha = 1
    double delta = 0.0;  // benchmark tightness slack the report was evaluated at

    bool prop2_available = false;  // gamma * delta + gamma - 1 > 0 with a valid D
    std::string unavailable_reason;
    int64_t d_rounds = 0;  // smallest D with gamma(M, D) >= 1 / (1 + delta)
    double gamma = 0.0;    // 1 - (1 - alpha)^D
    double b1 = 0.0;       // 2 N D (1 + eta)
    double zeta = 0.0;     // N / mu_min
    double u_const = 0.0;
    double theta = 0.0;
    double v0 = 0.0;
    double g0 = 0.0;
    double t0 = 0.0;  // zero-violation point bound, g0 / epsilon

    double regret_bound = 0.0;  // includes the min with s_max * mu_max * T

    bool prop1_in_force = false;  // epsilon <= delta / 2
    bool prop2_in_force = false;  // epsilon <= (gamma * delta + gamma - 1) / 2
};

BoundReport compute_bounds(const InstanceSpec& instance, const FeasibleFamily& family,
                           const PolicyConfig& cfg, uint64_t horizon, double delta);

}  // namespace fairpc
