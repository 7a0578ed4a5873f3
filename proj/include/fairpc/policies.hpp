#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairpc/environment.hpp"
#include "fairpc/feasible_sets.hpp"
#include "fairpc/rng.hpp"

namespace fairpc {

enum class PolicyVariant {
    lcfl,                    // pick M at random, compare with previous selection
    pessimistic_optimistic,  // direct argmax over the full family
    queue_pc,                // pick-and-compare on queue weight only (eta = 0)
    ucb_pc,                  // pick-and-compare on ucb weight only (queues ignored)
};

const char* to_string(PolicyVariant v);
PolicyVariant policy_variant_from_string(const std::string& s);

struct PolicyConfig {
    std::string name;
    PolicyVariant variant = PolicyVariant::lcfl;
    double eta = 0.0;      // weight on the ucb estimate
    double epsilon = 0.0;  // virtual-queue drift pad, in [0, 1)
    int m_picks = 1;       // subsets sampled per round

    void validate(const FeasibleFamily& family) const;
};

// Marker for "no previous selection"; compares as an empty super arm of weight zero
// and loses every tie against a real member.
inline constexpr int32_t kNoSelection = -1;

struct PolicyState {
    uint64_t round = 0;
    std::vector<double> queues;        // Q_n >= 0
    std::vector<int64_t> pulls;        // H_n
    std::vector<int64_t> reward_sums;  // sum of realized rewards while pulled
    std::vector<double> ucb;           // w_n in [0, 1]; 1 whenever H_n = 0
    int32_t prev_selection = kNoSelection;
};

PolicyState make_initial_state(int num_arms);

// Truncated optimistic estimate: 1 when unexplored, else
// min(mean + sqrt(3 ln(round) / (2 pulls)), 1). Natural log; ln clamped at 0.
double ucb_weight(int64_t pulls, int64_t reward_sum, uint64_t round);

// One step of the virtual-queue recursion: max(q + target - pulled*reward + pad, 0).
double queue_update(double q, double target, double pad, int pulled, int reward);

// Total per-arm weight of a super arm under the given combined weight vector.
double superarm_weight(const SuperArm& s, std::span<const double> combined_weights);

struct StepDiagnostics {
    bool shadow_argmax = false;   // track the full-family argmax references
    bool ucb_drift_check = false; // assert the per-step lower bound on ucb decrease
    double log_horizon = 0.0;     // ln(T), used by the drift bound
};

struct StepOutcome {
    int32_t selected = kNoSelection;
    std::vector<RewardDraw> draws;
    uint64_t comparisons = 0;  // weight evaluations charged this round

    // Shadow diagnostics (valid when requested).
    int32_t weight_argmax = kNoSelection;  // argmax of the policy's own weight
    bool best_pick = false;                // weight_argmax was among the sampled picks
    double queue_gap = 0.0;                // max queue weight minus selected queue weight
    int drift_violations = 0;
};

// Reusable buffers for the hot loop.
struct StepScratch {
    std::vector<int32_t> picks;
    std::vector<double> combined;
    std::vector<double> prev_ucb;
};

// Runs one round: sample candidates, compare against the previous selection, pull,
// then refresh queues and ucb estimates for the next round. The reward stream must
// be the environment's stream for (replication, state.round).
StepOutcome lcfl_step(PolicyState& state, const FeasibleFamily& family, const PolicyConfig& cfg,
                      const Environment& env, const RngStream& reward_stream,
                      RngStream& sample_stream, const StepDiagnostics& diag, StepScratch& scratch);

}  // namespace fairpc
