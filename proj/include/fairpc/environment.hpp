#pragma once

#include <cstdint>
#include <vector>

#include "fairpc/feasible_sets.hpp"
#include "fairpc/rng.hpp"

namespace fairpc {

// Ground-truth problem instance. Unknown to policies; they only see reward draws.
struct InstanceSpec {
    int num_arms = 0;
    std::vector<double> means;    // mu_n in (0, 1]
    std::vector<double> targets;  // lambda_n > 0, required long-run reward per arm
    FamilyDescriptor family_spec;
    int s_max = 0;  // max cardinality over the enumerated family (derived)

    double min_mean() const;
    double max_mean() const;
};

struct RewardDraw {
    int32_t arm = 0;
    int value = 0;  // 0 or 1
};

// Immutable after construction; safe to share across replications. Rewards are
// Bernoulli(mu_n), generated lazily for pulled arms only (bandit feedback), from a
// counter stream keyed by (seed, replication, round, arm) so the reward an arm would
// produce in a round does not depend on the policy that pulls it.
class Environment {
public:
    Environment(InstanceSpec spec, FeasibleFamily family);

    const InstanceSpec& spec() const { return spec_; }
    const FeasibleFamily& family() const { return family_; }

    RngStream reward_stream(uint64_t master_seed, uint64_t replication, uint64_t round) const {
        return RngStream(master_seed, StreamPurpose::rewards, replication, round);
    }

    // One draw per arm of `pulled`; throws structural_error if `pulled` is not the
    // family member its index claims.
    std::vector<RewardDraw> draw_rewards(const SuperArm& pulled, const RngStream& round_stream) const;
    void draw_rewards(const SuperArm& pulled, const RngStream& round_stream,
                      std::vector<RewardDraw>& out) const;

private:
    InstanceSpec spec_;
    FeasibleFamily family_;
};

// Validates means/targets ranges and family consistency; fills in s_max.
InstanceSpec validate_instance(InstanceSpec spec, const FeasibleFamily& family);

}  // namespace fairpc
