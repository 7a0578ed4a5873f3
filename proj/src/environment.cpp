#include "fairpc/environment.hpp"

#include <algorithm>
#include <string>

#include "fairpc/errors.hpp"

namespace fairpc {

double InstanceSpec::min_mean() const {
    return *std::min_element(means.begin(), means.end());
}

double InstanceSpec::max_mean() const {
    return *std::max_element(means.begin(), means.end());
}

InstanceSpec validate_instance(InstanceSpec spec, const FeasibleFamily& family) {
    if (spec.num_arms < 1) throw config_error("instance needs num_arms >= 1");
    if (static_cast<int>(spec.means.size()) != spec.num_arms) {
        throw config_error("instance means length != num_arms");
    }
    if (static_cast<int>(spec.targets.size()) != spec.num_arms) {
        throw config_error("instance targets length != num_arms");
    }
    for (int n = 0; n < spec.num_arms; ++n) {
        const double mu = spec.means[static_cast<size_t>(n)];
        const double lambda = spec.targets[static_cast<size_t>(n)];
        if (!(mu > 0.0) || mu > 1.0) {
            throw config_error("mean of arm " + std::to_string(n) + " must lie in (0, 1]");
        }
        if (!(lambda > 0.0)) {
            throw config_error("target of arm " + std::to_string(n) + " must be positive");
        }
    }
    if (family.num_arms() != spec.num_arms) {
        throw config_error("family arm count does not match instance num_arms");
    }
    spec.s_max = family.max_cardinality();
    return spec;
}

Environment::Environment(InstanceSpec spec, FeasibleFamily family)
    : spec_(validate_instance(std::move(spec), family)), family_(std::move(family)) {}

void Environment::draw_rewards(const SuperArm& pulled, const RngStream& round_stream,
                               std::vector<RewardDraw>& out) const {
    out.clear();
    if (pulled.arms.empty() && pulled.index < 0) return;  // comparison placeholder: no pulls
    if (pulled.index < 0 || pulled.index >= family_.size() ||
        family_.member(pulled.index).arms != pulled.arms) {
        throw structural_error("pulled super arm " + to_string(pulled) +
                               " is not a member of the feasible family");
    }
    out.reserve(pulled.arms.size());
    for (int32_t arm : pulled.arms) {
        const bool hit =
            round_stream.bernoulli_at(static_cast<uint64_t>(arm), spec_.means[static_cast<size_t>(arm)]);
        out.push_back(RewardDraw{arm, hit ? 1 : 0});
    }
}

std::vector<RewardDraw> Environment::draw_rewards(const SuperArm& pulled,
                                                  const RngStream& round_stream) const {
    std::vector<RewardDraw> out;
    draw_rewards(pulled, round_stream, out);
    return out;
}

}  // namespace fairpc
