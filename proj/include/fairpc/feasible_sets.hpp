#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fairpc/rng.hpp"

namespace fairpc {

// A feasible subset of arms pulled together in one round. `arms` is sorted and
// nonempty; `index` is the canonical position within the owning family.
struct SuperArm {
    std::vector<int32_t> arms;
    int32_t index = -1;

    int cardinality() const { return static_cast<int>(arms.size()); }
    bool contains(int32_t arm) const;
};

// Canonical order: lexicographic on the sorted arm lists, i.e. {0} < {0,2} < {1} < {2}.
inline bool canonical_less(const SuperArm& a, const SuperArm& b) { return a.arms < b.arms; }

struct FamilyDescriptor {
    enum class Kind { singletons, k_subsets, independent_sets, explicit_list };

    Kind kind = Kind::singletons;
    int num_arms = 0;
    int k = 0;                                  // k_subsets
    int max_size = 0;                           // independent_sets
    std::vector<std::pair<int, int>> edges;     // independent_sets conflict graph
    std::vector<std::vector<int>> member_bits;  // explicit_list, rows of 0/1 per arm

    static FamilyDescriptor singletons(int num_arms);
    static FamilyDescriptor k_subsets(int num_arms, int k);
    static FamilyDescriptor independent_sets(int num_arms, std::vector<std::pair<int, int>> edges,
                                             int max_size);
    static FamilyDescriptor explicit_list(std::vector<std::vector<int>> member_bits);
};

// The enumerated, canonically ordered collection of feasible super arms. The empty
// set is never a member; policies use a separate placeholder for "no previous pick".
class FeasibleFamily {
public:
    static constexpr size_t kDefaultMemberCap = 1'000'000;

    static FeasibleFamily enumerate(const FamilyDescriptor& desc,
                                    size_t member_cap = kDefaultMemberCap);

    int32_t size() const { return static_cast<int32_t>(members_.size()); }
    int num_arms() const { return num_arms_; }
    int max_cardinality() const { return max_cardinality_; }
    const SuperArm& member(int32_t index) const { return members_[static_cast<size_t>(index)]; }
    const std::vector<SuperArm>& members() const { return members_; }

private:
    FeasibleFamily() = default;

    std::vector<SuperArm> members_;
    int num_arms_ = 0;
    int max_cardinality_ = 0;
};

// Uniformly random M-combination of member indices, without replacement; every
// M-subset has probability 1 / C(|S|, M). Returned indices are sorted.
std::vector<int32_t> sample_distinct(const FeasibleFamily& family, int m, RngStream& rng);

std::string to_string(const SuperArm& arm);

}  // namespace fairpc
