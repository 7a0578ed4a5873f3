#include "fairpc/feasible_sets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fairpc/errors.hpp"

namespace fairpc {

bool SuperArm::contains(int32_t arm) const {
    return std::binary_search(arms.begin(), arms.end(), arm);
}

FamilyDescriptor FamilyDescriptor::singletons(int num_arms) {
    FamilyDescriptor d;
    d.kind = Kind::singletons;
    d.num_arms = num_arms;
    return d;
}

FamilyDescriptor FamilyDescriptor::k_subsets(int num_arms, int k) {
    FamilyDescriptor d;
    d.kind = Kind::k_subsets;
    d.num_arms = num_arms;
    d.k = k;
    return d;
}

FamilyDescriptor FamilyDescriptor::independent_sets(int num_arms,
                                                    std::vector<std::pair<int, int>> edges,
                                                    int max_size) {
    FamilyDescriptor d;
    d.kind = Kind::independent_sets;
    d.num_arms = num_arms;
    d.edges = std::move(edges);
    d.max_size = max_size;
    return d;
}

FamilyDescriptor FamilyDescriptor::explicit_list(std::vector<std::vector<int>> member_bits) {
    FamilyDescriptor d;
    d.kind = Kind::explicit_list;
    d.member_bits = std::move(member_bits);
    d.num_arms = d.member_bits.empty() ? 0 : static_cast<int>(d.member_bits.front().size());
    return d;
}

namespace {

void check_cap(size_t count, size_t cap) {
    if (count > cap) {
        throw resource_error("family enumeration exceeded member cap of " + std::to_string(cap));
    }
}

// Depth-first extension with increasing arm ids emits members directly in canonical
// (sorted-tuple lexicographic) order.
void enumerate_subsets(int num_arms, int min_size, int max_size,
                       const std::vector<std::vector<bool>>& conflict, size_t cap,
                       std::vector<SuperArm>& out) {
    std::vector<int32_t> current;
    auto extend = [&](auto&& self, int next_arm) -> void {
        for (int a = next_arm; a < num_arms; ++a) {
            if (!conflict.empty()) {
                bool blocked = false;
                for (int32_t b : current) {
                    if (conflict[static_cast<size_t>(b)][static_cast<size_t>(a)]) {
                        blocked = true;
                        break;
                    }
                }
                if (blocked) continue;
            }
            current.push_back(a);
            if (static_cast<int>(current.size()) >= min_size) {
                check_cap(out.size() + 1, cap);
                out.push_back(SuperArm{current, -1});
            }
            if (static_cast<int>(current.size()) < max_size) self(self, a + 1);
            current.pop_back();
        }
    };
    extend(extend, 0);
}

}  // namespace

FeasibleFamily FeasibleFamily::enumerate(const FamilyDescriptor& desc, size_t member_cap) {
    FeasibleFamily family;
    std::vector<SuperArm>& members = family.members_;

    switch (desc.kind) {
        case FamilyDescriptor::Kind::singletons: {
            if (desc.num_arms < 1) throw config_error("singletons family needs num_arms >= 1");
            family.num_arms_ = desc.num_arms;
            check_cap(static_cast<size_t>(desc.num_arms), member_cap);
            for (int a = 0; a < desc.num_arms; ++a) members.push_back(SuperArm{{a}, -1});
            break;
        }
        case FamilyDescriptor::Kind::k_subsets: {
            if (desc.num_arms < 1 || desc.k < 1 || desc.k > desc.num_arms) {
                throw config_error("k_subsets family needs 1 <= k <= num_arms");
            }
            family.num_arms_ = desc.num_arms;
            enumerate_subsets(desc.num_arms, desc.k, desc.k, {}, member_cap, members);
            break;
        }
        case FamilyDescriptor::Kind::independent_sets: {
            if (desc.num_arms < 1) throw config_error("independent_sets family needs num_arms >= 1");
            const int max_size = desc.max_size > 0 ? desc.max_size : desc.num_arms;
            std::vector<std::vector<bool>> conflict(
                static_cast<size_t>(desc.num_arms),
                std::vector<bool>(static_cast<size_t>(desc.num_arms), false));
            for (const auto& [a, b] : desc.edges) {
                if (a < 0 || b < 0 || a >= desc.num_arms || b >= desc.num_arms || a == b) {
                    throw config_error("independent_sets edge out of range");
                }
                conflict[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
                conflict[static_cast<size_t>(b)][static_cast<size_t>(a)] = true;
            }
            family.num_arms_ = desc.num_arms;
            enumerate_subsets(desc.num_arms, 1, max_size, conflict, member_cap, members);
            break;
        }
        case FamilyDescriptor::Kind::explicit_list: {
            if (desc.member_bits.empty()) throw config_error("explicit family has no members");
            const size_t n = desc.member_bits.front().size();
            if (n == 0) throw config_error("explicit family has zero arms");
            family.num_arms_ = static_cast<int>(n);
            check_cap(desc.member_bits.size(), member_cap);
            std::set<std::vector<int32_t>> seen;
            for (const auto& row : desc.member_bits) {
                if (row.size() != n) throw config_error("explicit family rows differ in length");
                SuperArm arm;
                for (size_t i = 0; i < n; ++i) {
                    if (row[i] != 0 && row[i] != 1) {
                        throw config_error("explicit family rows must be 0/1");
                    }
                    if (row[i] == 1) arm.arms.push_back(static_cast<int32_t>(i));
                }
                if (arm.arms.empty()) throw config_error("explicit family contains the empty set");
                if (!seen.insert(arm.arms).second) {
                    throw config_error("explicit family contains duplicate members");
                }
                members.push_back(std::move(arm));
            }
            std::sort(members.begin(), members.end(), canonical_less);
            break;
        }
    }

    if (members.empty()) throw config_error("feasible family is empty");

    std::vector<bool> covered(static_cast<size_t>(family.num_arms_), false);
    for (size_t i = 0; i < members.size(); ++i) {
        members[i].index = static_cast<int32_t>(i);
        family.max_cardinality_ = std::max(family.max_cardinality_, members[i].cardinality());
        for (int32_t a : members[i].arms) covered[static_cast<size_t>(a)] = true;
    }
    for (int a = 0; a < family.num_arms_; ++a) {
        if (!covered[static_cast<size_t>(a)]) {
            throw config_error("arm " + std::to_string(a) +
                               " appears in no feasible super arm; its fairness target is "
                               "unsatisfiable");
        }
    }
    return family;
}

std::vector<int32_t> sample_distinct(const FeasibleFamily& family, int m, RngStream& rng) {
    const int32_t size = family.size();
    if (m < 1 || m > size) {
        throw argument_error("sample_distinct: m must lie in [1, |family|], got " +
                             std::to_string(m));
    }
    // Floyd's algorithm: uniform over M-combinations using exactly M draws.
    std::set<int32_t> chosen;
    for (int32_t j = size - m; j < size; ++j) {
        const auto t = static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

std::string to_string(const SuperArm& arm) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < arm.arms.size(); ++i) {
        if (i) os << ',';
        os << arm.arms[i];
    }
    os << '}';
    return os.str();
}

}  // namespace fairpc
