#include <doctest.h>

#include <cmath>

#include "fairpc/environment.hpp"
#include "fairpc/errors.hpp"
#include "support/instances.hpp"

using namespace fairpc;

TEST_SUITE_BEGIN("environment");

namespace {

Environment make_env(InstanceSpec spec) {
    FeasibleFamily family = FeasibleFamily::enumerate(spec.family_spec);
    return Environment(std::move(spec), std::move(family));
}

}  // namespace

TEST_CASE("degenerate mean pays every pull") {
    InstanceSpec spec;
    spec.num_arms = 2;
    spec.means = {1.0, 0.5};
    spec.targets = {0.1, 0.1};
    spec.family_spec = FamilyDescriptor::singletons(2);
    const Environment env = make_env(spec);
    for (uint64_t t = 0; t < 200; ++t) {
        const auto draws = env.draw_rewards(env.family().member(0), env.reward_stream(7, 0, t));
        REQUIRE(draws.size() == 1);
        CHECK(draws[0].arm == 0);
        CHECK(draws[0].value == 1);
    }
}

TEST_CASE("empty placeholder produces no draws") {
    const Environment env = make_env(testref::synthetic_instance());
    const SuperArm placeholder{};  // no arms, index -1
    CHECK(env.draw_rewards(placeholder, env.reward_stream(7, 0, 0)).empty());
}

TEST_CASE("non-member pull is a structural error") {
    const Environment env = make_env(testref::synthetic_instance());
    SuperArm bogus{{0, 1}, 0};  // claims index 0 but is not the singleton {0}
    CHECK_THROWS_AS(env.draw_rewards(bogus, env.reward_stream(7, 0, 0)), structural_error);
    SuperArm out_of_range{{0}, 99};
    CHECK_THROWS_AS(env.draw_rewards(out_of_range, env.reward_stream(7, 0, 0)), structural_error);
}

TEST_CASE("empirical mean matches the Bernoulli parameter") {
    InstanceSpec spec;
    spec.num_arms = 1;
    spec.means = {0.6};
    spec.targets = {0.1};
    spec.family_spec = FamilyDescriptor::singletons(1);
    const Environment env = make_env(spec);
    const int draws = 100000;
    int hits = 0;
    for (int t = 0; t < draws; ++t) {
        hits += env.draw_rewards(env.family().member(0), env.reward_stream(123, 0, t))[0].value;
    }
    const double mean = static_cast<double>(hits) / draws;
    // 0.005 is about 3 binomial standard errors at p = 0.6, n = 1e5.
    CHECK(std::fabs(mean - 0.6) < 0.005);
}

TEST_CASE("identical keys reproduce identical reward sequences") {
    const Environment env = make_env(testref::synthetic_instance());
    for (uint64_t t = 0; t < 500; ++t) {
        const auto a = env.draw_rewards(env.family().member(3), env.reward_stream(42, 5, t));
        const auto b = env.draw_rewards(env.family().member(3), env.reward_stream(42, 5, t));
        REQUIRE(a.size() == b.size());
        CHECK(a[0].value == b[0].value);
    }
}

TEST_CASE("reward draws are invariant to which member pulls the arm") {
    InstanceSpec spec;
    spec.num_arms = 3;
    spec.means = {0.5, 0.5, 0.5};
    spec.targets = {0.05, 0.05, 0.05};
    spec.family_spec = FamilyDescriptor::k_subsets(3, 2);
    const Environment env = make_env(spec);
    // members in canonical order: {0,1}, {0,2}, {1,2}
    for (uint64_t t = 0; t < 300; ++t) {
        const RngStream stream = env.reward_stream(9, 1, t);
        const auto via01 = env.draw_rewards(env.family().member(0), stream);
        const auto via02 = env.draw_rewards(env.family().member(1), stream);
        CHECK(via01[0].value == via02[0].value);  // arm 0 either way
    }
}

TEST_CASE("lag-1 autocorrelation of a reward stream is negligible") {
    InstanceSpec spec;
    spec.num_arms = 1;
    spec.means = {0.37};
    spec.targets = {0.1};
    spec.family_spec = FamilyDescriptor::singletons(1);
    const Environment env = make_env(spec);
    const int n = 100000;
    std::vector<int> x(n);
    for (int t = 0; t < n; ++t) {
        x[static_cast<size_t>(t)] =
            env.draw_rewards(env.family().member(0), env.reward_stream(777, 0, t))[0].value;
    }
    double mean = 0.0;
    for (int v : x) mean += v;
    mean /= n;
    double num = 0.0;
    double den = 0.0;
    for (int t = 0; t < n; ++t) {
        const double d = x[static_cast<size_t>(t)] - mean;
        den += d * d;
        if (t + 1 < n) num += d * (x[static_cast<size_t>(t) + 1] - mean);
    }
    CHECK(std::fabs(num / den) < 0.02);
}

TEST_CASE("per-round reward never exceeds the pull budget") {
    InstanceSpec spec;
    spec.num_arms = 5;
    spec.means = {0.9, 0.9, 0.9, 0.9, 0.9};
    spec.targets = {0.01, 0.01, 0.01, 0.01, 0.01};
    spec.family_spec = FamilyDescriptor::k_subsets(5, 3);
    const Environment env = make_env(spec);
    CHECK(env.spec().s_max == 3);
    for (uint64_t t = 0; t < 200; ++t) {
        const auto draws = env.draw_rewards(env.family().member(static_cast<int32_t>(t) %
                                                                env.family().size()),
                                            env.reward_stream(5, 0, t));
        int reward = 0;
        for (const auto& d : draws) reward += d.value;
        CHECK(reward <= env.spec().s_max);
    }
}

TEST_CASE("instance validation rejects bad parameters") {
    const FeasibleFamily family = FeasibleFamily::enumerate(FamilyDescriptor::singletons(2));
    InstanceSpec spec;
    spec.num_arms = 2;
    spec.means = {0.5, 1.5};  // out of (0, 1]
    spec.targets = {0.1, 0.1};
    CHECK_THROWS_AS(validate_instance(spec, family), config_error);
    spec.means = {0.5, 0.0};
    CHECK_THROWS_AS(validate_instance(spec, family), config_error);
    spec.means = {0.5, 0.5};
    spec.targets = {0.1, 0.0};  // targets must be positive
    CHECK_THROWS_AS(validate_instance(spec, family), config_error);
    spec.targets = {0.1};  // length mismatch
    CHECK_THROWS_AS(validate_instance(spec, family), config_error);
}

TEST_SUITE_END();
