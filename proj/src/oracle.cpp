#include "fairpc/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fairpc/errors.hpp"
#include "fairpc/simplex.hpp"

namespace fairpc {

namespace {

double member_reward(const SuperArm& s, const std::vector<double>& means) {
    double r = 0.0;
    for (int32_t a : s.arms) r += means[static_cast<size_t>(a)];
    return r;
}

}  // namespace

OracleSolution solve_benchmark(const InstanceSpec& instance, const FeasibleFamily& family,
                               double delta) {
    if (delta < 0.0) throw argument_error("solve_benchmark: delta must be >= 0");
    const size_t k = static_cast<size_t>(family.size());
    const size_t n_arms = static_cast<size_t>(instance.num_arms);

    // Variables: q_0..q_{k-1}, then one surplus per arm.
    //   mu_n * sum_{S contains n} q(S) - s_n = lambda_n + delta
    //   sum_S q(S) = 1
    const size_t n_vars = k + n_arms;
    std::vector<std::vector<double>> a(n_arms + 1, std::vector<double>(n_vars, 0.0));
    std::vector<double> b(n_arms + 1, 0.0);
    std::vector<double> c(n_vars, 0.0);

    for (size_t s = 0; s < k; ++s) {
        const SuperArm& member = family.member(static_cast<int32_t>(s));
        for (int32_t arm : member.arms) {
            a[static_cast<size_t>(arm)][s] = instance.means[static_cast<size_t>(arm)];
        }
        a[n_arms][s] = 1.0;
        c[s] = member_reward(member, instance.means);
    }
    for (size_t n = 0; n < n_arms; ++n) {
        a[n][k + n] = -1.0;
        b[n] = instance.targets[n] + delta;
    }
    b[n_arms] = 1.0;

    const lp::Result res = lp::solve_equality_form(std::move(a), std::move(b), c);
    if (res.status != lp::Status::optimal) {
        const double dmax = max_slack(instance, family);
        std::ostringstream msg;
        msg << "benchmark infeasible at delta=" << delta << "; max feasible slack is " << dmax;
        throw infeasible_error(msg.str(), delta, dmax);
    }

    OracleSolution sol;
    sol.delta_used = delta;
    sol.distribution.assign(k, 0.0);
    for (size_t s = 0; s < k; ++s) {
        double q = res.x[s];
        if (q < 0.0) {
            if (q < -1e-12) throw structural_error("lp returned a negative probability");
            q = 0.0;
        }
        sol.distribution[s] = q;
    }
    sol.marginals.assign(n_arms, 0.0);
    for (size_t s = 0; s < k; ++s) {
        if (sol.distribution[s] == 0.0) continue;
        for (int32_t arm : family.member(static_cast<int32_t>(s)).arms) {
            sol.marginals[static_cast<size_t>(arm)] += sol.distribution[s];
        }
    }
    sol.optimal_reward = res.objective;
    return sol;
}

double max_slack(const InstanceSpec& instance, const FeasibleFamily& family) {
    const size_t k = static_cast<size_t>(family.size());
    const size_t n_arms = static_cast<size_t>(instance.num_arms);

    // Variables: q_0..q_{k-1}, d+, d-, then one surplus per arm; delta = d+ - d- is
    // free so the program stays feasible even when the targets are unattainable.
    //   mu_n * sum_{S contains n} q(S) - d+ + d- - s_n = lambda_n
    //   sum_S q(S) = 1
    // maximize d+ - d-.
    const size_t n_vars = k + 2 + n_arms;
    std::vector<std::vector<double>> a(n_arms + 1, std::vector<double>(n_vars, 0.0));
    std::vector<double> b(n_arms + 1, 0.0);
    std::vector<double> c(n_vars, 0.0);

    for (size_t s = 0; s < k; ++s) {
        for (int32_t arm : family.member(static_cast<int32_t>(s)).arms) {
            a[static_cast<size_t>(arm)][s] = instance.means[static_cast<size_t>(arm)];
        }
        a[n_arms][s] = 1.0;
    }
    for (size_t n = 0; n < n_arms; ++n) {
        a[n][k] = -1.0;
        a[n][k + 1] = 1.0;
        a[n][k + 2 + n] = -1.0;
        b[n] = instance.targets[n];
    }
    b[n_arms] = 1.0;
    c[k] = 1.0;
    c[k + 1] = -1.0;

    const lp::Result res = lp::solve_equality_form(std::move(a), std::move(b), c);
    if (res.status != lp::Status::optimal) {
        throw structural_error("max_slack lp did not solve; feasible family should make it bounded");
    }
    return res.objective;
}

int32_t full_argmax(const FeasibleFamily& family, std::span<const double> per_arm_weights) {
    if (static_cast<int>(per_arm_weights.size()) != family.num_arms()) {
        throw argument_error("full_argmax: weight vector length != family arm count");
    }
    int32_t best = 0;
    double best_w = -std::numeric_limits<double>::infinity();
    for (int32_t s = 0; s < family.size(); ++s) {
        double w = 0.0;
        for (int32_t arm : family.member(s).arms) w += per_arm_weights[static_cast<size_t>(arm)];
        if (w > best_w) {
            best_w = w;
            best = s;
        }
    }
    return best;
}

}  // namespace fairpc
