// Independent reference computations for tests: closed forms and exhaustive
// searches that never touch the simplex code path.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fairpc/environment.hpp"
#include "fairpc/feasible_sets.hpp"

namespace fairpc::testref {

// Singleton-family benchmark in closed form: meet each constraint exactly with
// q_n = (lambda_n + delta) / mu_n, then put the residual mass on the best mean.
struct SingletonBenchmark {
    bool feasible = false;
    double optimal_reward = 0.0;
    std::vector<double> distribution;
};

inline SingletonBenchmark singleton_benchmark(const std::vector<double>& means,
                                              const std::vector<double>& targets, double delta) {
    SingletonBenchmark out;
    const size_t n = means.size();
    double load = 0.0;
    for (size_t i = 0; i < n; ++i) load += (targets[i] + delta) / means[i];
    if (load > 1.0 + 1e-12) return out;
    out.feasible = true;
    out.distribution.resize(n);
    size_t best = 0;
    for (size_t i = 0; i < n; ++i) {
        out.distribution[i] = (targets[i] + delta) / means[i];
        if (means[i] > means[best]) best = i;
    }
    out.distribution[best] += 1.0 - load;
    out.optimal_reward = 0.0;
    for (size_t i = 0; i < n; ++i) out.optimal_reward += out.distribution[i] * means[i];
    return out;
}

inline double singleton_max_slack(const std::vector<double>& means,
                                  const std::vector<double>& targets) {
    // Solve sum (lambda_n + delta) / mu_n = 1 for delta.
    double load = 0.0;
    double inv = 0.0;
    for (size_t i = 0; i < means.size(); ++i) {
        load += targets[i] / means[i];
        inv += 1.0 / means[i];
    }
    return (1.0 - load) / inv;
}

// Gaussian elimination with partial pivoting; returns false when singular.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
    const size_t m = b.size();
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        for (size_t r = col; r < m; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        }
        if (std::fabs(a[piv][col]) < 1e-12) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(m, 0.0);
    for (size_t i = 0; i < m; ++i) x[i] = b[i] / a[i][i];
    return true;
}

// Brute-force optimum of the benchmark program by enumerating every basis of the
// equality system (q, surplus) and keeping the best feasible vertex. Only viable at
// toy sizes; this is the reference the simplex result is checked against.
inline std::optional<double> bruteforce_benchmark_optimum(const InstanceSpec& instance,
                                                          const FeasibleFamily& family,
                                                          double delta) {
    const size_t k = static_cast<size_t>(family.size());
    const size_t n_arms = static_cast<size_t>(instance.num_arms);
    const size_t n_vars = k + n_arms;
    const size_t m = n_arms + 1;
    if (n_vars < m) return std::nullopt;

    std::vector<std::vector<double>> cols(n_vars, std::vector<double>(m, 0.0));
    std::vector<double> obj(n_vars, 0.0);
    for (size_t s = 0; s < k; ++s) {
        for (int32_t arm : family.member(static_cast<int32_t>(s)).arms) {
            cols[s][static_cast<size_t>(arm)] = instance.means[static_cast<size_t>(arm)];
            obj[s] += instance.means[static_cast<size_t>(arm)];
        }
        cols[s][n_arms] = 1.0;
    }
    for (size_t n = 0; n < n_arms; ++n) cols[k + n][n] = -1.0;
    std::vector<double> rhs(m, 0.0);
    for (size_t n = 0; n < n_arms; ++n) rhs[n] = instance.targets[n] + delta;
    rhs[n_arms] = 1.0;

    double best = -std::numeric_limits<double>::infinity();
    std::vector<size_t> pick(m);
    // Enumerate all C(n_vars, m) bases.
    std::vector<size_t> idx(m);
    for (size_t i = 0; i < m; ++i) idx[i] = i;
    for (;;) {
        std::vector<std::vector<double>> basis(m, std::vector<double>(m));
        for (size_t c = 0; c < m; ++c) {
            for (size_t r = 0; r < m; ++r) basis[r][c] = cols[idx[c]][r];
        }
        std::vector<double> x;
        if (solve_linear(basis, rhs, x)) {
            bool feasible = true;
            for (double v : x) {
                if (v < -1e-9) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                double value = 0.0;
                for (size_t c = 0; c < m; ++c) value += obj[idx[c]] * x[c];
                best = std::max(best, value);
            }
        }
        // next combination
        size_t i = m;
        while (i-- > 0) {
            if (idx[i] != i + n_vars - m) {
                ++idx[i];
                for (size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return std::isfinite(best) ? std::optional<double>(best) : std::nullopt;
        }
    }
}

// All nonempty subsets passing the conflict and size constraints, by filtering the
// power set; order matches the canonical sorted-tuple order after sorting.
inline std::vector<std::vector<int32_t>> filter_independent_sets(
    int num_arms, const std::vector<std::pair<int, int>>& edges, int max_size) {
    std::vector<std::vector<int32_t>> out;
    for (uint32_t mask = 1; mask < (1u << num_arms); ++mask) {
        if (max_size > 0 && std::popcount(mask) > max_size) continue;
        bool ok = true;
        for (const auto& [a, b] : edges) {
            if ((mask >> a & 1u) && (mask >> b & 1u)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<int32_t> arms;
        for (int a = 0; a < num_arms; ++a) {
            if (mask >> a & 1u) arms.push_back(a);
        }
        out.push_back(std::move(arms));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fairpc::testref
