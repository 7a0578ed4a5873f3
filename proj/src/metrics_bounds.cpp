#include "fairpc/metrics_bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "fairpc/errors.hpp"

namespace fairpc {

double realized_reward(const RunTrace& trace, uint64_t round) {
    return static_cast<double>(std::popcount(trace.reward_bits[static_cast<size_t>(round)]));
}

std::vector<double> per_arm_service(const RunTrace& trace, const FeasibleFamily& family,
                                    uint64_t upto) {
    std::vector<double> service(static_cast<size_t>(trace.num_arms), 0.0);
    replay_trace(trace, family, upto, [&](uint64_t, const SuperArm& member, uint64_t bits) {
        for (size_t j = 0; j < member.arms.size(); ++j) {
            if (bits >> j & 1u) service[static_cast<size_t>(member.arms[j])] += 1.0;
        }
    });
    return service;
}

namespace {

double positive_debt(std::span<const double> targets, std::span<const double> service,
                     double rounds) {
    double total = 0.0;
    for (size_t n = 0; n < targets.size(); ++n) {
        total += std::max(rounds * targets[n] - service[n], 0.0);
    }
    return total;
}

}  // namespace

double cumulative_violation(const RunTrace& trace, const FeasibleFamily& family,
                            std::span<const double> targets, uint64_t upto) {
    const std::vector<double> service = per_arm_service(trace, family, upto);
    return positive_debt(targets, service, static_cast<double>(upto));
}

double mean_service_violation(std::span<const RunTrace> traces, const FeasibleFamily& family,
                              std::span<const double> targets, uint64_t upto) {
    if (traces.empty()) throw argument_error("mean_service_violation: no traces");
    std::vector<double> mean(targets.size(), 0.0);
    for (const RunTrace& trace : traces) {
        const std::vector<double> service = per_arm_service(trace, family, upto);
        for (size_t n = 0; n < mean.size(); ++n) mean[n] += service[n];
    }
    for (double& v : mean) v /= static_cast<double>(traces.size());
    return positive_debt(targets, mean, static_cast<double>(upto));
}

double pseudo_regret(const RunTrace& trace, const OracleSolution& oracle,
                     std::span<const double> means, const FeasibleFamily& family, uint64_t upto) {
    double benchmark = 0.0;
    for (size_t n = 0; n < means.size(); ++n) benchmark += means[n] * oracle.marginals[n];
    double pulled_mean_total = 0.0;
    replay_trace(trace, family, upto, [&](uint64_t, const SuperArm& member, uint64_t) {
        for (int32_t arm : member.arms) pulled_mean_total += means[static_cast<size_t>(arm)];
    });
    return static_cast<double>(upto) * benchmark - pulled_mean_total;
}

std::vector<double> violation_curve(const RunTrace& trace, const FeasibleFamily& family,
                                    std::span<const double> targets) {
    const auto n_arms = static_cast<size_t>(trace.num_arms);
    std::vector<double> service(n_arms, 0.0);
    std::vector<double> curve(static_cast<size_t>(trace.horizon) + 1, 0.0);
    replay_trace(trace, family, trace.horizon,
                 [&](uint64_t t, const SuperArm& member, uint64_t bits) {
                     for (size_t j = 0; j < member.arms.size(); ++j) {
                         if (bits >> j & 1u) service[static_cast<size_t>(member.arms[j])] += 1.0;
                     }
                     curve[static_cast<size_t>(t) + 1] =
                         positive_debt(targets, service, static_cast<double>(t + 1));
                 });
    return curve;
}

std::vector<double> mean_service_violation_curve(std::span<const RunTrace> traces,
                                                 const FeasibleFamily& family,
                                                 std::span<const double> targets) {
    if (traces.empty()) throw argument_error("mean_service_violation_curve: no traces");
    const uint64_t horizon = traces.front().horizon;
    const auto n_arms = static_cast<size_t>(traces.front().num_arms);
    std::vector<double> service_sum(static_cast<size_t>(horizon) * n_arms, 0.0);
    for (const RunTrace& trace : traces) {
        if (trace.horizon != horizon) {
            throw argument_error("mean_service_violation_curve: traces differ in horizon");
        }
        replay_trace(trace, family, horizon, [&](uint64_t t, const SuperArm& member, uint64_t bits) {
            double* row = service_sum.data() + static_cast<size_t>(t) * n_arms;
            for (size_t j = 0; j < member.arms.size(); ++j) {
                if (bits >> j & 1u) row[static_cast<size_t>(member.arms[j])] += 1.0;
            }
        });
    }
    // Running sums stay integral (exact in doubles); divide fresh per round so no
    // rounding accumulates across the horizon.
    const double inv_r = 1.0 / static_cast<double>(traces.size());
    std::vector<double> service_total(n_arms, 0.0);
    std::vector<double> curve(static_cast<size_t>(horizon) + 1, 0.0);
    for (uint64_t t = 0; t < horizon; ++t) {
        const double* row = service_sum.data() + static_cast<size_t>(t) * n_arms;
        double debt = 0.0;
        const double rounds = static_cast<double>(t + 1);
        for (size_t n = 0; n < n_arms; ++n) {
            service_total[n] += row[n];
            debt += std::max(rounds * targets[n] - service_total[n] * inv_r, 0.0);
        }
        curve[static_cast<size_t>(t) + 1] = debt;
    }
    return curve;
}

std::optional<uint64_t> zero_violation_point(std::span<const double> curve) {
    constexpr double kZeroTol = 1e-9;
    if (curve.empty()) throw argument_error("zero_violation_point: empty curve");
    size_t last_nonzero = curve.size();
    for (size_t t = curve.size(); t-- > 0;) {
        if (curve[t] > kZeroTol) {
            last_nonzero = t;
            break;
        }
    }
    if (last_nonzero == curve.size()) return 0;                  // never violated
    if (last_nonzero == curve.size() - 1) return std::nullopt;   // violated at the horizon
    return static_cast<uint64_t>(last_nonzero + 1);
}

double queue_gap_frequency(const RunTrace& trace, double gap_bound) {
    if (!trace.shadow_enabled) {
        throw diagnostic_error("queue_gap_frequency needs shadow diagnostics enabled");
    }
    if (trace.queue_gaps.empty()) return 1.0;
    uint64_t within = 0;
    for (float gap : trace.queue_gaps) {
        if (static_cast<double>(gap) <= gap_bound + 1e-9) ++within;
    }
    return static_cast<double>(within) / static_cast<double>(trace.queue_gaps.size());
}

BoundReport compute_bounds(const InstanceSpec& instance, const FeasibleFamily& family,
                           const PolicyConfig& cfg, uint64_t horizon, double delta) {
    const double n = static_cast<double>(instance.num_arms);
    const double t_hor = static_cast<double>(horizon);
    const double mu_min = instance.min_mean();
    const double mu_max = instance.max_mean();
    const double s_max = static_cast<double>(family.max_cardinality());
    const double eta = cfg.variant == PolicyVariant::queue_pc ? 0.0 : cfg.eta;
    const double inf = std::numeric_limits<double>::infinity();

    BoundReport r;
    r.delta = delta;
    r.alpha = cfg.variant == PolicyVariant::pessimistic_optimistic
                  ? 1.0
                  : static_cast<double>(cfg.m_picks) / static_cast<double>(family.size());
    const double a = r.alpha;
    if (a >= 1.0) {
        r.c1 = 0.0;
        r.c2 = 0.0;
        r.c3 = inf;
    } else {
        r.c1 = (a * a - 3.0 * a + 2.0) / (a * a);
        r.c2 = 1.0 / a - 1.0;
        r.c3 = -std::log1p(-a);
    }

    // D is the smallest horizon over which the sampled subsets hit any fixed member
    // with probability at least 1 / (1 + delta).
    if (delta <= 0.0) {
        r.prop2_available = false;
        r.unavailable_reason = "tightness slack delta is not positive";
    } else {
        const double needed = 1.0 / (1.0 + delta);
        int64_t d = 0;
        double gamma = 0.0;
        for (int64_t cand = 1; cand <= 10'000'000; ++cand) {
            gamma = 1.0 - std::pow(1.0 - a, static_cast<double>(cand));
            if (gamma >= needed) {
                d = cand;
                break;
            }
        }
        if (d == 0) {
            r.prop2_available = false;
            r.unavailable_reason = "no sampling horizon D reaches the required hit probability";
        } else {
            const double kappa = gamma * delta + gamma - 1.0;
            if (!(kappa > 0.0)) {
                r.prop2_available = false;
                r.unavailable_reason = "gamma * delta + gamma - 1 is not positive";
            } else {
                r.prop2_available = true;
                r.d_rounds = d;
                r.gamma = gamma;
                r.b1 = 2.0 * n * static_cast<double>(d) * (1.0 + eta);
                r.zeta = n / mu_min;
                r.u_const = 2.0 * n / (mu_min * kappa) +
                            8.0 * n * static_cast<double>(d) * (1.0 + eta) / kappa;
                r.theta = 3.0 * kappa / (12.0 * r.zeta * r.zeta + kappa * r.zeta);
                r.v0 = 8.0 / (kappa * r.theta);
                r.g0 = std::sqrt(n) * (std::log(r.v0 + 1.0) / r.theta + r.zeta + r.u_const);
                r.t0 = cfg.epsilon > 0.0 ? r.g0 / cfg.epsilon : inf;
                r.prop2_in_force = cfg.epsilon <= kappa / 2.0;
            }
        }
    }

    const double log_t = horizon >= 1 ? std::log(t_hor) : 0.0;
    const double sqrt_term = 2.0 * std::sqrt(6.0 * n * s_max * t_hor * log_t);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double main_bound = n * (1.0 + 5.0 * pi2 / 12.0) + sqrt_term + r.c2 * n * pi2 / 6.0 + r.c2 * n;
    main_bound += eta > 0.0 ? n * t_hor / (eta * mu_min) : inf;
    if (r.c1 > 0.0) main_bound += eta > 0.0 ? 2.0 * r.c1 * n * t_hor / eta : inf;
    if (std::isfinite(r.c3)) {
        main_bound += (1.0 + log_t) / r.c3 * n * std::log(s_max * t_hor / n);
        main_bound += (1.0 + log_t) * std::sqrt(6.0 * n * s_max * t_hor * log_t) / (2.0 * r.c3);
    }
    r.regret_bound = std::min(main_bound, s_max * mu_max * t_hor);
    r.prop1_in_force = delta > 0.0 && cfg.epsilon <= delta / 2.0;
    // The guarantees govern the queue-bearing weight; the ucb-only variant drops the
    // queues from its selection, so neither applies to it.
    if (cfg.variant == PolicyVariant::ucb_pc) {
        r.prop1_in_force = false;
        r.prop2_in_force = false;
    }
    return r;
}

}  // namespace fairpc
