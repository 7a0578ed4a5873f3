#include "fairpc/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairpc/errors.hpp"
#include "fairpc/oracle.hpp"

namespace fairpc {

const char* to_string(PolicyVariant v) {
    switch (v) {
        case PolicyVariant::lcfl: return "lcfl";
        case PolicyVariant::pessimistic_optimistic: return "pessimistic_optimistic";
        case PolicyVariant::queue_pc: return "queue_pc";
        case PolicyVariant::ucb_pc: return "ucb_pc";
    }
    return "?";
}

PolicyVariant policy_variant_from_string(const std::string& s) {
    if (s == "lcfl") return PolicyVariant::lcfl;
    if (s == "pessimistic_optimistic") return PolicyVariant::pessimistic_optimistic;
    if (s == "queue_pc") return PolicyVariant::queue_pc;
    if (s == "ucb_pc") return PolicyVariant::ucb_pc;
    throw config_error("unknown policy variant: " + s);
}

void PolicyConfig::validate(const FeasibleFamily& family) const {
    if (eta < 0.0) throw config_error("policy eta must be >= 0");
    if (epsilon < 0.0 || epsilon >= 1.0) throw config_error("policy epsilon must lie in [0, 1)");
    if (variant != PolicyVariant::pessimistic_optimistic) {
        if (m_picks < 1 || m_picks > family.size()) {
            throw config_error("policy m_picks must lie in [1, |family|]");
        }
    }
    if (variant == PolicyVariant::queue_pc && eta != 0.0) {
        throw config_error("queue_pc runs with eta = 0");
    }
}

PolicyState make_initial_state(int num_arms) {
    PolicyState st;
    st.queues.assign(static_cast<size_t>(num_arms), 0.0);
    st.pulls.assign(static_cast<size_t>(num_arms), 0);
    st.reward_sums.assign(static_cast<size_t>(num_arms), 0);
    st.ucb.assign(static_cast<size_t>(num_arms), 1.0);  // unexplored arms carry weight 1
    return st;
}

double ucb_weight(int64_t pulls, int64_t reward_sum, uint64_t round) {
    if (pulls <= 0) return 1.0;
    const double lt = std::max(std::log(static_cast<double>(round)), 0.0);
    const double mean = static_cast<double>(reward_sum) / static_cast<double>(pulls);
    const double bonus = std::sqrt(3.0 * lt / (2.0 * static_cast<double>(pulls)));
    return std::min(mean + bonus, 1.0);
}

double queue_update(double q, double target, double pad, int pulled, int reward) {
    return std::max(q + target - static_cast<double>(pulled * reward) + pad, 0.0);
}

double superarm_weight(const SuperArm& s, std::span<const double> combined_weights) {
    double w = 0.0;
    for (int32_t arm : s.arms) w += combined_weights[static_cast<size_t>(arm)];
    return w;
}

namespace {

// Argmax over candidate member indices, scanned in ascending canonical order so a
// strict comparison implements the smallest-index tie-break.
int32_t argmax_ascending(const FeasibleFamily& family, std::span<const int32_t> candidates,
                         std::span<const double> combined) {
    int32_t best = kNoSelection;
    double best_w = -std::numeric_limits<double>::infinity();
    for (int32_t idx : candidates) {
        const double w = superarm_weight(family.member(idx), combined);
        if (w > best_w) {
            best_w = w;
            best = idx;
        }
    }
    return best;
}

}  // namespace

StepOutcome lcfl_step(PolicyState& state, const FeasibleFamily& family, const PolicyConfig& cfg,
                      const Environment& env, const RngStream& reward_stream,
                      RngStream& sample_stream, const StepDiagnostics& diag, StepScratch& scratch) {
    const int n_arms = family.num_arms();
    const double eta = cfg.variant == PolicyVariant::queue_pc ? 0.0 : cfg.eta;

    scratch.combined.resize(static_cast<size_t>(n_arms));
    for (int n = 0; n < n_arms; ++n) {
        const auto i = static_cast<size_t>(n);
        scratch.combined[i] = cfg.variant == PolicyVariant::ucb_pc
                                  ? state.ucb[i]
                                  : state.queues[i] + eta * state.ucb[i];
    }

    StepOutcome out;
    if (cfg.variant == PolicyVariant::pessimistic_optimistic) {
        out.selected = full_argmax(family, scratch.combined);
        out.comparisons = static_cast<uint64_t>(family.size());
        if (diag.shadow_argmax) {
            out.weight_argmax = out.selected;
            out.best_pick = true;
        }
    } else {
        scratch.picks = sample_distinct(family, cfg.m_picks, sample_stream);
        if (diag.shadow_argmax) {
            out.weight_argmax = full_argmax(family, scratch.combined);
            // Best pick means the *sampled* subsets contain the weight argmax; the
            // carried-over previous selection does not count.
            out.best_pick = std::binary_search(scratch.picks.begin(), scratch.picks.end(),
                                               out.weight_argmax);
        }
        // Candidates are the picks plus the previous selection; the initial round's
        // placeholder has weight 0 and loses all ties, which the strict-max scan over
        // real members realizes since member weights are never negative.
        if (state.prev_selection != kNoSelection &&
            !std::binary_search(scratch.picks.begin(), scratch.picks.end(),
                                state.prev_selection)) {
            scratch.picks.insert(
                std::upper_bound(scratch.picks.begin(), scratch.picks.end(), state.prev_selection),
                state.prev_selection);
        }
        out.selected = argmax_ascending(family, scratch.picks, scratch.combined);
        out.comparisons = static_cast<uint64_t>(cfg.m_picks) + 1;
    }

    if (diag.shadow_argmax) {
        const int32_t queue_best = full_argmax(family, state.queues);
        out.queue_gap = superarm_weight(family.member(queue_best), state.queues) -
                        superarm_weight(family.member(out.selected), state.queues);
    }

    env.draw_rewards(family.member(out.selected), reward_stream, out.draws);

    if (diag.ucb_drift_check) scratch.prev_ucb = state.ucb;

    const InstanceSpec& spec = env.spec();
    size_t di = 0;
    for (int n = 0; n < n_arms; ++n) {
        const auto i = static_cast<size_t>(n);
        int pulled = 0;
        int reward = 0;
        if (di < out.draws.size() && out.draws[di].arm == n) {
            pulled = 1;
            reward = out.draws[di].value;
            ++di;
            state.pulls[i] += 1;
            state.reward_sums[i] += reward;
        }
        state.queues[i] = queue_update(state.queues[i], spec.targets[i], cfg.epsilon, pulled, reward);
    }

    state.round += 1;
    for (int n = 0; n < n_arms; ++n) {
        const auto i = static_cast<size_t>(n);
        state.ucb[i] = ucb_weight(state.pulls[i], state.reward_sums[i], state.round);
    }

    if (diag.ucb_drift_check) {
        size_t dj = 0;
        for (int n = 0; n < n_arms; ++n) {
            const auto i = static_cast<size_t>(n);
            bool was_pulled = dj < out.draws.size() && out.draws[dj].arm == n;
            if (was_pulled) ++dj;
            const int64_t h_before = state.pulls[i] - (was_pulled ? 1 : 0);
            const double dw = state.ucb[i] - scratch.prev_ucb[i];
            if (h_before >= 1) {
                const double h = static_cast<double>(h_before);
                const double bound = -1.0 / h - std::sqrt(3.0 * diag.log_horizon / (2.0 * h));
                if (dw < bound - 1e-9) out.drift_violations += 1;
            } else if (!was_pulled) {
                if (std::fabs(dw) > 1e-12) out.drift_violations += 1;
            } else {
                if (dw < -1.0 - 1e-9) out.drift_violations += 1;
            }
        }
    }

    state.prev_selection = out.selected;
    return out;
}

}  // namespace fairpc
