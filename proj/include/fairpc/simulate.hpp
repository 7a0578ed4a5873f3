#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairpc/environment.hpp"
#include "fairpc/feasible_sets.hpp"
#include "fairpc/metrics_bounds.hpp"
#include "fairpc/oracle.hpp"
#include "fairpc/policies.hpp"

namespace fairpc {

struct DiagnosticsConfig {
    bool shadow_argmax = false;
    bool ucb_drift_check = false;
};

struct ExperimentConfig {
    InstanceSpec instance;
    uint64_t horizon = 1;
    int replications = 1;
    uint64_t master_seed = 0;
    double benchmark_delta = 0.0;  // slack of the regret baseline (0 = plain pseudo-regret)
    std::vector<PolicyConfig> sweep;
    DiagnosticsConfig diagnostics;
    std::string output_dir = "out";
    uint64_t subsample = 100;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

FamilyDescriptor family_descriptor_from_json(const nlohmann::json& j);
nlohmann::json family_descriptor_to_json(const FamilyDescriptor& desc);

// Consecutive best-pick gap statistics pooled over replications (first gap measured
// from round 0; the final gap is truncated at the horizon).
struct GapMoments {
    uint64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;            // sum of gap^2
    double sum_sq_minus_one = 0.0;  // sum of (gap - 1)^2
    double sum_q4_minus_one = 0.0;  // sum of (gap - 1)^4
    uint64_t max_gap = 0;

    double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
    double mean_sq_minus_one() const {
        return count ? sum_sq_minus_one / static_cast<double>(count) : 0.0;
    }
    // standard error of the gap sample mean
    double se_mean() const {
        if (count < 2) return 0.0;
        const double var = sum_sq / static_cast<double>(count) - mean() * mean();
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
    }
    // standard error of the (gap - 1)^2 sample mean
    double se_sq_minus_one() const {
        if (count < 2) return 0.0;
        const double m = mean_sq_minus_one();
        const double var = sum_q4_minus_one / static_cast<double>(count) - m * m;
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
    }
};

struct EntrySummary {
    PolicyConfig policy;
    BoundReport bounds;

    double final_regret_mean = 0.0;
    double final_regret_stderr = 0.0;
    std::vector<double> per_replication_final_regret;

    std::optional<uint64_t> zero_violation_mean_service;
    double final_violation_mean_service = 0.0;
    std::vector<std::optional<uint64_t>> zero_violation_realized;  // per replication
    double final_violation_realized_mean = 0.0;

    std::vector<double> per_arm_service_rate;  // cross-replication mean at the horizon
    uint64_t comparisons_per_replication = 0;

    bool shadow = false;
    uint64_t best_pick_count = 0;  // rounds whose sample held the weight argmax, pooled
    double best_pick_rate = 0.0;
    GapMoments gap_moments;
    std::optional<double> queue_gap_frequency_within_b1;
    uint64_t drift_violations = 0;

    std::string regret_check;     // pass | fail | not-in-force
    std::string violation_check;  // pass | fail | not-in-force
};

struct RunResult {
    ExperimentConfig config;
    double delta_max = 0.0;
    OracleSolution benchmark;
    std::vector<EntrySummary> entries;
    bool all_guarantees_pass = true;  // no entry verdict is "fail"
};

// Runs every sweep entry; replications may execute on `threads` workers. Outputs are
// deterministic functions of (config, master_seed) regardless of thread count. When
// trace_dir is set, per-replication trace CSVs are written there as entries finish.
RunResult run_experiment(const ExperimentConfig& config, int threads = 1,
                         const std::optional<std::string>& trace_dir = std::nullopt);

// One replication of one policy; exposed for tests and diagnostics.
RunTrace run_replication(const Environment& env, const PolicyConfig& cfg,
                         const DiagnosticsConfig& diag, uint64_t master_seed,
                         uint64_t replication, uint64_t horizon);

nlohmann::json summary_to_json(const RunResult& result);

// Writes summary.json under out_dir (trace CSVs are written by run_experiment).
void write_summary(const RunResult& result, const std::string& out_dir);

struct TrendCheck {
    std::string description;
    bool pass = false;
    double mean_diff = 0.0;    // paired-seed mean difference, oriented so >= 0 passes
    double stderr_diff = 0.0;
    double t_stat = 0.0;       // mean / stderr (0 when stderr is 0)
};

struct CompareReport {
    std::vector<TrendCheck> checks;
    bool all_pass = true;
};

// Monotonicity verdicts across summaries of the same instance/horizon/seed: regret
// nonincreasing in M and in eta; zero-violation point nonincreasing in M and
// nondecreasing in eta. Equal summaries pass with zero margins.
CompareReport compare_policies(const std::vector<nlohmann::json>& summaries);

}  // namespace fairpc
