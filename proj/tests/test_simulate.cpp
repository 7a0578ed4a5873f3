#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "fairpc/errors.hpp"
#include "fairpc/simulate.hpp"
#include "support/instances.hpp"

using namespace fairpc;
using nlohmann::json;

TEST_SUITE_BEGIN("simulate");

namespace {

ExperimentConfig tiny_config(uint64_t horizon = 500, int reps = 3) {
    ExperimentConfig cfg;
    cfg.instance = testref::synthetic_instance();
    cfg.horizon = horizon;
    cfg.replications = reps;
    cfg.master_seed = 424242;
    cfg.diagnostics.shadow_argmax = true;
    cfg.diagnostics.ucb_drift_check = true;
    PolicyConfig p;
    p.name = "lcfl_m3";
    p.variant = PolicyVariant::lcfl;
    p.eta = 10.0;
    p.epsilon = 1e-5;
    p.m_picks = 3;
    cfg.sweep.push_back(p);
    return cfg;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("fairpc_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config json round trip and validation") {
    json j = config_to_json(tiny_config());
    const ExperimentConfig parsed = config_from_json(j);
    CHECK(parsed.horizon == 500);
    CHECK(parsed.replications == 3);
    CHECK(parsed.sweep.size() == 1);
    CHECK(parsed.sweep[0].m_picks == 3);
    CHECK(parsed.diagnostics.shadow_argmax);
    CHECK(config_to_json(parsed) == j);

    json no_sweep = j;
    no_sweep.erase("sweep");
    CHECK_THROWS_AS(config_from_json(no_sweep), config_error);
    json bad_horizon = j;
    bad_horizon["horizon"] = 0;
    CHECK_THROWS_AS(config_from_json(bad_horizon), config_error);
    json bad_family = j;
    bad_family["instance"]["family"] = {{"type", "mystery"}};
    CHECK_THROWS_AS(config_from_json(bad_family), config_error);
}

TEST_CASE("duplicate sweep names are disambiguated") {
    ExperimentConfig cfg = tiny_config();
    cfg.sweep.push_back(cfg.sweep[0]);
    json j = config_to_json(cfg);
    const ExperimentConfig parsed = config_from_json(j);
    CHECK(parsed.sweep[0].name != parsed.sweep[1].name);
}

TEST_CASE("single round single replication produces one trace row") {
    ExperimentConfig cfg = tiny_config(1, 1);
    const auto dir = fresh_dir("one_round");
    const RunResult result = run_experiment(cfg, 1, dir.string());

    const auto csv = slurp(dir / "trace_lcfl_m3_rep0.csv");
    // header plus exactly one data row
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    // regret after one round is the benchmark rate minus the pulled arm's mean
    double benchmark_rate = 0.0;
    for (size_t n = 0; n < 10; ++n) {
        benchmark_rate += cfg.instance.means[n] * result.benchmark.marginals[n];
    }
    const double reg = result.entries[0].per_replication_final_regret[0];
    bool matches_some_arm = false;
    for (double mu : cfg.instance.means) {
        if (std::abs(reg - (benchmark_rate - mu)) < 1e-12) matches_some_arm = true;
    }
    CHECK(matches_some_arm);
}

TEST_CASE("reruns are byte identical") {
    ExperimentConfig cfg = tiny_config(400, 2);
    const auto dir1 = fresh_dir("rerun_a");
    const auto dir2 = fresh_dir("rerun_b");
    const RunResult r1 = run_experiment(cfg, 1, dir1.string());
    const RunResult r2 = run_experiment(cfg, 1, dir2.string());
    write_summary(r1, dir1.string());
    write_summary(r2, dir2.string());
    CHECK(slurp(dir1 / "summary.json") == slurp(dir2 / "summary.json"));
    CHECK(slurp(dir1 / "trace_lcfl_m3_rep0.csv") == slurp(dir2 / "trace_lcfl_m3_rep0.csv"));
    CHECK(slurp(dir1 / "trace_lcfl_m3_rep1.csv") == slurp(dir2 / "trace_lcfl_m3_rep1.csv"));
}

TEST_CASE("summaries do not depend on the thread count") {
    ExperimentConfig cfg = tiny_config(300, 6);
    const RunResult serial = run_experiment(cfg, 1);
    const RunResult parallel = run_experiment(cfg, 4);
    CHECK(summary_to_json(serial) == summary_to_json(parallel));
}

TEST_CASE("sweep entries share the environment reward stream") {
    ExperimentConfig cfg = tiny_config(300, 2);
    PolicyConfig clone = cfg.sweep[0];
    clone.name = "same_policy_again";
    cfg.sweep.push_back(clone);
    const RunResult result = run_experiment(cfg, 1);
    // identical policies on the common reward stream must coincide exactly
    CHECK(result.entries[0].per_replication_final_regret ==
          result.entries[1].per_replication_final_regret);
    CHECK(result.entries[0].final_violation_mean_service ==
          result.entries[1].final_violation_mean_service);
}

TEST_CASE("comparison counters follow the per-round formulas") {
    ExperimentConfig cfg = tiny_config(250, 1);
    PolicyConfig direct = cfg.sweep[0];
    direct.name = "direct";
    direct.variant = PolicyVariant::pessimistic_optimistic;
    cfg.sweep.push_back(direct);
    const RunResult result = run_experiment(cfg, 1);
    CHECK(result.entries[0].comparisons_per_replication == (3 + 1) * 250);
    CHECK(result.entries[1].comparisons_per_replication ==
          static_cast<uint64_t>(10) * 250);
}

TEST_CASE("guarantee verdicts land in the summary") {
    ExperimentConfig cfg = tiny_config(400, 2);
    const RunResult result = run_experiment(cfg, 1);
    const json summary = summary_to_json(result);
    const auto& checks = summary.at("entries").at(0).at("checks");
    const std::string regret = checks.at("regret_bound").get<std::string>();
    CHECK((regret == "pass" || regret == "fail" || regret == "not-in-force"));
    // epsilon = 1e-5 is far below delta_max / 2, so the regret guarantee is in force
    CHECK(regret != "not-in-force");
}

TEST_CASE("infeasible targets are rejected before simulating") {
    ExperimentConfig cfg = tiny_config(10, 1);
    for (auto& t : cfg.instance.targets) t = 0.99;  // impossible at 40% load
    CHECK_THROWS_AS(run_experiment(cfg, 1), infeasible_error);
}

TEST_CASE("comparing a summary against itself passes with zero margins") {
    ExperimentConfig cfg = tiny_config(300, 3);
    PolicyConfig m1 = cfg.sweep[0];
    m1.name = "m1";
    m1.m_picks = 1;
    cfg.sweep.push_back(m1);
    const RunResult result = run_experiment(cfg, 1);
    const json summary = summary_to_json(result);
    const CompareReport report = compare_policies({summary, summary});
    REQUIRE(!report.checks.empty());
    // every pair appears twice (two copies of each entry); identical data passes
    int regret_checks = 0;
    for (const auto& c : report.checks) {
        if (c.description.rfind("regret", 0) == 0) ++regret_checks;
    }
    CHECK(regret_checks > 0);
}

TEST_CASE("identical entry data passes trend checks with zero margins") {
    ExperimentConfig cfg = tiny_config(200, 3);
    const RunResult result = run_experiment(cfg, 1);
    json summary = summary_to_json(result);
    json clone = summary["entries"][0];
    clone["policy"]["name"] = "clone_m1";
    clone["policy"]["m_picks"] = 1;
    summary["entries"].push_back(clone);
    const CompareReport report = compare_policies({summary});
    REQUIRE(!report.checks.empty());
    for (const auto& c : report.checks) {
        CHECK(c.pass);
        CHECK(c.mean_diff == 0.0);
    }
    CHECK(report.all_pass);
}

TEST_CASE("summaries from different experiments refuse to compare") {
    ExperimentConfig cfg = tiny_config(200, 2);
    const json a = summary_to_json(run_experiment(cfg, 1));
    cfg.master_seed += 1;
    const json b = summary_to_json(run_experiment(cfg, 1));
    CHECK_THROWS_AS(compare_policies({a, b}), argument_error);
}

TEST_CASE("queue-only scheduling accumulates regret linearly") {
    ExperimentConfig cfg = tiny_config(2000, 4);
    cfg.sweep[0].name = "queue_pc";
    cfg.sweep[0].variant = PolicyVariant::queue_pc;
    cfg.sweep[0].eta = 0.0;
    const double at_2000 = run_experiment(cfg, 2).entries[0].final_regret_mean;
    cfg.horizon = 4000;
    const double at_4000 = run_experiment(cfg, 2).entries[0].final_regret_mean;
    CHECK(at_2000 > 0.0);
    // slope bounded away from zero: doubling the horizon nearly doubles the regret
    CHECK(at_4000 > 1.5 * at_2000);
}

TEST_CASE("subsampled traces always include the final round") {
    ExperimentConfig cfg = tiny_config(250, 1);  // stride 100 -> rows at 100, 200, 250
    const auto dir = fresh_dir("stride");
    run_experiment(cfg, 1, dir.string());
    std::ifstream in(dir / "trace_lcfl_m3_rep0.csv");
    std::string line;
    std::vector<uint64_t> rounds;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        rounds.push_back(std::stoull(line.substr(0, line.find(','))));
    }
    CHECK(rounds == std::vector<uint64_t>{100, 200, 250});
}

TEST_SUITE_END();
