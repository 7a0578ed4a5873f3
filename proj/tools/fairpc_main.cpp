#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairpc/errors.hpp"
#include "fairpc/metrics_bounds.hpp"
#include "fairpc/oracle.hpp"
#include "fairpc/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitGuaranteeFail = 4;

int cmd_run(const std::string& config_path, const std::string& out_override, bool strict,
            int threads) {
    fairpc::ExperimentConfig config = fairpc::load_config(config_path);
    if (!out_override.empty()) config.output_dir = out_override;

    const fairpc::RunResult result =
        fairpc::run_experiment(config, threads, config.output_dir);
    fairpc::write_summary(result, config.output_dir);

    for (const auto& entry : result.entries) {
        const std::string tstar = entry.zero_violation_mean_service
                                      ? std::to_string(*entry.zero_violation_mean_service)
                                      : "none";
        std::printf("%-24s regret %12.3f +- %8.3f  t*(mean-service) %-8s checks: regret=%s "
                    "violation=%s\n",
                    entry.policy.name.c_str(), entry.final_regret_mean,
                    entry.final_regret_stderr, tstar.c_str(), entry.regret_check.c_str(),
                    entry.violation_check.c_str());
    }
    std::printf("summary written to %s/summary.json\n", config.output_dir.c_str());
    if (strict && !result.all_guarantees_pass) return kExitGuaranteeFail;
    return kExitOk;
}

int cmd_bounds(const std::string& config_path) {
    const fairpc::ExperimentConfig config = fairpc::load_config(config_path);
    const fairpc::FeasibleFamily family =
        fairpc::FeasibleFamily::enumerate(config.instance.family_spec);
    const fairpc::Environment env(config.instance, family);
    const double delta_max = fairpc::max_slack(env.spec(), env.family());

    nlohmann::json out;
    out["delta_max"] = delta_max;
    out["family_size"] = env.family().size();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& cfg : config.sweep) {
        cfg.validate(env.family());
        const fairpc::BoundReport b =
            fairpc::compute_bounds(env.spec(), env.family(), cfg, config.horizon, delta_max);
        nlohmann::json je;
        je["name"] = cfg.name;
        je["alpha"] = b.alpha;
        je["c1"] = b.c1;
        je["c2"] = b.c2;
        je["c3"] = std::isinf(b.c3) ? nlohmann::json("inf") : nlohmann::json(b.c3);
        je["regret_bound"] = b.regret_bound;
        je["prop1_in_force"] = b.prop1_in_force;
        je["prop2_in_force"] = b.prop2_in_force;
        if (b.prop2_available) {
            je["d_rounds"] = b.d_rounds;
            je["gamma"] = b.gamma;
            je["b1"] = b.b1;
            je["zeta"] = b.zeta;
            je["u_const"] = b.u_const;
            je["theta"] = b.theta;
            je["v0"] = b.v0;
            je["g0"] = b.g0;
            je["t0"] = b.t0;
        } else {
            je["unavailable_reason"] = b.unavailable_reason;
        }
        entries.push_back(je);
    }
    out["entries"] = entries;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& summary_paths, bool strict) {
    std::vector<nlohmann::json> summaries;
    for (const auto& path : summary_paths) {
        std::ifstream in(path);
        if (!in) throw fairpc::argument_error("cannot open summary file: " + path);
        nlohmann::json j;
        in >> j;
        summaries.push_back(std::move(j));
    }
    const fairpc::CompareReport report = fairpc::compare_policies(summaries);
    for (const auto& check : report.checks) {
        std::printf("%s  %-60s mean_diff=%.6g stderr=%.6g t=%.3f\n",
                    check.pass ? "PASS" : "FAIL", check.description.c_str(), check.mean_diff,
                    check.stderr_diff, check.t_stat);
    }
    if (report.checks.empty()) std::printf("no comparable sweep pairs found\n");
    if (strict && !report.all_pass) return kExitGuaranteeFail;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fairness-constrained combinatorial bandit simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    bool strict = false;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "simulate the sweep; write trace CSVs and summary");
    run->add_option("--config", config_path, "experiment config (json)")->required();
    run->add_option("--out", out_override, "output directory (overrides config)");
    run->add_option("--threads", threads, "worker threads per sweep entry")->default_val(1);
    run->add_flag("--strict", strict, "exit 4 when a guarantee check fails");

    CLI::App* bounds = app.add_subcommand("bounds", "print analytical bound reports, no simulation");
    bounds->add_option("--config", config_path, "experiment config (json)")->required();

    CLI::App* compare = app.add_subcommand("compare", "ordering trends across run summaries");
    std::vector<std::string> summary_paths;
    compare->add_option("--summaries", summary_paths, "summary.json files")
        ->required()
        ->expected(-1);
    compare->add_flag("--strict", strict, "exit 4 when a trend verdict fails");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_override, strict, threads);
        if (bounds->parsed()) return cmd_bounds(config_path);
        if (compare->parsed()) return cmd_compare(summary_paths, strict);
    } catch (const fairpc::infeasible_error& e) {
        std::fprintf(stderr, "infeasible instance: %s\n", e.what());
        return kExitInfeasible;
    } catch (const fairpc::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const fairpc::argument_error& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
