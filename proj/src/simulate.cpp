#include "fairpc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <span>
#include <sstream>
#include <thread>

#include "fairpc/errors.hpp"

namespace fairpc {

using nlohmann::json;

FamilyDescriptor family_descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) {
        throw config_error("family descriptor must be an object with a \"type\" field");
    }
    const std::string type = j.at("type").get<std::string>();
    FamilyDescriptor d;
    if (type == "singletons") {
        d.kind = FamilyDescriptor::Kind::singletons;
    } else if (type == "k_subsets") {
        d.kind = FamilyDescriptor::Kind::k_subsets;
        d.k = j.at("k").get<int>();
    } else if (type == "independent_sets") {
        d.kind = FamilyDescriptor::Kind::independent_sets;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw config_error("edges must be [a, b] pairs");
            d.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        d.max_size = j.value("max_size", 0);
    } else if (type == "explicit") {
        d.kind = FamilyDescriptor::Kind::explicit_list;
        for (const auto& row : j.at("members")) {
            d.member_bits.push_back(row.get<std::vector<int>>());
        }
        if (!d.member_bits.empty()) d.num_arms = static_cast<int>(d.member_bits.front().size());
    } else {
        throw config_error("unknown family type: " + type);
    }
    return d;
}

json family_descriptor_to_json(const FamilyDescriptor& d) {
    json j;
    switch (d.kind) {
        case FamilyDescriptor::Kind::singletons:
            j["type"] = "singletons";
            break;
        case FamilyDescriptor::Kind::k_subsets:
            j["type"] = "k_subsets";
            j["k"] = d.k;
            break;
        case FamilyDescriptor::Kind::independent_sets: {
            j["type"] = "independent_sets";
            json edges = json::array();
            for (const auto& [a, b] : d.edges) edges.push_back({a, b});
            j["edges"] = edges;
            if (d.max_size > 0) j["max_size"] = d.max_size;
            break;
        }
        case FamilyDescriptor::Kind::explicit_list:
            j["type"] = "explicit";
            j["members"] = d.member_bits;
            break;
    }
    return j;
}

namespace {

PolicyConfig policy_config_from_json(const json& j) {
    PolicyConfig cfg;
    cfg.name = j.value("name", std::string{});
    cfg.variant = policy_variant_from_string(j.value("variant", std::string{"lcfl"}));
    cfg.eta = j.value("eta", 0.0);
    cfg.epsilon = j.value("epsilon", 0.0);
    cfg.m_picks = j.value("m_picks", 1);
    return cfg;
}

json policy_config_to_json(const PolicyConfig& cfg) {
    return json{{"name", cfg.name},
                {"variant", to_string(cfg.variant)},
                {"eta", cfg.eta},
                {"epsilon", cfg.epsilon},
                {"m_picks", cfg.m_picks}};
}

std::string default_entry_name(const PolicyConfig& cfg) {
    std::ostringstream os;
    os << to_string(cfg.variant) << "_eta" << cfg.eta << "_m" << cfg.m_picks;
    return os.str();
}

json bound_report_to_json(const BoundReport& b) {
    auto finite_or_string = [](double v) -> json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    json j{{"alpha", b.alpha},
           {"c1", b.c1},
           {"c2", b.c2},
           {"c3", finite_or_string(b.c3)},
           {"delta", b.delta},
           {"regret_bound", b.regret_bound},
           {"prop1_in_force", b.prop1_in_force},
           {"prop2_in_force", b.prop2_in_force},
           {"prop2_available", b.prop2_available}};
    if (b.prop2_available) {
        j["d_rounds"] = b.d_rounds;
        j["gamma"] = b.gamma;
        j["b1"] = b.b1;
        j["zeta"] = b.zeta;
        j["u_const"] = b.u_const;
        j["theta"] = b.theta;
        j["v0"] = b.v0;
        j["g0"] = b.g0;
        j["t0"] = finite_or_string(b.t0);
    } else {
        j["unavailable_reason"] = b.unavailable_reason;
    }
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    const json& inst = j.at("instance");
    cfg.instance.num_arms = inst.at("num_arms").get<int>();
    cfg.instance.means = inst.at("means").get<std::vector<double>>();
    cfg.instance.targets = inst.at("targets").get<std::vector<double>>();
    cfg.instance.family_spec = family_descriptor_from_json(inst.at("family"));
    if (cfg.instance.family_spec.num_arms == 0) {
        cfg.instance.family_spec.num_arms = cfg.instance.num_arms;
    }

    cfg.horizon = j.at("horizon").get<uint64_t>();
    cfg.replications = j.at("replications").get<int>();
    cfg.master_seed = j.at("master_seed").get<uint64_t>();
    cfg.benchmark_delta = j.value("benchmark_delta", 0.0);
    cfg.output_dir = j.value("output_dir", std::string{"out"});
    cfg.subsample = j.value("subsample", static_cast<uint64_t>(100));
    if (j.contains("diagnostics")) {
        const json& d = j.at("diagnostics");
        cfg.diagnostics.shadow_argmax = d.value("shadow_argmax", false);
        cfg.diagnostics.ucb_drift_check = d.value("ucb_drift_check", false);
    }
    if (!j.contains("sweep") || !j.at("sweep").is_array() || j.at("sweep").empty()) {
        throw config_error("config needs a non-empty sweep array");
    }
    for (const auto& entry : j.at("sweep")) cfg.sweep.push_back(policy_config_from_json(entry));

    if (cfg.horizon < 1) throw config_error("horizon must be >= 1");
    if (cfg.replications < 1) throw config_error("replications must be >= 1");
    if (cfg.subsample < 1) throw config_error("subsample stride must be >= 1");

    std::map<std::string, int> names;
    for (auto& entry : cfg.sweep) {
        if (entry.name.empty()) entry.name = default_entry_name(entry);
        const int seen = names[entry.name]++;
        if (seen > 0) entry.name += "_" + std::to_string(seen);
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json sweep = json::array();
    for (const auto& entry : cfg.sweep) sweep.push_back(policy_config_to_json(entry));
    return json{{"instance",
                 {{"num_arms", cfg.instance.num_arms},
                  {"means", cfg.instance.means},
                  {"targets", cfg.instance.targets},
                  {"family", family_descriptor_to_json(cfg.instance.family_spec)}}},
                {"horizon", cfg.horizon},
                {"replications", cfg.replications},
                {"master_seed", cfg.master_seed},
                {"benchmark_delta", cfg.benchmark_delta},
                {"sweep", sweep},
                {"diagnostics",
                 {{"shadow_argmax", cfg.diagnostics.shadow_argmax},
                  {"ucb_drift_check", cfg.diagnostics.ucb_drift_check}}},
                {"output_dir", cfg.output_dir},
                {"subsample", cfg.subsample}};
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error(std::string{"config is not valid json: "} + e.what());
    }
    return config_from_json(j);
}

RunTrace run_replication(const Environment& env, const PolicyConfig& cfg,
                         const DiagnosticsConfig& diag, uint64_t master_seed,
                         uint64_t replication, uint64_t horizon) {
    const FeasibleFamily& family = env.family();
    if (family.max_cardinality() > 64) {
        throw config_error("trace encoding supports at most 64 arms per super arm");
    }
    RunTrace trace;
    trace.horizon = horizon;
    trace.num_arms = env.spec().num_arms;
    trace.selections.resize(static_cast<size_t>(horizon));
    trace.reward_bits.resize(static_cast<size_t>(horizon));
    trace.shadow_enabled = diag.shadow_argmax;
    if (diag.shadow_argmax) trace.queue_gaps.resize(static_cast<size_t>(horizon));

    PolicyState state = make_initial_state(env.spec().num_arms);
    StepScratch scratch;
    StepDiagnostics sdiag;
    sdiag.shadow_argmax = diag.shadow_argmax;
    sdiag.ucb_drift_check = diag.ucb_drift_check;
    sdiag.log_horizon = std::log(static_cast<double>(horizon));

    for (uint64_t t = 0; t < horizon; ++t) {
        const RngStream rewards = env.reward_stream(master_seed, replication, t);
        RngStream sampling(master_seed, StreamPurpose::sampling, replication, t);
        const StepOutcome out =
            lcfl_step(state, family, cfg, env, rewards, sampling, sdiag, scratch);
        trace.selections[static_cast<size_t>(t)] = out.selected;
        uint64_t bits = 0;
        for (size_t i = 0; i < out.draws.size(); ++i) {
            if (out.draws[i].value) bits |= uint64_t{1} << i;
        }
        trace.reward_bits[static_cast<size_t>(t)] = bits;
        trace.comparisons += out.comparisons;
        trace.drift_violations += static_cast<uint64_t>(out.drift_violations);
        if (diag.shadow_argmax) {
            trace.queue_gaps[static_cast<size_t>(t)] = static_cast<float>(out.queue_gap);
            if (out.best_pick) trace.best_pick_rounds.push_back(static_cast<uint32_t>(t));
        }
    }
    return trace;
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
    }
    return out;
}

void fold_gap(GapMoments& gm, uint64_t gap) {
    gm.count += 1;
    gm.sum += static_cast<double>(gap);
    gm.sum_sq += static_cast<double>(gap) * static_cast<double>(gap);
    const double d = static_cast<double>(gap) - 1.0;
    gm.sum_sq_minus_one += d * d;
    gm.sum_q4_minus_one += d * d * d * d;
    gm.max_gap = std::max(gm.max_gap, gap);
}

// Gaps between consecutive best picks, measured from round 0 and truncated at the
// horizon, matching how the geometric inter-hit times are analyzed.
void fold_best_pick_gaps(GapMoments& gm, const std::vector<uint32_t>& rounds, uint64_t horizon) {
    uint64_t prev = 0;
    for (uint32_t r : rounds) {
        if (r == 0) continue;
        fold_gap(gm, r - prev);
        prev = r;
    }
    fold_gap(gm, horizon - prev);
}

void write_csv_row(std::FILE* f, uint64_t round, double regret, double viol_realized,
                   double viol_mean, const std::vector<double>& avg_reward,
                   uint64_t comparisons) {
    std::fprintf(f, "%" PRIu64 ",%.17g,%.17g,%.17g", round, regret, viol_realized, viol_mean);
    for (double v : avg_reward) std::fprintf(f, ",%.17g", v);
    std::fprintf(f, ",%" PRIu64 "\n", comparisons);
}

void write_trace_csv(const std::string& path, const RunTrace& trace, const FeasibleFamily& family,
                     const OracleSolution& benchmark, std::span<const double> means,
                     std::span<const double> targets, std::span<const double> mean_violation_curve,
                     uint64_t stride, uint64_t comparisons_per_round) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw config_error("cannot open trace file for writing: " + path);

    std::fprintf(f, "round,cumulative_regret,cumulative_violation_realized,"
                    "cumulative_violation_mean_service");
    for (int n = 1; n <= trace.num_arms; ++n) std::fprintf(f, ",per_arm_avg_reward_%d", n);
    std::fprintf(f, ",comparisons\n");

    double benchmark_rate = 0.0;
    for (size_t n = 0; n < means.size(); ++n) benchmark_rate += means[n] * benchmark.marginals[n];

    std::vector<double> service(static_cast<size_t>(trace.num_arms), 0.0);
    std::vector<double> avg_reward(static_cast<size_t>(trace.num_arms), 0.0);
    double pulled_mean_total = 0.0;
    replay_trace(trace, family, trace.horizon, [&](uint64_t t, const SuperArm& member,
                                                   uint64_t bits) {
        for (size_t j = 0; j < member.arms.size(); ++j) {
            if (bits >> j & 1u) service[static_cast<size_t>(member.arms[j])] += 1.0;
            pulled_mean_total += means[static_cast<size_t>(member.arms[j])];
        }
        const uint64_t round = t + 1;
        if (round % stride == 0 || round == trace.horizon) {
            const double rounds = static_cast<double>(round);
            double debt = 0.0;
            for (size_t n = 0; n < service.size(); ++n) {
                avg_reward[n] = service[n] / rounds;
                debt += std::max(rounds * targets[n] - service[n], 0.0);
            }
            write_csv_row(f, round, rounds * benchmark_rate - pulled_mean_total, debt,
                          mean_violation_curve[static_cast<size_t>(round)], avg_reward,
                          comparisons_per_round * round);
        }
    });
    std::fclose(f);
}

struct PairedSample {
    std::vector<double> diffs;

    double mean() const {
        double s = 0.0;
        for (double d : diffs) s += d;
        return diffs.empty() ? 0.0 : s / static_cast<double>(diffs.size());
    }
    double stderr_mean() const {
        const size_t n = diffs.size();
        if (n < 2) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (double d : diffs) ss += (d - m) * (d - m);
        return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

TrendCheck make_trend_check(std::string description, PairedSample sample) {
    TrendCheck c;
    c.description = std::move(description);
    c.mean_diff = sample.mean();
    c.stderr_diff = sample.stderr_mean();
    c.t_stat = c.stderr_diff > 0.0 ? c.mean_diff / c.stderr_diff : 0.0;
    c.pass = c.mean_diff >= -1e-9;
    return c;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, int threads,
                         const std::optional<std::string>& trace_dir) {
    const FeasibleFamily family = FeasibleFamily::enumerate(config.instance.family_spec);
    const Environment env(config.instance, family);
    const InstanceSpec& spec = env.spec();
    for (const PolicyConfig& cfg : config.sweep) cfg.validate(env.family());

    RunResult result;
    result.config = config;
    result.config.instance = spec;  // with derived s_max
    result.delta_max = max_slack(spec, env.family());
    result.benchmark = solve_benchmark(spec, env.family(), config.benchmark_delta);

    if (trace_dir) std::filesystem::create_directories(*trace_dir);

    const uint64_t horizon = config.horizon;
    const auto replications = static_cast<size_t>(config.replications);

    for (const PolicyConfig& cfg : config.sweep) {
        std::vector<RunTrace> traces(replications);
        std::atomic<size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const size_t r = next.fetch_add(1);
                if (r >= replications || failed.load()) return;
                try {
                    traces[r] = run_replication(env, cfg, config.diagnostics, config.master_seed,
                                                r, horizon);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        };
        const int worker_count =
            std::clamp(threads, 1, static_cast<int>(std::max<size_t>(replications, 1)));
        if (worker_count <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(worker_count));
            for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (error) std::rethrow_exception(error);

        EntrySummary entry;
        entry.policy = cfg;
        entry.bounds = compute_bounds(spec, env.family(), cfg, horizon, result.delta_max);
        entry.shadow = config.diagnostics.shadow_argmax;

        // Aggregation runs in replication order so outputs are thread-count invariant.
        entry.per_replication_final_regret.reserve(replications);
        double regret_sum = 0.0;
        std::vector<double> service_rate(static_cast<size_t>(spec.num_arms), 0.0);
        double viol_realized_sum = 0.0;
        uint64_t queue_gap_within = 0;
        uint64_t queue_gap_total = 0;
        for (size_t r = 0; r < replications; ++r) {
            const RunTrace& trace = traces[r];
            const double regret =
                pseudo_regret(trace, result.benchmark, spec.means, env.family(), horizon);
            entry.per_replication_final_regret.push_back(regret);
            regret_sum += regret;

            const std::vector<double> curve = violation_curve(trace, env.family(), spec.targets);
            entry.zero_violation_realized.push_back(zero_violation_point(curve));
            viol_realized_sum += curve.back();

            const std::vector<double> service = per_arm_service(trace, env.family(), horizon);
            for (size_t n = 0; n < service.size(); ++n) {
                service_rate[n] += service[n] / static_cast<double>(horizon);
            }

            entry.comparisons_per_replication = trace.comparisons;
            entry.drift_violations += trace.drift_violations;
            if (config.diagnostics.shadow_argmax) {
                entry.best_pick_count += trace.best_pick_rounds.size();
                fold_best_pick_gaps(entry.gap_moments, trace.best_pick_rounds, horizon);
                if (entry.bounds.prop2_available) {
                    for (float gap : trace.queue_gaps) {
                        queue_gap_total += 1;
                        if (static_cast<double>(gap) <= entry.bounds.b1 + 1e-9) {
                            queue_gap_within += 1;
                        }
                    }
                }
            }
        }
        entry.final_regret_mean = regret_sum / static_cast<double>(replications);
        if (replications > 1) {
            double ss = 0.0;
            for (double x : entry.per_replication_final_regret) {
                ss += (x - entry.final_regret_mean) * (x - entry.final_regret_mean);
            }
            entry.final_regret_stderr = std::sqrt(ss / static_cast<double>(replications - 1) /
                                                  static_cast<double>(replications));
        }
        for (double& v : service_rate) v /= static_cast<double>(replications);
        entry.per_arm_service_rate = std::move(service_rate);
        entry.final_violation_realized_mean = viol_realized_sum / static_cast<double>(replications);

        const std::vector<double> mean_curve =
            mean_service_violation_curve(traces, env.family(), spec.targets);
        entry.zero_violation_mean_service = zero_violation_point(mean_curve);
        entry.final_violation_mean_service = mean_curve.back();

        if (config.diagnostics.shadow_argmax) {
            entry.best_pick_rate = static_cast<double>(entry.best_pick_count) /
                                   (static_cast<double>(horizon) * static_cast<double>(replications));
            if (queue_gap_total > 0) {
                entry.queue_gap_frequency_within_b1 =
                    static_cast<double>(queue_gap_within) / static_cast<double>(queue_gap_total);
            }
        }

        if (!entry.bounds.prop1_in_force) {
            entry.regret_check = "not-in-force";
        } else {
            entry.regret_check =
                entry.final_regret_mean <= entry.bounds.regret_bound + 1e-9 ? "pass" : "fail";
        }
        if (!entry.bounds.prop2_in_force) {
            entry.violation_check = "not-in-force";
        } else {
            entry.violation_check = entry.zero_violation_mean_service &&
                                            static_cast<double>(*entry.zero_violation_mean_service) <=
                                                entry.bounds.t0
                                        ? "pass"
                                        : "fail";
        }
        if (entry.regret_check == "fail" || entry.violation_check == "fail") {
            result.all_guarantees_pass = false;
        }

        if (trace_dir) {
            const uint64_t per_round = cfg.variant == PolicyVariant::pessimistic_optimistic
                                           ? static_cast<uint64_t>(env.family().size())
                                           : static_cast<uint64_t>(cfg.m_picks) + 1;
            for (size_t r = 0; r < replications; ++r) {
                std::ostringstream name;
                name << "trace_" << sanitize(cfg.name) << "_rep" << r << ".csv";
                write_trace_csv((std::filesystem::path(*trace_dir) / name.str()).string(),
                                traces[r], env.family(), result.benchmark, spec.means,
                                spec.targets, mean_curve, config.subsample, per_round);
            }
        }

        result.entries.push_back(std::move(entry));
    }
    return result;
}

json summary_to_json(const RunResult& result) {
    json entries = json::array();
    for (const EntrySummary& e : result.entries) {
        json je{{"policy", policy_config_to_json(e.policy)},
                {"bounds", bound_report_to_json(e.bounds)},
                {"final_regret_mean", e.final_regret_mean},
                {"final_regret_stderr", e.final_regret_stderr},
                {"per_replication_final_regret", e.per_replication_final_regret},
                {"final_violation_mean_service", e.final_violation_mean_service},
                {"final_violation_realized_mean", e.final_violation_realized_mean},
                {"per_arm_service_rate", e.per_arm_service_rate},
                {"comparisons_per_replication", e.comparisons_per_replication},
                {"checks", {{"regret_bound", e.regret_check}, {"zero_violation_by_t0", e.violation_check}}}};
        je["zero_violation_mean_service"] =
            e.zero_violation_mean_service ? json(*e.zero_violation_mean_service) : json(nullptr);
        json realized = json::array();
        for (const auto& t : e.zero_violation_realized) {
            realized.push_back(t ? json(*t) : json(nullptr));
        }
        je["zero_violation_realized"] = realized;
        if (e.shadow) {
            json diag{{"best_pick_count", e.best_pick_count},
                      {"best_pick_rate", e.best_pick_rate},
                      {"gap_count", e.gap_moments.count},
                      {"gap_mean", e.gap_moments.mean()},
                      {"gap_sq_minus_one_mean", e.gap_moments.mean_sq_minus_one()},
                      {"gap_max", e.gap_moments.max_gap},
                      {"drift_violations", e.drift_violations}};
            diag["queue_gap_frequency_within_b1"] =
                e.queue_gap_frequency_within_b1 ? json(*e.queue_gap_frequency_within_b1)
                                                : json(nullptr);
            je["diagnostics"] = diag;
        }
        entries.push_back(std::move(je));
    }
    json config_echo = config_to_json(result.config);
    config_echo.erase("output_dir");  // destination paths are not experiment identity
    return json{{"config", std::move(config_echo)},
                {"delta_max", result.delta_max},
                {"benchmark",
                 {{"optimal_reward", result.benchmark.optimal_reward},
                  {"marginals", result.benchmark.marginals},
                  {"delta_used", result.benchmark.delta_used}}},
                {"entries", entries},
                {"all_guarantees_pass", result.all_guarantees_pass}};
}

void write_summary(const RunResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "summary.json");
    if (!out) throw config_error("cannot write summary.json under " + out_dir);
    out << summary_to_json(result).dump(2) << '\n';
}

namespace {

struct ComparableEntry {
    PolicyConfig policy;
    std::vector<double> regrets;
    std::vector<double> tstars;  // realized zero-violation points; none -> horizon + 1
};

double tstar_or_penalty(const json& v, uint64_t horizon) {
    if (v.is_null()) return static_cast<double>(horizon + 1);
    return v.get<double>();
}

}  // namespace

CompareReport compare_policies(const std::vector<json>& summaries) {
    if (summaries.empty()) throw argument_error("compare_policies: no summaries given");

    json reference;
    uint64_t horizon = 0;
    std::vector<ComparableEntry> entries;
    for (const json& s : summaries) {
        const json& cfg = s.at("config");
        json ident{{"instance", cfg.at("instance")},
                   {"horizon", cfg.at("horizon")},
                   {"replications", cfg.at("replications")},
                   {"master_seed", cfg.at("master_seed")}};
        if (reference.is_null()) {
            reference = ident;
            horizon = cfg.at("horizon").get<uint64_t>();
        } else if (ident != reference) {
            throw argument_error("compare_policies: summaries come from different experiments");
        }
        for (const json& je : s.at("entries")) {
            ComparableEntry e;
            e.policy = policy_config_from_json(je.at("policy"));
            e.regrets = je.at("per_replication_final_regret").get<std::vector<double>>();
            for (const json& t : je.at("zero_violation_realized")) {
                e.tstars.push_back(tstar_or_penalty(t, horizon));
            }
            entries.push_back(std::move(e));
        }
    }

    CompareReport report;
    auto add_pairwise = [&](const ComparableEntry& low, const ComparableEntry& high,
                            const std::string& axis, const std::string& what, bool flip) {
        if (low.regrets.size() != high.regrets.size()) {
            throw argument_error("compare_policies: replication counts differ");
        }
        PairedSample sample;
        const auto& a = what == "regret" ? low.regrets : low.tstars;
        const auto& b = what == "regret" ? high.regrets : high.tstars;
        for (size_t i = 0; i < a.size(); ++i) {
            sample.diffs.push_back(flip ? b[i] - a[i] : a[i] - b[i]);
        }
        report.checks.push_back(make_trend_check(what + " trend, " + axis, std::move(sample)));
        if (!report.checks.back().pass) report.all_pass = false;
    };

    // Group by everything except the swept parameter; consecutive pairs in sorted
    // order give the per-step verdicts.
    auto sweep_groups = [&](auto key_fn, auto param_fn, const std::string& param_name,
                            bool regret_flip, bool tstar_flip) {
        std::map<std::string, std::vector<const ComparableEntry*>> groups;
        for (const auto& e : entries) groups[key_fn(e.policy)].push_back(&e);
        for (auto& [key, group] : groups) {
            if (group.size() < 2) continue;
            std::sort(group.begin(), group.end(), [&](const auto* x, const auto* y) {
                return param_fn(x->policy) < param_fn(y->policy);
            });
            for (size_t i = 0; i + 1 < group.size(); ++i) {
                if (param_fn(group[i]->policy) == param_fn(group[i + 1]->policy)) continue;
                std::ostringstream axis;
                axis << param_name << " " << param_fn(group[i]->policy) << " -> "
                     << param_fn(group[i + 1]->policy) << " [" << key << "]";
                add_pairwise(*group[i], *group[i + 1], axis.str(), "regret", regret_flip);
                add_pairwise(*group[i], *group[i + 1], axis.str(), "zero_violation_point",
                             tstar_flip);
            }
        }
    };

    // Larger M: regret nonincreasing, zero-violation point nonincreasing.
    sweep_groups(
        [](const PolicyConfig& p) {
            std::ostringstream os;
            os << to_string(p.variant) << " eta=" << p.eta << " eps=" << p.epsilon;
            return os.str();
        },
        [](const PolicyConfig& p) { return static_cast<double>(p.m_picks); }, "m_picks",
        /*regret_flip=*/false, /*tstar_flip=*/false);
    // Larger eta: regret nonincreasing, zero-violation point nondecreasing.
    sweep_groups(
        [](const PolicyConfig& p) {
            std::ostringstream os;
            os << to_string(p.variant) << " m=" << p.m_picks << " eps=" << p.epsilon;
            return os.str();
        },
        [](const PolicyConfig& p) { return p.eta; }, "eta",
        /*regret_flip=*/false, /*tstar_flip=*/true);

    return report;
}

}  // namespace fairpc
