#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include <json.hpp>

#include "fairpc/environment.hpp"
#include "fairpc/errors.hpp"
#include "fairpc/feasible_sets.hpp"
#include "fairpc/metrics_bounds.hpp"
#include "fairpc/oracle.hpp"
#include "fairpc/policies.hpp"
#include "fairpc/rng.hpp"
#include "fairpc/simulate.hpp"

namespace py = pybind11;
using namespace fairpc;

namespace {

nlohmann::json json_from_pystr(const std::string& text) { return nlohmann::json::parse(text); }

py::object pyjson(const nlohmann::json& j) {
    py::module_ pyjson_mod = py::module_::import("json");
    return pyjson_mod.attr("loads")(j.dump());
}

FamilyDescriptor descriptor_from_obj(const py::object& obj, int num_arms) {
    py::module_ pyjson_mod = py::module_::import("json");
    const std::string text = pyjson_mod.attr("dumps")(obj).cast<std::string>();
    FamilyDescriptor d = family_descriptor_from_json(json_from_pystr(text));
    if (d.num_arms == 0) d.num_arms = num_arms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fairness-constrained combinatorial bandit simulation core";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<argument_error>(m, "ArgumentError");
    py::register_exception<infeasible_error>(m, "InfeasibleError");

    py::class_<SuperArm>(m, "SuperArm")
        .def_readonly("arms", &SuperArm::arms)
        .def_readonly("index", &SuperArm::index)
        .def("__repr__", [](const SuperArm& s) { return to_string(s); });

    py::class_<FeasibleFamily>(m, "FeasibleFamily")
        .def_static(
            "enumerate",
            [](const py::object& descriptor, int num_arms) {
                return FeasibleFamily::enumerate(descriptor_from_obj(descriptor, num_arms));
            },
            py::arg("descriptor"), py::arg("num_arms") = 0,
            "Enumerate a family from a descriptor dict, e.g. {'type': 'singletons'}")
        .def("__len__", &FeasibleFamily::size)
        .def_property_readonly("num_arms", &FeasibleFamily::num_arms)
        .def_property_readonly("max_cardinality", &FeasibleFamily::max_cardinality)
        .def("member", &FeasibleFamily::member, py::return_value_policy::copy);

    m.def(
        "sample_distinct",
        [](const FeasibleFamily& family, int m_picks, uint64_t seed, uint64_t round) {
            RngStream rng(seed, StreamPurpose::sampling, 0, round);
            return sample_distinct(family, m_picks, rng);
        },
        py::arg("family"), py::arg("m_picks"), py::arg("seed"), py::arg("round") = 0,
        "Uniform without-replacement sample of member indices");

    m.def("ucb_weight", &ucb_weight, py::arg("pulls"), py::arg("reward_sum"), py::arg("round"));
    m.def("queue_update", &queue_update, py::arg("q"), py::arg("target"), py::arg("pad"),
          py::arg("pulled"), py::arg("reward"));
    m.def(
        "superarm_weight",
        [](const SuperArm& s, const std::vector<double>& w) {
            return superarm_weight(s, std::span<const double>(w));
        },
        py::arg("super_arm"), py::arg("combined_weights"));
    m.def(
        "full_argmax",
        [](const FeasibleFamily& family, const std::vector<double>& w) {
            return full_argmax(family, std::span<const double>(w));
        },
        py::arg("family"), py::arg("per_arm_weights"));

    m.def(
        "solve_benchmark",
        [](int num_arms, const std::vector<double>& means, const std::vector<double>& targets,
           const py::object& family_descriptor, double delta) {
            InstanceSpec spec;
            spec.num_arms = num_arms;
            spec.means = means;
            spec.targets = targets;
            spec.family_spec = descriptor_from_obj(family_descriptor, num_arms);
            const FeasibleFamily family = FeasibleFamily::enumerate(spec.family_spec);
            spec = validate_instance(std::move(spec), family);
            const OracleSolution sol = solve_benchmark(spec, family, delta);
            py::dict out;
            out["distribution"] = sol.distribution;
            out["optimal_reward"] = sol.optimal_reward;
            out["marginals"] = sol.marginals;
            out["delta_used"] = sol.delta_used;
            return out;
        },
        py::arg("num_arms"), py::arg("means"), py::arg("targets"), py::arg("family"),
        py::arg("delta") = 0.0);

    m.def(
        "max_slack",
        [](int num_arms, const std::vector<double>& means, const std::vector<double>& targets,
           const py::object& family_descriptor) {
            InstanceSpec spec;
            spec.num_arms = num_arms;
            spec.means = means;
            spec.targets = targets;
            spec.family_spec = descriptor_from_obj(family_descriptor, num_arms);
            const FeasibleFamily family = FeasibleFamily::enumerate(spec.family_spec);
            spec = validate_instance(std::move(spec), family);
            return max_slack(spec, family);
        },
        py::arg("num_arms"), py::arg("means"), py::arg("targets"), py::arg("family"));

    m.def(
        "compute_bounds",
        [](const py::object& config_obj, const std::string& entry_name) {
            py::module_ pyjson_mod = py::module_::import("json");
            const std::string text = pyjson_mod.attr("dumps")(config_obj).cast<std::string>();
            const ExperimentConfig config = config_from_json(json_from_pystr(text));
            const FeasibleFamily family = FeasibleFamily::enumerate(config.instance.family_spec);
            const Environment env(config.instance, family);
            const double delta_max = max_slack(env.spec(), env.family());
            for (const auto& cfg : config.sweep) {
                if (!entry_name.empty() && cfg.name != entry_name) continue;
                const BoundReport b =
                    compute_bounds(env.spec(), env.family(), cfg, config.horizon, delta_max);
                py::dict out;
                out["name"] = cfg.name;
                out["alpha"] = b.alpha;
                out["c1"] = b.c1;
                out["c2"] = b.c2;
                out["c3"] = b.c3;
                out["delta"] = b.delta;
                out["regret_bound"] = b.regret_bound;
                out["prop1_in_force"] = b.prop1_in_force;
                out["prop2_in_force"] = b.prop2_in_force;
                out["prop2_available"] = b.prop2_available;
                if (b.prop2_available) {
                    out["d_rounds"] = b.d_rounds;
                    out["gamma"] = b.gamma;
                    out["b1"] = b.b1;
                    out["zeta"] = b.zeta;
                    out["u_const"] = b.u_const;
                    out["theta"] = b.theta;
                    out["v0"] = b.v0;
                    out["g0"] = b.g0;
                    out["t0"] = b.t0;
                }
                return py::object(out);
            }
            throw argument_error("no sweep entry named " + entry_name);
        },
        py::arg("config"), py::arg("entry_name") = "",
        "Analytical bound report for one sweep entry of a config dict");

    m.def(
        "run_experiment",
        [](const py::object& config_obj, int threads, std::optional<std::string> trace_dir) {
            py::module_ pyjson_mod = py::module_::import("json");
            const std::string text = pyjson_mod.attr("dumps")(config_obj).cast<std::string>();
            const ExperimentConfig config = config_from_json(json_from_pystr(text));
            RunResult result;
            {
                py::gil_scoped_release release;
                result = run_experiment(config, threads, trace_dir);
            }
            return pyjson(summary_to_json(result));
        },
        py::arg("config"), py::arg("threads") = 1, py::arg("trace_dir") = std::nullopt,
        "Run the configured sweep; returns the summary as a dict");

    m.def(
        "compare_policies",
        [](const std::vector<py::object>& summaries) {
            std::vector<nlohmann::json> docs;
            py::module_ pyjson_mod = py::module_::import("json");
            docs.reserve(summaries.size());
            for (const auto& s : summaries) {
                docs.push_back(json_from_pystr(pyjson_mod.attr("dumps")(s).cast<std::string>()));
            }
            const CompareReport report = compare_policies(docs);
            py::list checks;
            for (const auto& c : report.checks) {
                py::dict d;
                d["description"] = c.description;
                d["pass"] = c.pass;
                d["mean_diff"] = c.mean_diff;
                d["stderr_diff"] = c.stderr_diff;
                d["t_stat"] = c.t_stat;
                checks.append(d);
            }
            py::dict out;
            out["checks"] = checks;
            out["all_pass"] = report.all_pass;
            return out;
        },
        py::arg("summaries"), "Ordering trend verdicts across run summaries");
}
