// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "propsel/analytics.hpp"
#include "propsel/json_io.hpp"
#include "propsel/montecarlo.hpp"
#include "propsel/scenario.hpp"
#include "propsel/selection.hpp"
#include "propsel/shuffle.hpp"

namespace py = pybind11;
using namespace propsel;

namespace {

EligibilityForm parse_form(const std::string& name) {
    if (name == "exact") return EligibilityForm::exact;
    if (name == "continuous") return EligibilityForm::continuous;
    if (name == "paper_rounded") return EligibilityForm::paper_rounded;
    throw Error("unknown eligibility form '" + name + "'");
}

std::string proposer_vector(const std::string& spec_json, const std::string& seed_hex,
                            const SelectionParams& params, bool trace) {
    const auto spec = registry_spec_from_json(json::parse(spec_json));
    const Seed seed = Seed::from_hex(seed_hex);
    SelectionOptions options;
    options.collect_trace = trace;
    const auto outcome = compute_proposer_index(build_registry(spec, params), seed, options);
    return proposer_vector_to_json(seed, spec, outcome).dump();
}

std::string scenario_run(const std::string& scenario_json, const std::optional<std::string>& evidence,
                         const SelectionParams& params, const std::string& form) {
    auto sc = scenario_from_json(json::parse(scenario_json));
    if (evidence) sc = apply_evidence(sc, parse_evidence(*evidence));
    json doc = scenario_report_to_json(marginals(sc, params, parse_form(form)));
    doc["csv"] = scenario_report_csv(scenario_report_from_json(doc));
    return doc.dump();
}

std::string simulate(const std::string& spec_json, std::uint64_t slots, const std::string& seed_hex,
                     const SelectionParams& params, unsigned threads, bool trace,
                     std::optional<std::uint64_t> max_iterations) {
    SimulationPlan plan;
    plan.registry = registry_spec_from_json(json::parse(spec_json));
    plan.params = params;
    plan.slots = slots;
    plan.base_seed = Seed::from_hex(seed_hex);
    plan.threads = threads;
    plan.collect_trace = trace;
    plan.max_iterations = max_iterations;
    const auto registry = build_registry(plan.registry, params);
    SimulationReport report;
    {
        py::gil_scoped_release release;
        report = run(plan, registry);
    }
    const auto cmp = compare(report, registry);
    return simulation_report_to_json(report, plan, &cmp).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Proposer selection simulator and analytics";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<SelectionParams>(m, "SelectionParams")
        .def(py::init<>())
        .def_static("pre_7251", &SelectionParams::pre_7251)
        .def_static("post_7251", &SelectionParams::post_7251)
        .def_static("with_max_eb", &SelectionParams::with_max_eb, py::arg("max_effective_balance"))
        .def_static("preset", &SelectionParams::preset, py::arg("name"))
        .def_readwrite("max_effective_balance", &SelectionParams::max_effective_balance)
        .def_readwrite("max_random_byte", &SelectionParams::max_random_byte)
        .def_readwrite("shuffle_rounds", &SelectionParams::shuffle_rounds)
        .def_readwrite("balance_increment", &SelectionParams::balance_increment)
        .def("validate", &SelectionParams::validate)
        .def("__repr__", [](const SelectionParams& p) {
            return "SelectionParams(max_effective_balance=" + std::to_string(p.max_effective_balance) +
                   ", shuffle_rounds=" + std::to_string(p.shuffle_rounds) + ")";
        });

    m.attr("GWEI_PER_ETH") = kGweiPerEth;
    m.def("fold_balance", &fold_balance, py::arg("fold"));

    m.def(
        "eligibility_probability",
        [](Gwei eb, const SelectionParams& params, const std::string& form) {
            return eligibility_probability(eb, params, parse_form(form));
        },
        py::arg("eb"), py::arg("params") = SelectionParams::post_7251(), py::arg("form") = "exact");
    m.def("eligibility_check",
          [](Gwei eb, std::uint8_t rb, const SelectionParams& params) {
              return eligibility_check(eb, rb, params);
          },
          py::arg("eb"), py::arg("random_byte"), py::arg("params") = SelectionParams::post_7251());

    py::class_<RoundDistribution>(m, "RoundDistribution")
        .def(py::init<double>(), py::arg("p"))
        .def_property_readonly("pass_probability", &RoundDistribution::pass_probability)
        .def("pmf", &RoundDistribution::pmf, py::arg("k"))
        .def("cdf", &RoundDistribution::cdf, py::arg("k"))
        .def("survival", &RoundDistribution::survival, py::arg("k"))
        .def("quantile", &RoundDistribution::quantile, py::arg("q"))
        .def("median", &RoundDistribution::median)
        .def("half_life", &RoundDistribution::half_life)
        .def("mean_failures", &RoundDistribution::mean_failures);

    m.def("random_byte",
          [](const std::string& seed_hex, std::uint64_t i) { return random_byte(Seed::from_hex(seed_hex), i); },
          py::arg("seed"), py::arg("i"));
    m.def(
        "compute_shuffled_index",
        [](std::uint64_t index, std::uint64_t count, const std::string& seed_hex,
           const SelectionParams& params) {
            return compute_shuffled_index(index, count, Seed::from_hex(seed_hex), params);
        },
        py::arg("index"), py::arg("index_count"), py::arg("seed"),
        py::arg("params") = SelectionParams::post_7251());
    m.def(
        "shuffle_mapping",
        [](std::uint64_t count, const std::string& seed_hex, const SelectionParams& params) {
            if (count == 0) throw Error("index_count must be at least 1");
            const ShuffledSequence seq(count, Seed::from_hex(seed_hex), params);
            std::vector<std::uint64_t> out(count);
            for (std::uint64_t i = 0; i < count; ++i) out[i] = seq.at(i);
            return out;
        },
        py::arg("index_count"), py::arg("seed"), py::arg("params") = SelectionParams::post_7251());
    m.def(
        "derive_slot_seed",
        [](const std::string& base_hex, std::uint64_t slot) {
            return derive_slot_seed(Seed::from_hex(base_hex), slot).hex();
        },
        py::arg("base_seed"), py::arg("slot"));

    m.def(
        "proposer_probabilities",
        [](const std::vector<Gwei>& balances, const SelectionParams& params, const std::string& form) {
            return proposer_probabilities(build_from_balances(balances, params), parse_form(form));
        },
        py::arg("balances"), py::arg("params") = SelectionParams::post_7251(), py::arg("form") = "exact");

    m.def("_proposer_vector", &proposer_vector);
    m.def("_scenario_run", &scenario_run);
    m.def("_simulate", &simulate);
}
