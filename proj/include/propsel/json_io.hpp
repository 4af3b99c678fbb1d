// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "propsel/montecarlo.hpp"
#include "propsel/registry.hpp"
#include "propsel/scenario.hpp"
#include "propsel/selection.hpp"

namespace propsel {

using json = nlohmann::json;

/// Input that does not match a document schema. what() starts with the
/// JSON pointer of the offending value, e.g. "/categories/2/weight: ...".
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& message);
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

/// {"homogeneous": {"n": ..., "eb_gwei": ...}} or {"counts": {"1": ..., "64": ...}}
RegistrySpec registry_spec_from_json(const json& doc);
/// Same shape, plus a "totals" object when `built` is given.
json registry_spec_to_json(const RegistrySpec& spec, const ValidatorRegistry* built = nullptr);

/// Accepts a file path or an inline JSON object (text starting with '{').
json load_json_argument(std::string_view file_or_inline);
json load_json_file(const std::string& path);

json params_to_json(const SelectionParams& params);
SelectionParams params_from_json(const json& doc);

/// {"initial_set_size": ..., "categories": [{"name", "weight", "strategy": {"1": 0.4, ...}}]}
ConsolidationScenario scenario_from_json(const json& doc);
json scenario_to_json(const ConsolidationScenario& scenario);

json scenario_report_to_json(const ScenarioReport& report);
ScenarioReport scenario_report_from_json(const json& doc);

/// Table-2-shaped CSV: fold, balance_eth, proportion_original, validators,
/// p_candidate, p_pass, p_proposer, then a TOTAL row.
std::string scenario_report_csv(const ScenarioReport& report);

json shuffle_vector_to_json(const Seed& seed, std::uint64_t index_count,
                            const SelectionParams& params);
/// Checks shape and that the mapping is a permutation of 0..index_count-1.
void validate_shuffle_vector(const json& doc);

json proposer_vector_to_json(const Seed& seed, const RegistrySpec& spec,
                             const SelectionOutcome& outcome);
void validate_proposer_vector(const json& doc);

json simulation_report_to_json(const SimulationReport& report, const SimulationPlan& plan,
                               const ComparisonSummary* comparison = nullptr);
/// Parses the counting fields back; metadata is ignored.
SimulationReport simulation_report_from_json(const json& doc);

/// iterations, failures, count, empirical_pmf
std::string iteration_histogram_csv(const SimulationReport& report);

}  // namespace propsel
