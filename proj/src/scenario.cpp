// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace propsel {

namespace {

double fraction_sum(const FoldFractions& fractions) {
    double s = 0.0;
    for (const auto& [fold, x] : fractions) s += x;
    return s;
}

}  // namespace

void ConsolidationScenario::validate(const SelectionParams& params) const {
    if (initial_set_size == 0) throw Error("initial_set_size must be at least 1");
    if (categories.empty()) throw Error("scenario has no staker categories");
    double weight_sum = 0.0;
    for (const auto& cat : categories) {
        if (!(cat.weight >= 0.0)) throw Error("category '" + cat.name + "' has a negative weight");
        weight_sum += cat.weight;
        if (cat.strategy.fractions.empty())
            throw Error("category '" + cat.name + "' has an empty strategy");
        for (const auto& [fold, x] : cat.strategy.fractions) {
            if (fold == 0) throw Error("category '" + cat.name + "' uses fold 0");
            if (fold_balance(fold) > params.max_effective_balance)
                throw Error("category '" + cat.name + "' uses fold " + std::to_string(fold) +
                            " beyond MaxEB");
            if (!(x >= 0.0))
                throw Error("category '" + cat.name + "' has a negative fraction");
        }
        if (std::abs(fraction_sum(cat.strategy.fractions) - 1.0) > kFractionTolerance)
            throw Error("strategy fractions of category '" + cat.name + "' do not sum to 1");
    }
    if (std::abs(weight_sum - 1.0) > kFractionTolerance)
        throw Error("category weights do not sum to 1");
}

FoldFractions ConsolidationScenario::overall_fractions() const {
    FoldFractions out;
    for (const auto& cat : categories)
        for (const auto& [fold, x] : cat.strategy.fractions) out[fold] += cat.weight * x;
    return out;
}

ScenarioReport consolidate(const ConsolidationScenario& scenario, const SelectionParams& params) {
    scenario.validate(params);
    ScenarioReport report;
    report.type_fractions_original = scenario.overall_fractions();
    for (const auto& [fold, w] : report.type_fractions_original) {
        // nearbyint honours the default round-half-to-even mode.
        const double exact = static_cast<double>(scenario.initial_set_size) * w / fold;
        const auto count = static_cast<std::uint64_t>(std::nearbyint(exact));
        report.counts[fold] = count;
        report.total += count;
    }
    if (report.total == 0) throw Error("consolidation leaves no validators");
    return report;
}

ScenarioReport marginals(const ConsolidationScenario& scenario, const SelectionParams& params,
                         EligibilityForm form) {
    ScenarioReport report = consolidate(scenario, params);
    const double total = static_cast<double>(report.total);
    for (const auto& [fold, w] : report.type_fractions_original) {
        TypeProbabilities t;
        t.pass = eligibility_probability(fold_balance(fold), params, form);
        t.candidate = static_cast<double>(report.counts.at(fold)) / total;
        t.proposer = t.candidate * t.pass;
        report.per_type[fold] = t;
        report.pass_marginal += w * t.pass;
        report.candidate_marginal += w * t.candidate;
        report.proposer_marginal += w * t.proposer;
    }
    return report;
}

Evidence parse_evidence(std::string_view text) {
    if (text.empty()) throw Error("empty evidence");
    if (std::ranges::all_of(text, [](char c) { return c >= '0' && c <= '9'; })) {
        if (text.size() > 9) throw Error("fold evidence out of range");
        return static_cast<std::uint32_t>(std::stoul(std::string(text)));
    }
    return std::string(text);
}

ConsolidationScenario apply_evidence(const ConsolidationScenario& scenario,
                                     const Evidence& evidence) {
    ConsolidationScenario out;
    out.initial_set_size = scenario.initial_set_size;
    if (const auto* name = std::get_if<std::string>(&evidence)) {
        auto it = std::ranges::find(scenario.categories, *name, &StakerCategory::name);
        if (it == scenario.categories.end())
            throw Error("unknown staker category '" + *name + "'");
        StakerCategory only = *it;
        only.weight = 1.0;
        out.categories.push_back(std::move(only));
        return out;
    }
    const std::uint32_t fold = std::get<std::uint32_t>(evidence);
    const auto mixture = scenario.overall_fractions();
    auto it = mixture.find(fold);
    if (it == mixture.end() || it->second <= 0.0)
        throw Error("fold " + std::to_string(fold) + " does not occur in the scenario");
    for (const auto& cat : scenario.categories)
        out.categories.push_back({cat.name, cat.weight, {{{fold, 1.0}}}});
    return out;
}

ConsolidationScenario example_scenario() {
    ConsolidationScenario s;
    s.initial_set_size = 716'800;
    s.categories = {
        {"small-scale", 0.30, {{{1, 0.40}, {2, 0.40}, {5, 0.20}}}},
        {"large-individual", 0.15,
         {{{1, 0.10}, {2, 0.10}, {5, 0.10}, {10, 0.20}, {30, 0.20}, {64, 0.30}}}},
        {"large-institutional", 0.15,
         {{{1, 0.25}, {2, 0.25}, {5, 0.20}, {10, 0.10}, {30, 0.10}, {64, 0.10}}}},
        {"centralised-pool", 0.10,
         {{{1, 0.25}, {2, 0.25}, {5, 0.15}, {10, 0.15}, {30, 0.10}, {64, 0.10}}}},
        {"semi-decentralised-pool", 0.30,
         {{{1, 0.30}, {2, 0.20}, {5, 0.10}, {10, 0.10}, {30, 0.10}, {64, 0.20}}}},
    };
    return s;
}

ValidatorRegistry registry_from_report(const ScenarioReport& report,
                                       const SelectionParams& params) {
    return build_from_counts(report.counts, params);
}

}  // namespace propsel
