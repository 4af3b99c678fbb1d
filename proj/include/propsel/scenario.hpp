// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "propsel/analytics.hpp"
#include "propsel/params.hpp"
#include "propsel/registry.hpp"

namespace propsel {

/// fold factor -> fraction of validators.
using FoldFractions = std::map<std::uint32_t, double>;

inline constexpr double kFractionTolerance = 1e-9;

struct ConsolidationStrategy {
    /// Share of the category's original 32 ETH validators consolidating at
    /// each fold. Sums to 1.
    FoldFractions fractions;
};

struct StakerCategory {
    std::string name;
    double weight = 0.0;  // share of the original validator set
    ConsolidationStrategy strategy;
};

struct ConsolidationScenario {
    std::uint64_t initial_set_size = 0;
    std::vector<StakerCategory> categories;

    /// Throws Error naming the offending category or fold.
    void validate(const SelectionParams& params) const;

    /// w(f) = sum over categories of weight * fraction(f).
    FoldFractions overall_fractions() const;
};

struct TypeProbabilities {
    double pass = 0.0;       // q(f)
    double candidate = 0.0;  // counts(f) / total
    double proposer = 0.0;   // candidate * pass
};

struct ScenarioReport {
    FoldCounts counts;
    std::uint64_t total = 0;
    FoldFractions type_fractions_original;
    double pass_marginal = 0.0;
    double candidate_marginal = 0.0;
    double proposer_marginal = 0.0;
    std::map<std::uint32_t, TypeProbabilities> per_type;
};

/// Post-consolidation validator counts. For each fold f,
/// count = round(initial * w(f) / f), rounding half to even. Fills counts,
/// total and type_fractions_original only.
ScenarioReport consolidate(const ConsolidationScenario& scenario, const SelectionParams& params);

/// Full report: consolidate() plus the marginals.
///
/// Marginals are weighted by the original-validator shares w(f), not by the
/// post-consolidation count shares:
///   pass      = sum_f w(f) q(f)
///   candidate = sum_f w(f) c(f)
///   proposer  = sum_f w(f) c(f) q(f)
/// with c(f) = counts(f) / total computed from the rounded counts. Proposer
/// is the deterministic AND of "type drawn as candidate" and "check passed",
/// which are independent given the type.
ScenarioReport marginals(const ConsolidationScenario& scenario, const SelectionParams& params,
                         EligibilityForm form = EligibilityForm::exact);

/// Evidence is either a category name or a fold factor.
using Evidence = std::variant<std::string, std::uint32_t>;

/// Digits-only text is a fold; anything else a category name.
Evidence parse_evidence(std::string_view text);

/// Category evidence keeps only that category (weight 1); fold evidence sends
/// every category to that single fold. The initial set size is unchanged.
ConsolidationScenario apply_evidence(const ConsolidationScenario& scenario,
                                     const Evidence& evidence);

/// The five-category example population of 716,800 validators. Small-scale
/// and semi-decentralised strategies are fitted to the single-category runs;
/// the other three are one split that reproduces the aggregate mixture.
ConsolidationScenario example_scenario();

/// Registry materialising a report's counts (ascending fold order).
ValidatorRegistry registry_from_report(const ScenarioReport& report,
                                       const SelectionParams& params);

}  // namespace propsel
