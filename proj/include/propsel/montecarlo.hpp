// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "propsel/hash.hpp"
#include "propsel/params.hpp"
#include "propsel/registry.hpp"

namespace propsel {

struct SimulationPlan {
    RegistrySpec registry;
    SelectionParams params = SelectionParams::post_7251();
    std::uint64_t slots = 0;
    Seed base_seed;
    unsigned threads = 1;
    bool collect_trace = false;  // keep one SlotRecord per slot
    std::optional<std::uint64_t> max_iterations;
};

struct SlotRecord {
    std::uint64_t slot = 0;
    std::uint64_t proposer = 0;
    std::uint64_t iterations = 0;

    bool operator==(const SlotRecord&) const = default;
};

struct SimulationReport {
    Seed base_seed;
    std::uint64_t slots = 0;
    std::vector<std::uint64_t> per_validator_counts;
    /// iterations (candidates examined, >= 1) -> number of slots
    std::map<std::uint64_t, std::uint64_t> iteration_histogram;
    /// effective balance -> proposals won by validators at that balance
    std::map<Gwei, std::uint64_t> per_balance_counts;
    /// Slots that hit the iteration bound; they contribute no proposer.
    std::vector<std::uint64_t> exhausted_slots;
    std::vector<SlotRecord> slot_records;
    double elapsed_seconds = 0.0;  // metadata, excluded from comparisons
};

/// Runs plan.slots independent selections. Slot s uses
/// derive_slot_seed(plan.base_seed, s); the result is identical for every
/// thread count.
SimulationReport run(const SimulationPlan& plan, const ValidatorRegistry& registry);
SimulationReport run(const SimulationPlan& plan);

/// Which closed form the observed frequencies are compared against.
enum class ReferenceModel {
    with_replacement,  // q_v / sum q
    permutation,       // exact cyclic-permutation walk, small registries only
};

struct BalanceComparison {
    Gwei balance = 0;
    std::uint64_t validators = 0;
    std::uint64_t observed = 0;
    double expected = 0.0;
    double z = 0.0;
    bool flagged = false;
};

struct ComparisonSummary {
    std::vector<BalanceComparison> groups;
    double max_relative_deviation = 0.0;
    double chi_square = 0.0;  // over balance groups
    std::size_t degrees_of_freedom = 0;
    bool any_flagged = false;
};

inline constexpr double kDefaultZThreshold = 4.0;

/// Per-balance-group z-scores of observed proposal counts against
/// slots * sum_{v in group} P(v). Groups with |z| > z_threshold are flagged.
ComparisonSummary compare(const SimulationReport& report, const ValidatorRegistry& registry,
                          ReferenceModel model = ReferenceModel::with_replacement,
                          double z_threshold = kDefaultZThreshold);

/// Largest gap between the empirical CDF of failures (iterations - 1) and the
/// geometric CDF with pass probability p.
double ks_distance_geometric(const std::map<std::uint64_t, std::uint64_t>& iteration_histogram,
                             double p);

/// Asymptotic one-sample Kolmogorov-Smirnov critical value sqrt(-ln(alpha/2)/2)/sqrt(n).
double ks_critical_value(std::uint64_t n, double alpha);

/// Empirical P(failures > k) from an iteration histogram.
double empirical_survival(const std::map<std::uint64_t, std::uint64_t>& iteration_histogram,
                          std::uint64_t k);

/// Smallest failure count whose empirical CDF reaches 1/2.
std::uint64_t empirical_median_failures(
    const std::map<std::uint64_t, std::uint64_t>& iteration_histogram);

}  // namespace propsel
