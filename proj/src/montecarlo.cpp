// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "propsel/analytics.hpp"
#include "propsel/selection.hpp"
#include "propsel/shuffle.hpp"

namespace propsel {

namespace {

struct Partial {
    std::vector<std::uint64_t> counts;
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::vector<std::uint64_t> exhausted;
    std::vector<SlotRecord> records;
};

void run_block(const SimulationPlan& plan, const ValidatorRegistry& registry,
               std::uint64_t first, std::uint64_t last, Partial& out) {
    out.counts.assign(registry.size(), 0);
    ShuffledSequence order(registry.size(), plan.base_seed, registry.params());
    RandomByteStream bytes(plan.base_seed);
    SelectionOptions options;
    options.max_iterations = plan.max_iterations;
    for (std::uint64_t slot = first; slot < last; ++slot) {
        const Seed seed = derive_slot_seed(plan.base_seed, slot);
        order.reseed(seed);
        bytes.reseed(seed);
        try {
            const auto outcome = compute_proposer_index(registry, order, bytes, options);
            ++out.counts[outcome.proposer_index];
            ++out.histogram[outcome.iterations];
            if (plan.collect_trace)
                out.records.push_back({slot, outcome.proposer_index, outcome.iterations});
        } catch (const IterationLimitExceeded&) {
            out.exhausted.push_back(slot);
        }
    }
}

}  // namespace

SimulationReport run(const SimulationPlan& plan, const ValidatorRegistry& registry) {
    if (plan.slots == 0) throw Error("simulation needs at least one slot");
    const auto start = std::chrono::steady_clock::now();

    const unsigned threads = static_cast<unsigned>(
        std::clamp<std::uint64_t>(plan.threads == 0 ? 1 : plan.threads, 1, plan.slots));
    std::vector<Partial> partials(threads);
    {
        std::vector<std::jthread> workers;
        const std::uint64_t per = plan.slots / threads;
        const std::uint64_t extra = plan.slots % threads;
        std::uint64_t first = 0;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t last = first + per + (t < extra ? 1 : 0);
            workers.emplace_back([&, t, first, last] {
                run_block(plan, registry, first, last, partials[t]);
            });
            first = last;
        }
    }

    SimulationReport report;
    report.base_seed = plan.base_seed;
    report.slots = plan.slots;
    report.per_validator_counts.assign(registry.size(), 0);
    // Blocks are contiguous and merged in order, so records stay slot-sorted.
    for (auto& part : partials) {
        for (std::size_t i = 0; i < part.counts.size(); ++i)
            report.per_validator_counts[i] += part.counts[i];
        for (const auto& [k, c] : part.histogram) report.iteration_histogram[k] += c;
        report.exhausted_slots.insert(report.exhausted_slots.end(), part.exhausted.begin(),
                                      part.exhausted.end());
        report.slot_records.insert(report.slot_records.end(), part.records.begin(),
                                   part.records.end());
    }
    for (std::size_t i = 0; i < registry.size(); ++i)
        if (report.per_validator_counts[i] != 0)
            report.per_balance_counts[registry.balance(i)] += report.per_validator_counts[i];
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SimulationReport run(const SimulationPlan& plan) {
    return run(plan, build_registry(plan.registry, plan.params));
}

ComparisonSummary compare(const SimulationReport& report, const ValidatorRegistry& registry,
                          ReferenceModel model, double z_threshold) {
    if (report.per_validator_counts.size() != registry.size())
        throw Error("report has " + std::to_string(report.per_validator_counts.size()) +
                    " validators but the registry has " + std::to_string(registry.size()));
    const auto probs = model == ReferenceModel::permutation
                           ? permutation_proposer_probabilities(registry)
                           : proposer_probabilities(registry);
    std::uint64_t selected = 0;
    for (auto c : report.per_validator_counts) selected += c;

    std::map<Gwei, BalanceComparison> groups;
    std::map<Gwei, double> group_p;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        auto& g = groups[registry.balance(i)];
        g.balance = registry.balance(i);
        ++g.validators;
        g.observed += report.per_validator_counts[i];
        group_p[g.balance] += probs[i];
    }

    ComparisonSummary out;
    const double n = static_cast<double>(selected);
    for (auto& [eb, g] : groups) {
        const double pi = group_p[eb];
        g.expected = n * pi;
        const double var = n * pi * (1.0 - pi);
        const double diff = static_cast<double>(g.observed) - g.expected;
        g.z = var > 0.0 ? diff / std::sqrt(var) : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
        g.flagged = std::abs(g.z) > z_threshold;
        out.any_flagged = out.any_flagged || g.flagged;
        if (g.expected > 0.0) {
            out.max_relative_deviation =
                std::max(out.max_relative_deviation, std::abs(diff) / g.expected);
            out.chi_square += diff * diff / g.expected;
        }
        out.groups.push_back(g);
    }
    out.degrees_of_freedom = groups.size() > 0 ? groups.size() - 1 : 0;
    return out;
}

double ks_distance_geometric(const std::map<std::uint64_t, std::uint64_t>& iteration_histogram,
                             double p) {
    const RoundDistribution geo(p);
    std::uint64_t total = 0;
    for (const auto& [k, c] : iteration_histogram) total += c;
    if (total == 0) throw Error("empty histogram");
    double d = 0.0;
    std::uint64_t seen = 0;
    // Both CDFs are step functions on the failure counts; gaps are checked
    // just below each observed step and at it.
    for (const auto& [iterations, c] : iteration_histogram) {
        const std::uint64_t k = iterations - 1;
        const double before_emp = static_cast<double>(seen) / total;
        const double before_geo = k == 0 ? 0.0 : geo.cdf(k - 1);
        d = std::max(d, std::abs(before_emp - before_geo));
        seen += c;
        d = std::max(d, std::abs(static_cast<double>(seen) / total - geo.cdf(k)));
    }
    return d;
}

double ks_critical_value(std::uint64_t n, double alpha) {
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

double empirical_survival(const std::map<std::uint64_t, std::uint64_t>& iteration_histogram,
                          std::uint64_t k) {
    std::uint64_t total = 0, above = 0;
    for (const auto& [iterations, c] : iteration_histogram) {
        total += c;
        if (iterations - 1 > k) above += c;
    }
    if (total == 0) throw Error("empty histogram");
    return static_cast<double>(above) / total;
}

std::uint64_t empirical_median_failures(
    const std::map<std::uint64_t, std::uint64_t>& iteration_histogram) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : iteration_histogram) total += c;
    if (total == 0) throw Error("empty histogram");
    std::uint64_t seen = 0;
    for (const auto& [iterations, c] : iteration_histogram) {
        seen += c;
        if (2 * seen >= total) return iterations - 1;
    }
    return iteration_histogram.rbegin()->first - 1;
}

}  // namespace propsel
