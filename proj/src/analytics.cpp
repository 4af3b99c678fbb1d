// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/analytics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace propsel {

std::uint32_t passing_byte_count(Gwei eb, const SelectionParams& params) {
    validate_balance(eb, params);
    // rb passes iff rb <= 255 * eb / m.
    return static_cast<std::uint32_t>(eb * params.max_random_byte / params.max_effective_balance) + 1;
}

double eligibility_probability(Gwei eb, const SelectionParams& params, EligibilityForm form) {
    switch (form) {
    case EligibilityForm::continuous:
        validate_balance(eb, params);
        return static_cast<double>(eb) / static_cast<double>(params.max_effective_balance);
    case EligibilityForm::paper_rounded: {
        const double exact = passing_byte_count(eb, params) / 256.0;
        return std::round(exact * 1000.0) / 1000.0;
    }
    case EligibilityForm::exact:
    default:
        return passing_byte_count(eb, params) / 256.0;
    }
}

RoundDistribution::RoundDistribution(double p) : p_(p), log_q_(std::log1p(-p)) {
    if (!(p > 0.0 && p <= 1.0))
        throw Error("pass probability must lie in (0, 1], got " + std::to_string(p));
}

double RoundDistribution::power(double k) const {
    if (k == 0.0) return 1.0;
    if (p_ == 1.0) return 0.0;
    return std::exp(k * log_q_);
}

double RoundDistribution::pmf(std::uint64_t k) const {
    return p_ * power(static_cast<double>(k));
}

double RoundDistribution::cdf(std::uint64_t k) const { return 1.0 - survival(k); }

double RoundDistribution::survival(std::uint64_t k) const {
    return power(static_cast<double>(k) + 1.0);
}

double RoundDistribution::survival_plain(std::uint64_t k) const {
    return power(static_cast<double>(k));
}

std::uint64_t RoundDistribution::quantile(double q) const {
    if (!(q >= 0.0 && q < 1.0)) throw Error("quantile level must lie in [0, 1)");
    if (p_ == 1.0 || q == 0.0) return 0;
    // cdf(k) >= q  <=>  (k + 1) log(1 - p) <= log(1 - q)
    double guess = std::ceil(std::log1p(-q) / log_q_) - 1.0;
    auto k = static_cast<std::uint64_t>(std::max(0.0, guess));
    while (k > 0 && cdf(k - 1) >= q) --k;
    while (cdf(k) < q) ++k;
    return k;
}

double RoundDistribution::half_life() const {
    if (p_ == 1.0) return 0.0;
    return std::log(0.5) / log_q_;
}

double first_candidate_probability(std::uint64_t n) {
    if (n == 0) throw Error("validator set size must be at least 1");
    return 1.0 / static_cast<double>(n);
}

double first_slot_proposer_probability(std::uint64_t n, Gwei eb, const SelectionParams& params,
                                       EligibilityForm form) {
    return first_candidate_probability(n) * eligibility_probability(eb, params, form);
}

double homogeneous_round_sum(std::uint64_t n, double p, std::uint64_t rounds) {
    const double candidate = first_candidate_probability(n);
    if (!(p > 0.0 && p <= 1.0)) throw Error("pass probability must lie in (0, 1]");
    double sum = 0.0;
    double none_before = 1.0;  // prod_{j < i} (1 - p)
    for (std::uint64_t i = 1; i <= rounds; ++i) {
        sum += candidate * p * none_before;
        none_before *= 1.0 - p;
    }
    return sum;
}

std::vector<double> proposer_probabilities(const ValidatorRegistry& registry,
                                           EligibilityForm form) {
    std::vector<double> out;
    out.reserve(registry.size());
    // Validators share a handful of balances; memoize q per balance.
    Gwei last_eb = 0;
    double last_q = 0.0;
    for (const auto& r : registry.records()) {
        if (r.effective_balance != last_eb) {
            last_eb = r.effective_balance;
            last_q = eligibility_probability(last_eb, registry.params(), form);
        }
        out.push_back(last_q);
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto& v : out) v /= total;
    return out;
}

double overall_proposer_probability(const ValidatorRegistry& registry, std::uint64_t index,
                                    EligibilityForm form) {
    if (index >= registry.size())
        throw Error("validator index " + std::to_string(index) + " not in registry");
    double total = 0.0;
    for (const auto& [eb, count] : registry.balance_histogram())
        total += static_cast<double>(count) * eligibility_probability(eb, registry.params(), form);
    return eligibility_probability(registry.balance(index), registry.params(), form) / total;
}

double staker_proposer_probability(const ValidatorRegistry& registry,
                                   std::span<const std::uint64_t> indices, EligibilityForm form) {
    const auto all = proposer_probabilities(registry, form);
    double sum = 0.0;
    for (auto i : indices) {
        if (i >= registry.size())
            throw Error("validator index " + std::to_string(i) + " not in registry");
        sum += all[i];
    }
    return sum;
}

std::vector<double> permutation_proposer_probabilities(const ValidatorRegistry& registry) {
    const std::size_t n = registry.size();
    if (n > 512) throw Error("permutation model is limited to 512 validators");
    std::vector<double> fail(n);
    double all_fail = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        fail[i] = 1.0 - eligibility_probability(registry.balance(i), registry.params());
        all_fail *= fail[i];
    }

    // In a uniform permutation, v's predecessor set has size k with
    // probability 1/n and is then a uniform k-subset of the others. mean[k]
    // tracks the mean over k-subsets of prod (1 - q_u), built one element at
    // a time so no binomial coefficient is ever formed.
    std::vector<double> out(n);
    std::vector<double> mean(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::fill(mean.begin(), mean.end(), 0.0);
        mean[0] = 1.0;
        std::size_t t = 0;
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            const double a = fail[u];
            for (std::size_t k = t + 1; k >= 1; --k)
                mean[k] = ((t + 1 - k) * mean[k] + k * a * mean[k - 1]) / static_cast<double>(t + 1);
            ++t;
        }
        const double first_pass = std::accumulate(mean.begin(), mean.end(), 0.0) / n;
        out[v] = (1.0 - fail[v]) * first_pass / (1.0 - all_fail);
    }
    return out;
}

}  // namespace propsel
