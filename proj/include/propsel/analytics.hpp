// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "propsel/params.hpp"
#include "propsel/registry.hpp"

namespace propsel {

/// How the per-candidate pass probability q(eb) is evaluated.
enum class EligibilityForm {
    exact,          // (floor(255 * eb / m) + 1) / 256 for a uniform random byte
    continuous,     // eb / m
    paper_rounded,  // exact, rounded to three decimals (0.016, 0.031, ...)
};

/// Probability that a candidate with balance eb passes the eligibility check.
double eligibility_probability(Gwei eb, const SelectionParams& params,
                               EligibilityForm form = EligibilityForm::exact);

/// Number of random bytes (out of 256) for which eb passes.
std::uint32_t passing_byte_count(Gwei eb, const SelectionParams& params);

/// Geometric law of the number of failed checks before the first pass, for
/// a constant pass probability p per round. Powers of (1 - p) are evaluated
/// as exp(k * log1p(-p)).
class RoundDistribution {
public:
    /// Requires 0 < p <= 1.
    explicit RoundDistribution(double p);

    double pass_probability() const { return p_; }

    /// P(exactly k failures) = p (1 - p)^k
    double pmf(std::uint64_t k) const;
    /// P(failures <= k)
    double cdf(std::uint64_t k) const;
    /// P(failures > k) = (1 - p)^(k + 1). This is the convention behind the
    /// "more than k iterations" tail values quoted for solo validators.
    double survival(std::uint64_t k) const;
    /// (1 - p)^k, i.e. P(failures >= k).
    double survival_plain(std::uint64_t k) const;

    /// Smallest k with cdf(k) >= q, for 0 <= q < 1.
    std::uint64_t quantile(double q) const;
    std::uint64_t median() const { return quantile(0.5); }

    /// Real k solving (1 - p)^k = 1/2. Rounded, this gives 43 for p = 0.016
    /// where the discrete median is 42.
    double half_life() const;

    double mean_failures() const { return (1.0 - p_) / p_; }

private:
    double power(double k) const;

    double p_;
    double log_q_;  // log1p(-p)
};

/// 1 / n
double first_candidate_probability(std::uint64_t n);

/// (1 / n) * q(eb): proposer on the very first candidate draw.
double first_slot_proposer_probability(std::uint64_t n, Gwei eb, const SelectionParams& params,
                                       EligibilityForm form = EligibilityForm::exact);

/// sum_{i=1}^{rounds} (p / n) (1 - p)^(i - 1): the chance that one validator of
/// a homogeneous set of n, each passing with probability p, is chosen within
/// the first `rounds` candidate draws. Summed term by term; the shortfall
/// from 1/n is (1 - p)^rounds / n.
double homogeneous_round_sum(std::uint64_t n, double p, std::uint64_t rounds);

/// Per-validator probability of being the proposer under the with-
/// replacement model: q(eb_v) / sum_j q(eb_j).
std::vector<double> proposer_probabilities(const ValidatorRegistry& registry,
                                           EligibilityForm form = EligibilityForm::exact);

double overall_proposer_probability(const ValidatorRegistry& registry, std::uint64_t index,
                                    EligibilityForm form = EligibilityForm::exact);

/// Summed overall_proposer_probability over a staker's validators.
double staker_proposer_probability(const ValidatorRegistry& registry,
                                   std::span<const std::uint64_t> indices,
                                   EligibilityForm form = EligibilityForm::exact);

/// Exact per-validator proposer probability when the candidate order is a
/// uniformly random permutation walked cyclically (no replacement within a
/// pass). O(n^3); n is limited to 512.
std::vector<double> permutation_proposer_probabilities(const ValidatorRegistry& registry);

}  // namespace propsel
