// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "propsel/params.hpp"

namespace propsel {

struct ValidatorRecord {
    std::uint64_t index = 0;
    Gwei effective_balance = 0;

    bool operator==(const ValidatorRecord&) const = default;
};

/// fold factor -> number of validators holding 32 * fold ETH.
using FoldCounts = std::map<std::uint32_t, std::uint64_t>;

struct HomogeneousSpec {
    std::uint64_t n = 0;
    Gwei effective_balance = 0;

    bool operator==(const HomogeneousSpec&) const = default;
};

/// The two registry shapes accepted on the command line and in JSON.
using RegistrySpec = std::variant<HomogeneousSpec, FoldCounts>;

/// Immutable, densely indexed validator set. Indices are 0..n-1 in storage
/// order and the cached total always equals the sum of the balances.
class ValidatorRegistry {
public:
    std::size_t size() const { return records_.size(); }
    std::span<const ValidatorRecord> records() const { return records_; }
    const ValidatorRecord& operator[](std::size_t i) const { return records_[i]; }
    Gwei balance(std::size_t i) const { return records_[i].effective_balance; }
    Gwei total_effective_balance() const { return total_; }
    Gwei max_balance() const { return max_; }

    /// True when every record carries the same balance.
    bool homogeneous() const;

    /// balance -> number of validators at that balance.
    std::map<Gwei, std::uint64_t> balance_histogram() const;

    const SelectionParams& params() const { return params_; }

private:
    friend ValidatorRegistry build_from_balances(std::span<const Gwei>, const SelectionParams&);

    ValidatorRegistry(std::vector<ValidatorRecord> records, const SelectionParams& params);

    std::vector<ValidatorRecord> records_;
    Gwei total_ = 0;
    Gwei max_ = 0;
    SelectionParams params_;
};

/// n validators at balance eb.
ValidatorRegistry build_homogeneous(std::uint64_t n, Gwei eb,
                                    const SelectionParams& params = SelectionParams::post_7251());

/// Ascending fold order; zero-count folds are skipped but at least one
/// validator must remain.
ValidatorRegistry build_from_counts(const FoldCounts& counts,
                                    const SelectionParams& params = SelectionParams::post_7251());

/// Arbitrary (mixed) balances in the given order.
ValidatorRegistry build_from_balances(std::span<const Gwei> balances,
                                      const SelectionParams& params = SelectionParams::post_7251());

ValidatorRegistry build_registry(const RegistrySpec& spec,
                                 const SelectionParams& params = SelectionParams::post_7251());

}  // namespace propsel
