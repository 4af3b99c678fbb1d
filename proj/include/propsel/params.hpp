// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace propsel {

using Gwei = std::uint64_t;

inline constexpr Gwei kGweiPerEth = 1'000'000'000ULL;
inline constexpr Gwei kBaseStake = 32 * kGweiPerEth;
inline constexpr std::uint64_t kMaxRandomByte = (1U << 8) - 1;
inline constexpr std::uint32_t kDefaultShuffleRounds = 90;

constexpr Gwei eth(std::uint64_t amount) { return amount * kGweiPerEth; }

/// Raised for inputs that violate a domain invariant. The CLI maps it to exit
/// status 1; argument parsing problems exit with 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SelectionParams {
    Gwei max_effective_balance = eth(2048);
    std::uint64_t max_random_byte = kMaxRandomByte;
    std::uint32_t shuffle_rounds = kDefaultShuffleRounds;
    Gwei balance_increment = kGweiPerEth;

    /// Throws Error if any field is out of range.
    void validate() const;

    /// MaxEB = 32 ETH, the rule before consolidation was allowed.
    static SelectionParams pre_7251();
    /// MaxEB = 2048 ETH.
    static SelectionParams post_7251();
    static SelectionParams with_max_eb(Gwei max_eb);
    /// Accepts "pre-7251" and "post-7251".
    static SelectionParams preset(std::string_view name);

    bool operator==(const SelectionParams&) const = default;
};

/// Checks 0 < eb <= MaxEB and increment alignment.
void validate_balance(Gwei eb, const SelectionParams& params);

/// Number of 32 ETH base stakes making up `fold`-fold consolidation.
constexpr Gwei fold_balance(std::uint32_t fold) { return kBaseStake * fold; }

}  // namespace propsel
