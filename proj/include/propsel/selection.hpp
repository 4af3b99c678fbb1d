// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "propsel/hash.hpp"
#include "propsel/params.hpp"
#include "propsel/registry.hpp"
#include "propsel/shuffle.hpp"

namespace propsel {

/// hash(seed ++ uint64_le(i / 32))[i % 32]
std::uint8_t random_byte(const Seed& seed, std::uint64_t i);

/// random_byte() with the current 32-byte block cached, so consecutive steps
/// cost one hash per 32 draws.
class RandomByteStream {
public:
    explicit RandomByteStream(const Seed& seed) : seed_(seed) {}

    void reseed(const Seed& seed) {
        seed_ = seed;
        block_ = kNoBlock;
    }

    std::uint8_t at(std::uint64_t i);

    std::uint64_t hash_calls() const { return hash_calls_; }

private:
    static constexpr std::uint64_t kNoBlock = ~std::uint64_t{0};
    Seed seed_;
    Digest current_{};
    std::uint64_t block_ = kNoBlock;
    std::uint64_t hash_calls_ = 0;
};

/// eb * 255 >= rb * MaxEB, evaluated on integer Gwei.
constexpr bool eligibility_check(Gwei eb, std::uint8_t rb, const SelectionParams& params) {
    return eb * params.max_random_byte >= std::uint64_t{rb} * params.max_effective_balance;
}

struct TraceEntry {
    std::uint64_t candidate = 0;
    std::uint8_t random_byte = 0;
    bool passed = false;

    bool operator==(const TraceEntry&) const = default;
};

struct SelectionOutcome {
    std::uint64_t proposer_index = 0;
    std::uint64_t iterations = 0;  // candidates examined, including the proposer
    std::optional<std::vector<TraceEntry>> trace;
};

struct SelectionOptions {
    // Unset means default_iteration_bound(registry).
    std::optional<std::uint64_t> max_iterations;
    bool collect_trace = false;
};

/// Thrown when the candidate walk hits its bound without a proposer.
class IterationLimitExceeded : public Error {
public:
    explicit IterationLimitExceeded(std::uint64_t limit);
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
};

inline constexpr std::uint64_t kBoundedIterationDefault = 10'000'000;

/// Unbounded (nullopt) if some validator sits at MaxEB, since the walk then
/// terminates within one full pass; 10^7 otherwise.
std::optional<std::uint64_t> default_iteration_bound(const ValidatorRegistry& registry);

/// compute_proposer_index over all validators of the registry.
SelectionOutcome compute_proposer_index(const ValidatorRegistry& registry, const Seed& seed,
                                        const SelectionOptions& options = {});

/// Same walk using caller-owned caches, already seeded with the slot seed.
SelectionOutcome compute_proposer_index(const ValidatorRegistry& registry,
                                        const ShuffledSequence& order, RandomByteStream& bytes,
                                        const SelectionOptions& options = {});

inline constexpr std::string_view kSlotSeedTag = "propsel/slot-seed/v1";

/// sha256(tag ++ base ++ uint64_le(slot))
Seed derive_slot_seed(const Seed& base, std::uint64_t slot);

}  // namespace propsel
