// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/selection.hpp"

#include <algorithm>
#include <string>

namespace propsel {

namespace {

Digest random_block(const Seed& seed, std::uint64_t block) {
    std::array<std::uint8_t, 40> buf;
    std::ranges::copy(seed.bytes(), buf.begin());
    std::ranges::copy(le_bytes<8>(block), buf.begin() + 32);
    return sha256(buf);
}

}  // namespace

std::uint8_t random_byte(const Seed& seed, std::uint64_t i) {
    return random_block(seed, i / 32)[i % 32];
}

std::uint8_t RandomByteStream::at(std::uint64_t i) {
    if (i / 32 != block_) {
        block_ = i / 32;
        current_ = random_block(seed_, block_);
        ++hash_calls_;
    }
    return current_[i % 32];
}

IterationLimitExceeded::IterationLimitExceeded(std::uint64_t limit)
    : Error("no proposer found within " + std::to_string(limit) + " iterations"), limit_(limit) {}

std::optional<std::uint64_t> default_iteration_bound(const ValidatorRegistry& registry) {
    if (registry.max_balance() == registry.params().max_effective_balance) return std::nullopt;
    return kBoundedIterationDefault;
}

SelectionOutcome compute_proposer_index(const ValidatorRegistry& registry,
                                        const ShuffledSequence& order, RandomByteStream& bytes,
                                        const SelectionOptions& options) {
    if (order.index_count() != registry.size())
        throw Error("shuffled sequence does not match the registry size");
    const auto bound = options.max_iterations ? options.max_iterations
                                              : default_iteration_bound(registry);
    const auto& params = registry.params();

    SelectionOutcome out;
    if (options.collect_trace) out.trace.emplace();
    for (std::uint64_t i = 0;; ++i) {
        if (bound && i >= *bound) throw IterationLimitExceeded(*bound);
        const std::uint64_t candidate = order.at(i);
        const std::uint8_t rb = bytes.at(i);
        const bool passed = eligibility_check(registry.balance(candidate), rb, params);
        if (out.trace) out.trace->push_back({candidate, rb, passed});
        if (passed) {
            out.proposer_index = candidate;
            out.iterations = i + 1;
            return out;
        }
    }
}

SelectionOutcome compute_proposer_index(const ValidatorRegistry& registry, const Seed& seed,
                                        const SelectionOptions& options) {
    ShuffledSequence order(registry.size(), seed, registry.params());
    RandomByteStream bytes(seed);
    return compute_proposer_index(registry, order, bytes, options);
}

Seed derive_slot_seed(const Seed& base, std::uint64_t slot) {
    std::vector<std::uint8_t> buf(kSlotSeedTag.begin(), kSlotSeedTag.end());
    buf.insert(buf.end(), base.bytes().begin(), base.bytes().end());
    const auto le = le_bytes<8>(slot);
    buf.insert(buf.end(), le.begin(), le.end());
    return Seed(sha256(buf));
}

}  // namespace propsel
