// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iterator>
#include <unordered_map>
#include <vector>

#include "propsel/hash.hpp"
#include "propsel/params.hpp"

namespace propsel {

/// bytes_to_uint64(hash(seed ++ uint8(round))[0:8]) % index_count
std::uint64_t round_pivot(const Seed& seed, std::uint8_t round, std::uint64_t index_count);

/// hash(seed ++ uint8(round) ++ uint32_le(position / 256))
Digest round_source(const Seed& seed, std::uint8_t round, std::uint64_t position);

/// One swap-or-not round. `source_for(position)` must return
/// round_source(seed, round, position) for the same round as `pivot`.
template <typename SourceFn>
std::uint64_t swap_or_not_step(std::uint64_t index, std::uint64_t index_count, std::uint64_t pivot,
                               SourceFn&& source_for) {
    // pivot, index < index_count, so one conditional subtraction is the modulo.
    std::uint64_t flip = pivot + index_count - index;
    if (flip >= index_count) flip -= index_count;
    const std::uint64_t position = index > flip ? index : flip;
    const Digest& source = source_for(position);
    const std::uint8_t byte = source[(position % 256) / 8];
    return ((byte >> (position % 8)) & 1) ? flip : index;
}

/// Uncached single round, for tests and cross-checks.
std::uint64_t swap_or_not_round(std::uint64_t index, std::uint64_t index_count, const Seed& seed,
                                std::uint8_t round);

/// Position of `index` after params.shuffle_rounds swap-or-not rounds.
/// Requires index < index_count.
std::uint64_t compute_shuffled_index(std::uint64_t index, std::uint64_t index_count,
                                     const Seed& seed, const SelectionParams& params);

/// The unbounded candidate order compute_shuffled_index(i % n) for i = 0, 1, ...
///
/// Pivots are computed once per seed and round sources are cached per
/// (round, 256-position chunk), which removes most of the hashing when many
/// steps are taken under one seed. An instance is not safe for concurrent
/// use; give each thread its own and call reseed() between slots.
class ShuffledSequence {
public:
    ShuffledSequence(std::uint64_t index_count, const Seed& seed, const SelectionParams& params);

    void reseed(const Seed& seed);

    std::uint64_t index_count() const { return index_count_; }

    /// compute_shuffled_index(step % index_count, ...)
    std::uint64_t at(std::uint64_t step) const;

    class iterator {
    public:
        using value_type = std::uint64_t;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        std::uint64_t operator*() const { return seq_->at(step_); }
        iterator& operator++() {
            ++step_;
            return *this;
        }
        iterator operator++(int) {
            auto tmp = *this;
            ++step_;
            return tmp;
        }
        std::uint64_t step() const { return step_; }
        bool operator==(const iterator&) const = default;

    private:
        friend class ShuffledSequence;
        iterator(const ShuffledSequence* seq, std::uint64_t step) : seq_(seq), step_(step) {}
        const ShuffledSequence* seq_ = nullptr;
        std::uint64_t step_ = 0;
    };

    iterator begin() const { return iterator(this, 0); }
    std::unreachable_sentinel_t end() const { return {}; }

    /// Number of SHA-256 evaluations performed since construction.
    std::uint64_t hash_calls() const { return hash_calls_; }

private:
    const Digest& source(std::uint32_t round, std::uint64_t position) const;

    std::uint64_t index_count_;
    Seed seed_;
    std::uint32_t rounds_;
    std::uint64_t chunks_;
    std::vector<std::uint64_t> pivots_;
    // Dense cache when rounds * chunks is small, hash map otherwise.
    mutable std::vector<Digest> dense_;
    mutable std::vector<std::uint32_t> stamp_;
    mutable std::unordered_map<std::uint64_t, Digest> sparse_;
    std::uint32_t generation_ = 1;
    mutable std::uint64_t hash_calls_ = 0;
};

static_assert(std::input_iterator<ShuffledSequence::iterator>);

}  // namespace propsel
