// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/shuffle.hpp"

#include <algorithm>
#include <string>

namespace propsel {

namespace {

constexpr std::uint64_t kDenseCacheLimit = 1 << 16;

void check_range(std::uint64_t index, std::uint64_t index_count) {
    if (index_count == 0) throw Error("index_count must be at least 1");
    if (index >= index_count)
        throw Error("index " + std::to_string(index) + " out of range for index_count " +
                    std::to_string(index_count));
}

}  // namespace

std::uint64_t round_pivot(const Seed& seed, std::uint8_t round, std::uint64_t index_count) {
    std::array<std::uint8_t, 33> buf;
    std::ranges::copy(seed.bytes(), buf.begin());
    buf[32] = round;
    const Digest h = sha256(buf);
    return le_uint64(std::span<const std::uint8_t, 8>(h.data(), 8)) % index_count;
}

Digest round_source(const Seed& seed, std::uint8_t round, std::uint64_t position) {
    std::array<std::uint8_t, 37> buf;
    std::ranges::copy(seed.bytes(), buf.begin());
    buf[32] = round;
    const auto chunk = le_bytes<4>(position / 256);
    std::ranges::copy(chunk, buf.begin() + 33);
    return sha256(buf);
}

std::uint64_t swap_or_not_round(std::uint64_t index, std::uint64_t index_count, const Seed& seed,
                                std::uint8_t round) {
    check_range(index, index_count);
    Digest source;
    return swap_or_not_step(index, index_count, round_pivot(seed, round, index_count),
                            [&](std::uint64_t position) -> const Digest& {
                                source = round_source(seed, round, position);
                                return source;
                            });
}

std::uint64_t compute_shuffled_index(std::uint64_t index, std::uint64_t index_count,
                                     const Seed& seed, const SelectionParams& params) {
    check_range(index, index_count);
    for (std::uint32_t r = 0; r < params.shuffle_rounds; ++r)
        index = swap_or_not_round(index, index_count, seed, static_cast<std::uint8_t>(r));
    return index;
}

ShuffledSequence::ShuffledSequence(std::uint64_t index_count, const Seed& seed,
                                   const SelectionParams& params)
    : index_count_(index_count),
      rounds_(params.shuffle_rounds),
      chunks_((index_count + 255) / 256) {
    if (index_count == 0) throw Error("index_count must be at least 1");
    params.validate();
    if (rounds_ * chunks_ <= kDenseCacheLimit) {
        dense_.resize(rounds_ * chunks_);
        stamp_.assign(rounds_ * chunks_, 0);
    }
    reseed(seed);
}

void ShuffledSequence::reseed(const Seed& seed) {
    seed_ = seed;
    ++generation_;
    sparse_.clear();
    pivots_.resize(rounds_);
    for (std::uint32_t r = 0; r < rounds_; ++r)
        pivots_[r] = round_pivot(seed_, static_cast<std::uint8_t>(r), index_count_);
    hash_calls_ += rounds_;
}

const Digest& ShuffledSequence::source(std::uint32_t round, std::uint64_t position) const {
    const std::uint64_t key = std::uint64_t{round} * chunks_ + position / 256;
    if (!dense_.empty()) {
        if (stamp_[key] != generation_) {
            dense_[key] = round_source(seed_, static_cast<std::uint8_t>(round), position);
            stamp_[key] = generation_;
            ++hash_calls_;
        }
        return dense_[key];
    }
    auto [it, inserted] = sparse_.try_emplace(key);
    if (inserted) {
        it->second = round_source(seed_, static_cast<std::uint8_t>(round), position);
        ++hash_calls_;
    }
    return it->second;
}

std::uint64_t ShuffledSequence::at(std::uint64_t step) const {
    std::uint64_t index = step % index_count_;
    for (std::uint32_t r = 0; r < rounds_; ++r) {
        index = swap_or_not_step(index, index_count_, pivots_[r],
                                 [&](std::uint64_t position) -> const Digest& {
                                     return source(r, position);
                                 });
    }
    return index;
}

}  // namespace propsel
