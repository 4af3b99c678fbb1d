// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "propsel/shuffle.hpp"

using namespace propsel;

namespace {

const SelectionParams kParams = SelectionParams::post_7251();

// Frozen from tests/oracle/consensus_oracle.py, a direct transcription of the
// phase0 pseudocode over hashlib.
const Seed kZero{};
const Seed kSeedA =
    Seed::from_hex("997533abc4be69ed0e0045267779293c63a996503ac1670cc0ab3220f5bd47bf");
const Seed kSeedB =
    Seed::from_hex("37317ba7ab04e0bc18cc59a42af6f59d4c12bc8170ab67587c473f6a65dd17fd");

std::vector<std::uint64_t> mapping(std::uint64_t n, const Seed& seed) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(compute_shuffled_index(i, n, seed, kParams));
    return out;
}

bool is_permutation_of_range(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    for (std::uint64_t i = 0; i < v.size(); ++i)
        if (v[i] != i) return false;
    return true;
}

}  // namespace

TEST_CASE("compute_shuffled_index matches the reference transcription") {
    CHECK(mapping(10, kZero) == std::vector<std::uint64_t>{9, 7, 4, 1, 8, 0, 5, 6, 3, 2});
    CHECK(mapping(10, kSeedA) == std::vector<std::uint64_t>{8, 5, 3, 2, 9, 0, 1, 7, 4, 6});
    CHECK(mapping(100, kZero) ==
          std::vector<std::uint64_t>{
              79, 25, 97, 2,  29, 3,  4,  80, 18, 63, 43, 90, 71, 31, 5,  58, 56, 55, 0,  93,
              53, 99, 42, 62, 22, 1,  66, 47, 89, 74, 20, 15, 17, 9,  32, 26, 28, 85, 72, 16,
              41, 64, 34, 98, 70, 57, 39, 50, 94, 54, 78, 11, 65, 8,  68, 96, 24, 61, 13, 82,
              38, 87, 88, 95, 67, 36, 83, 40, 46, 60, 51, 81, 19, 21, 59, 30, 77, 37, 91, 6,
              14, 92, 7,  45, 49, 35, 33, 84, 10, 69, 86, 27, 76, 52, 23, 12, 48, 44, 73, 75});
    CHECK(mapping(100, kSeedA) ==
          std::vector<std::uint64_t>{
              43, 64, 25, 93, 61, 57, 67, 99, 10, 0,  2,  48, 91, 95, 7,  39, 37, 92, 4,  24,
              27, 51, 62, 55, 52, 89, 29, 32, 58, 41, 1,  97, 46, 30, 53, 63, 54, 87, 44, 12,
              83, 68, 21, 71, 49, 69, 73, 45, 11, 16, 72, 65, 75, 84, 8,  42, 17, 13, 85, 23,
              98, 6,  86, 31, 18, 78, 76, 90, 34, 14, 56, 79, 9,  36, 60, 82, 38, 19, 3,  74,
              96, 94, 40, 20, 15, 59, 88, 33, 22, 26, 5,  70, 50, 77, 81, 80, 28, 47, 35, 66});
    // Positions spanning several 256-wide source chunks.
    const std::vector<std::uint64_t> at{0, 1, 255, 256, 511, 999};
    const std::vector<std::uint64_t> expected{488, 914, 922, 847, 719, 499};
    for (std::size_t i = 0; i < at.size(); ++i)
        CHECK(compute_shuffled_index(at[i], 1000, kSeedA, kParams) == expected[i]);
}

TEST_CASE("single position and argument checks") {
    CHECK(compute_shuffled_index(0, 1, kSeedA, kParams) == 0);
    CHECK(compute_shuffled_index(0, 1, kZero, kParams) == 0);
    CHECK_THROWS_AS(compute_shuffled_index(5, 5, kSeedA, kParams), Error);
    CHECK_THROWS_AS(compute_shuffled_index(0, 0, kSeedA, kParams), Error);
    CHECK_THROWS_AS(ShuffledSequence(0, kSeedA, kParams), Error);
}

TEST_CASE("round primitives") {
    // pivot = first 8 digest bytes, little-endian, mod n
    std::array<std::uint8_t, 33> buf{};
    std::copy(kSeedA.bytes().begin(), kSeedA.bytes().end(), buf.begin());
    buf[32] = 7;
    const Digest h = sha256(buf);
    std::uint64_t le = 0;
    for (int i = 7; i >= 0; --i) le = le << 8 | h[i];
    CHECK(round_pivot(kSeedA, 7, 1000) == le % 1000);

    // source hashes the chunk number as 4 little-endian bytes
    std::array<std::uint8_t, 37> sbuf{};
    std::copy(kSeedA.bytes().begin(), kSeedA.bytes().end(), sbuf.begin());
    sbuf[32] = 3;
    sbuf[33] = 2;  // position 600 -> chunk 2
    CHECK(round_source(kSeedA, 3, 600) == sha256(sbuf));
    CHECK(round_source(kSeedA, 3, 512) == round_source(kSeedA, 3, 767));

    // Composing the exposed per-round step gives the full shuffle.
    for (std::uint64_t i : {0, 17, 99}) {
        std::uint64_t x = i;
        for (std::uint32_t r = 0; r < kParams.shuffle_rounds; ++r)
            x = swap_or_not_round(x, 100, kSeedA, static_cast<std::uint8_t>(r));
        CHECK(x == compute_shuffled_index(i, 100, kSeedA, kParams));
    }

    // Each round is an involution: swap-or-not pairs i with pivot - i.
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto once = swap_or_not_round(i, 50, kSeedB, 11);
        CHECK(swap_or_not_round(once, 50, kSeedB, 11) == i);
    }
}

TEST_CASE("different seeds give different permutations") {
    CHECK(mapping(100, kSeedA) != mapping(100, kSeedB));
}

TEST_CASE("determinism") {
    for (std::uint64_t i = 0; i < 20; ++i)
        CHECK(compute_shuffled_index(i, 20, kSeedB, kParams) ==
              compute_shuffled_index(i, 20, kSeedB, kParams));
}

TEST_CASE("shuffled_sequence") {
    SUBCASE("single position repeats") {
        ShuffledSequence seq(1, kSeedA, kParams);
        auto it = seq.begin();
        for (int i = 0; i < 5; ++i, ++it) CHECK(*it == 0);
    }
    SUBCASE("agrees with the uncached function and is periodic") {
        ShuffledSequence seq(300, kSeedB, kParams);
        for (std::uint64_t i = 0; i < 300; i += 7) {
            CHECK(seq.at(i) == compute_shuffled_index(i, 300, kSeedB, kParams));
            CHECK(seq.at(i) == seq.at(i + 300));
            CHECK(seq.at(i) == seq.at(i + 3 * 300));
        }
    }
    SUBCASE("first index_count steps visit every position once") {
        for (std::uint64_t n : {1, 2, 3, 7, 64, 255, 256, 257, 999, 1000}) {
            ShuffledSequence seq(n, kSeedA, kParams);
            std::vector<std::uint64_t> seen;
            for (auto it = seq.begin(); it.step() < n; ++it) seen.push_back(*it);
            CHECK(is_permutation_of_range(seen));
        }
    }
    SUBCASE("reseed matches a fresh sequence") {
        ShuffledSequence seq(500, kSeedA, kParams);
        (void)seq.at(3);
        seq.reseed(kSeedB);
        ShuffledSequence fresh(500, kSeedB, kParams);
        for (std::uint64_t i = 0; i < 500; i += 13) CHECK(seq.at(i) == fresh.at(i));
    }
    SUBCASE("large sets fall back to the sparse cache") {
        ShuffledSequence seq(716'800, kSeedA, kParams);
        for (std::uint64_t i : {0ULL, 1ULL, 716'799ULL})
            CHECK(seq.at(i) == compute_shuffled_index(i, 716'800, kSeedA, kParams));
    }
    SUBCASE("source caching saves hashes") {
        ShuffledSequence seq(1000, kSeedA, kParams);
        for (std::uint64_t i = 0; i < 64; ++i) (void)seq.at(i);
        // Uncached: 64 candidates x 90 rounds x 2 hashes.
        CHECK(seq.hash_calls() <= 90 + 90 * 4);
    }
}

TEST_CASE("property: bijectivity for n <= 2048 and random seeds") {
    std::mt19937_64 rng(2048);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t n = 1 + rng() % 2048;
        Digest d;
        for (auto& b : d) b = static_cast<std::uint8_t>(rng());
        ShuffledSequence seq(n, Seed(d), kParams);
        std::vector<std::uint64_t> image;
        for (std::uint64_t i = 0; i < n; ++i) image.push_back(seq.at(i));
        CHECK_MESSAGE(is_permutation_of_range(image), "n=" << n);
    }
}

TEST_CASE("shuffle round count is configurable") {
    SelectionParams ten = kParams;
    ten.shuffle_rounds = 10;
    std::vector<std::uint64_t> m;
    for (std::uint64_t i = 0; i < 100; ++i) m.push_back(compute_shuffled_index(i, 100, kSeedA, ten));
    CHECK(is_permutation_of_range(m));
    CHECK(m != mapping(100, kSeedA));
}
