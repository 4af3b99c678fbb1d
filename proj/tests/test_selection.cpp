// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "propsel/selection.hpp"

using namespace propsel;

namespace {

const SelectionParams kPost = SelectionParams::post_7251();
const SelectionParams kPre = SelectionParams::pre_7251();
const Seed kSeedA =
    Seed::from_hex("997533abc4be69ed0e0045267779293c63a996503ac1670cc0ab3220f5bd47bf");
const Seed kSeedB =
    Seed::from_hex("37317ba7ab04e0bc18cc59a42af6f59d4c12bc8170ab67587c473f6a65dd17fd");

Seed numbered_seed(std::uint64_t k) {
    const auto b = le_bytes<8>(k);
    return Seed(sha256(b));
}

}  // namespace

TEST_CASE("random_byte") {
    // Frozen from tests/oracle/consensus_oracle.py.
    const std::vector<std::uint64_t> at{0, 1, 2, 3, 31, 32, 33};
    const std::vector<int> expected{169, 64, 186, 191, 137, 223, 236};
    for (std::size_t k = 0; k < at.size(); ++k) CHECK(random_byte(kSeedA, at[k]) == expected[k]);
    CHECK(random_byte(kSeedB, 77) == random_byte(kSeedB, 77));
}

TEST_CASE("random byte stream hashes once per 32 steps") {
    RandomByteStream s(kSeedA);
    for (std::uint64_t i = 0; i < 32; ++i) CHECK(s.at(i) == random_byte(kSeedA, i));
    CHECK(s.hash_calls() == 1);
    CHECK(s.at(32) == random_byte(kSeedA, 32));
    CHECK(s.hash_calls() == 2);
    for (std::uint64_t i = 33; i < 64; ++i) (void)s.at(i);
    CHECK(s.hash_calls() == 2);
    s.reseed(kSeedB);
    CHECK(s.at(5) == random_byte(kSeedB, 5));
    CHECK(s.hash_calls() == 3);
}

TEST_CASE("eligibility_check") {
    CHECK(eligibility_check(eth(2048), 255, kPost));
    CHECK(eligibility_check(eth(32), 0, kPost));
    CHECK(eligibility_check(eth(32), 3, kPost));   // 3 * 2048 = 6144 <= 8160
    CHECK_FALSE(eligibility_check(eth(32), 4, kPost));  // 4 * 2048 = 8192 > 8160
    for (int rb = 0; rb < 256; ++rb) CHECK(eligibility_check(eth(32), static_cast<std::uint8_t>(rb), kPre));
}

TEST_CASE("eligibility pass counts over all 256 bytes reproduce the balance table") {
    const std::vector<std::uint64_t> balances{32, 64, 128, 256, 512, 1024, 2048};
    const std::vector<double> expected{0.015625, 0.03125, 0.0625, 0.125, 0.25, 0.5, 1.0};
    for (std::size_t k = 0; k < balances.size(); ++k) {
        int pass = 0;
        for (int rb = 0; rb < 256; ++rb)
            pass += eligibility_check(eth(balances[k]), static_cast<std::uint8_t>(rb), kPost);
        CHECK(pass / 256.0 == expected[k]);
    }
}

TEST_CASE("compute_proposer_index matches the reference transcription") {
    const auto registry = build_from_counts({{1, 5}, {64, 1}});
    SelectionOptions traced;
    traced.collect_trace = true;

    const auto a = compute_proposer_index(registry, kSeedA, traced);
    CHECK(a.proposer_index == 5);
    CHECK(a.iterations == 3);
    REQUIRE(a.trace);
    CHECK(*a.trace == std::vector<TraceEntry>{{2, 169, false}, {0, 64, false}, {5, 186, true}});

    const auto b = compute_proposer_index(registry, kSeedB, traced);
    CHECK(b.proposer_index == 5);
    CHECK(b.iterations == 5);
    CHECK(*b.trace == std::vector<TraceEntry>{
                          {3, 112, false}, {0, 216, false}, {2, 228, false}, {4, 78, false}, {5, 167, true}});

    const auto h = compute_proposer_index(build_homogeneous(50, eth(32)), kSeedA);
    CHECK(h.proposer_index == 1);
    CHECK(h.iterations == 7);
    CHECK_FALSE(h.trace);
}

TEST_CASE("MaxEB validators pass at the first candidate") {
    const auto reg = build_homogeneous(1000, eth(2048));
    for (std::uint64_t k = 0; k < 20; ++k) {
        const Seed s = numbered_seed(k);
        const auto out = compute_proposer_index(reg, s);
        CHECK(out.iterations == 1);
        CHECK(out.proposer_index == compute_shuffled_index(0, 1000, s, kPost));
    }
    const auto single = compute_proposer_index(build_homogeneous(1, eth(2048)), kSeedA);
    CHECK(single.proposer_index == 0);
    CHECK(single.iterations == 1);

    // Pre-7251 every 32 ETH validator is at MaxEB.
    const auto pre = compute_proposer_index(build_homogeneous(100, eth(32), kPre), kSeedB);
    CHECK(pre.iterations == 1);
}

TEST_CASE("trace invariants") {
    const auto reg = build_from_counts({{1, 300}, {2, 50}, {10, 5}});
    SelectionOptions traced;
    traced.collect_trace = true;
    for (std::uint64_t k = 0; k < 30; ++k) {
        const Seed s = numbered_seed(100 + k);
        const auto out = compute_proposer_index(reg, s, traced);
        REQUIRE(out.trace->size() == out.iterations);
        for (std::size_t i = 0; i + 1 < out.trace->size(); ++i) CHECK_FALSE((*out.trace)[i].passed);
        CHECK(out.trace->back().passed);
        CHECK(out.trace->back().candidate == out.proposer_index);
        for (std::size_t i = 0; i < out.trace->size(); ++i) {
            CHECK((*out.trace)[i].random_byte == random_byte(s, i));
            CHECK((*out.trace)[i].candidate == compute_shuffled_index(i % reg.size(), reg.size(), s, kPost));
        }
        const auto again = compute_proposer_index(reg, s);
        CHECK(again.proposer_index == out.proposer_index);
        CHECK(again.iterations == out.iterations);
    }
}

TEST_CASE("iteration bound") {
    const auto reg = build_homogeneous(50, eth(32));
    CHECK(default_iteration_bound(reg) == kBoundedIterationDefault);
    CHECK_FALSE(default_iteration_bound(build_from_counts({{1, 5}, {64, 1}})).has_value());

    // seed A needs 7 candidates on this registry
    SelectionOptions tight;
    tight.max_iterations = 6;
    CHECK_THROWS_AS(compute_proposer_index(reg, kSeedA, tight), IterationLimitExceeded);
    tight.max_iterations = 7;
    CHECK(compute_proposer_index(reg, kSeedA, tight).iterations == 7);
}

TEST_CASE("mean iterations for 32 ETH candidates under MaxEB 2048 is near 64") {
    const auto reg = build_homogeneous(1000, eth(32));
    ShuffledSequence order(reg.size(), kSeedA, kPost);
    RandomByteStream bytes(kSeedA);
    const int seeds = 3000;
    double sum = 0.0;
    std::vector<std::uint64_t> failures;
    for (int k = 0; k < seeds; ++k) {
        const Seed s = derive_slot_seed(kSeedB, k);
        order.reseed(s);
        bytes.reseed(s);
        const auto out = compute_proposer_index(reg, order, bytes);
        sum += static_cast<double>(out.iterations);
        failures.push_back(out.iterations - 1);
    }
    // geometric with p = 1/64: mean 64, sd ~63.5; 3000 draws -> se ~1.16
    CHECK(sum / seeds == doctest::Approx(64.0).epsilon(0.08));
    std::nth_element(failures.begin(), failures.begin() + seeds / 2, failures.end());
    const auto median = failures[seeds / 2];
    CHECK(median >= 38);
    CHECK(median <= 50);
}

TEST_CASE("slot seed derivation") {
    std::vector<std::uint8_t> buf(kSlotSeedTag.begin(), kSlotSeedTag.end());
    buf.insert(buf.end(), kSeedA.bytes().begin(), kSeedA.bytes().end());
    for (int i = 0; i < 8; ++i) buf.push_back(i == 0 ? 5 : 0);
    CHECK(derive_slot_seed(kSeedA, 5) == Seed(sha256(buf)));
    CHECK(derive_slot_seed(kSeedA, 5) != derive_slot_seed(kSeedA, 6));
    CHECK(derive_slot_seed(kSeedA, 5) != derive_slot_seed(kSeedB, 5));
}

TEST_CASE("cached and uncached walks agree") {
    const auto reg = build_from_counts({{1, 700}, {64, 2}});
    ShuffledSequence order(reg.size(), kSeedA, kPost);
    RandomByteStream bytes(kSeedA);
    for (std::uint64_t k = 0; k < 10; ++k) {
        const Seed s = numbered_seed(k);
        order.reseed(s);
        bytes.reseed(s);
        const auto cached = compute_proposer_index(reg, order, bytes);
        const auto plain = compute_proposer_index(reg, s);
        CHECK(cached.proposer_index == plain.proposer_index);
        CHECK(cached.iterations == plain.iterations);
    }
    ShuffledSequence wrong(10, kSeedA, kPost);
    CHECK_THROWS_AS(compute_proposer_index(reg, wrong, bytes), Error);
}
