// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "propsel/registry.hpp"

using namespace propsel;

namespace {
void check_invariants(const ValidatorRegistry& r) {
    Gwei total = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        REQUIRE(r[i].index == i);
        REQUIRE(r[i].effective_balance > 0);
        REQUIRE(r[i].effective_balance <= r.params().max_effective_balance);
        REQUIRE(r[i].effective_balance % r.params().balance_increment == 0);
        total += r[i].effective_balance;
    }
    CHECK(total == r.total_effective_balance());
}
}  // namespace

TEST_CASE("build_homogeneous") {
    const auto big = build_homogeneous(716'800, eth(32));
    CHECK(big.size() == 716'800);
    CHECK(big.total_effective_balance() == eth(22'937'600));
    CHECK(big.homogeneous());

    const auto one = build_homogeneous(1, eth(32));
    CHECK(one.size() == 1);
    CHECK(one[0] == ValidatorRecord{0, eth(32)});

    const auto three = build_homogeneous(3, eth(2048));
    CHECK(three.total_effective_balance() == eth(6144));
    check_invariants(three);
}

TEST_CASE("build_homogeneous rejects invalid input") {
    CHECK_THROWS_AS(build_homogeneous(0, eth(32)), Error);
    CHECK_THROWS_AS(build_homogeneous(5, 0), Error);
    CHECK_THROWS_AS(build_homogeneous(5, eth(2049)), Error);
    CHECK_THROWS_AS(build_homogeneous(5, eth(32) + 1), Error);
    CHECK_THROWS_AS(build_homogeneous(5, eth(64), SelectionParams::pre_7251()), Error);
}

TEST_CASE("build_from_counts") {
    const FoldCounts mixture{{1, 206'080}, {2, 92'288}, {5, 21'504},
                           {10, 6'451},  {30, 2'031}, {64, 1'456}};
    const auto r = build_from_counts(mixture);
    CHECK(r.size() == 329'810);
    check_invariants(r);
    // ascending fold order
    CHECK(r.balance(0) == eth(32));
    CHECK(r.balance(206'079) == eth(32));
    CHECK(r.balance(206'080) == eth(64));
    CHECK(r.balance(r.size() - 1) == eth(2048));
    CHECK(r.balance_histogram().at(eth(320)) == 6'451);

    CHECK(build_from_counts({{64, 11'200}}).size() == 11'200);
    CHECK_THROWS_AS(build_from_counts({{1, 0}}), Error);
    CHECK_THROWS_AS(build_from_counts({}), Error);
    CHECK_THROWS_AS(build_from_counts({{65, 1}}), Error);
    CHECK_THROWS_AS(build_from_counts({{0, 1}}), Error);
    CHECK_THROWS_AS(build_from_counts({{2, 1}}, SelectionParams::pre_7251()), Error);
}

TEST_CASE("property: random fold counts give valid registries with exact totals") {
    std::mt19937_64 rng(7251);
    for (int trial = 0; trial < 200; ++trial) {
        FoldCounts counts;
        const int kinds = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < kinds; ++k) counts[1 + rng() % 64] += 1 + rng() % 300;
        const auto r = build_from_counts(counts);
        check_invariants(r);
        Gwei expected = 0;
        std::uint64_t n = 0;
        for (const auto& [fold, c] : counts) {
            expected += c * fold_balance(fold);
            n += c;
        }
        CHECK(r.size() == n);
        CHECK(r.total_effective_balance() == expected);
    }
}

TEST_CASE("build_registry dispatches on spec shape") {
    CHECK(build_registry(HomogeneousSpec{4, eth(64)}).total_effective_balance() == eth(256));
    CHECK(build_registry(FoldCounts{{1, 2}, {64, 1}}).size() == 3);
}
