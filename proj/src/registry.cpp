// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/registry.hpp"

#include <algorithm>
#include <string>

namespace propsel {

ValidatorRegistry::ValidatorRegistry(std::vector<ValidatorRecord> records,
                                     const SelectionParams& params)
    : records_(std::move(records)), params_(params) {
    for (const auto& r : records_) {
        total_ += r.effective_balance;
        max_ = std::max(max_, r.effective_balance);
    }
}

bool ValidatorRegistry::homogeneous() const {
    return std::ranges::all_of(records_, [&](const ValidatorRecord& r) {
        return r.effective_balance == records_.front().effective_balance;
    });
}

std::map<Gwei, std::uint64_t> ValidatorRegistry::balance_histogram() const {
    std::map<Gwei, std::uint64_t> out;
    for (const auto& r : records_) ++out[r.effective_balance];
    return out;
}

ValidatorRegistry build_from_balances(std::span<const Gwei> balances,
                                      const SelectionParams& params) {
    params.validate();
    if (balances.empty()) throw Error("registry must contain at least one validator");
    std::vector<ValidatorRecord> records;
    records.reserve(balances.size());
    for (std::size_t i = 0; i < balances.size(); ++i) {
        validate_balance(balances[i], params);
        records.push_back({i, balances[i]});
    }
    return ValidatorRegistry(std::move(records), params);
}

ValidatorRegistry build_homogeneous(std::uint64_t n, Gwei eb, const SelectionParams& params) {
    if (n == 0) throw Error("registry size must be at least 1");
    validate_balance(eb, params);
    std::vector<Gwei> balances(n, eb);
    return build_from_balances(balances, params);
}

ValidatorRegistry build_from_counts(const FoldCounts& counts, const SelectionParams& params) {
    std::vector<Gwei> balances;
    for (const auto& [fold, count] : counts) {
        if (fold == 0) throw Error("fold factor must be at least 1");
        if (fold_balance(fold) > params.max_effective_balance)
            throw Error("fold " + std::to_string(fold) + " exceeds MaxEB");
        balances.insert(balances.end(), count, fold_balance(fold));
    }
    if (balances.empty()) throw Error("fold counts describe an empty registry");
    return build_from_balances(balances, params);
}

ValidatorRegistry build_registry(const RegistrySpec& spec, const SelectionParams& params) {
    if (const auto* h = std::get_if<HomogeneousSpec>(&spec))
        return build_homogeneous(h->n, h->effective_balance, params);
    return build_from_counts(std::get<FoldCounts>(spec), params);
}

}  // namespace propsel
