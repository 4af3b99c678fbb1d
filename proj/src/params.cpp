// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/params.hpp"

#include <string>

namespace propsel {

void SelectionParams::validate() const {
    if (max_random_byte != kMaxRandomByte)
        throw Error("max_random_byte must be 255");
    if (balance_increment == 0)
        throw Error("balance_increment must be positive");
    if (max_effective_balance == 0 || max_effective_balance % balance_increment != 0)
        throw Error("max_effective_balance must be a positive multiple of the balance increment");
    if (shuffle_rounds == 0 || shuffle_rounds > 256)
        throw Error("shuffle_rounds must be in [1, 256]");
}

SelectionParams SelectionParams::pre_7251() { return with_max_eb(eth(32)); }

SelectionParams SelectionParams::post_7251() { return with_max_eb(eth(2048)); }

SelectionParams SelectionParams::with_max_eb(Gwei max_eb) {
    SelectionParams p;
    p.max_effective_balance = max_eb;
    p.validate();
    return p;
}

SelectionParams SelectionParams::preset(std::string_view name) {
    if (name == "pre-7251") return pre_7251();
    if (name == "post-7251") return post_7251();
    throw Error("unknown params preset '" + std::string(name) + "'");
}

void validate_balance(Gwei eb, const SelectionParams& params) {
    if (eb == 0)
        throw Error("effective balance must be positive");
    if (eb > params.max_effective_balance)
        throw Error("effective balance " + std::to_string(eb) + " Gwei exceeds MaxEB " +
                    std::to_string(params.max_effective_balance) + " Gwei");
    if (eb % params.balance_increment != 0)
        throw Error("effective balance " + std::to_string(eb) +
                    " Gwei is not a multiple of the balance increment");
}

}  // namespace propsel
