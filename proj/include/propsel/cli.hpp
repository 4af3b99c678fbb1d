// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace propsel::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Parses `args` (without the program name), runs the chosen subcommand and
/// writes results to `out`, diagnostics to `err`.
///
///   analyze rounds (--p P | --eb GWEI) [--kmax K] [--format csv|json]
///   analyze eligibility --eb GWEI [--format text|json]
///   scenario run FILE [--evidence NAME|FOLD]
///   simulate --registry FILE|JSON --slots N --seed HEX [--threads K] [--out FILE] [--csv]
///   vectors shuffle --count N --seed HEX
///   vectors proposer --registry FILE|JSON --seed HEX [--trace]
///
/// Global flags: --preset pre-7251|post-7251, --max-eb GWEI, --rounds N,
/// --paper-rounding, --out-dir DIR (default $PROPSEL_OUT_DIR).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace propsel::cli
