// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace propsel {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256, the consensus `hash` function.
Digest sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// 32 opaque bytes feeding the shuffle and the random-byte stream.
class Seed {
public:
    Seed() = default;
    explicit Seed(const Digest& bytes) : bytes_(bytes) {}

    /// Lowercase or uppercase hex, exactly 64 digits, optional "0x" prefix.
    static Seed from_hex(std::string_view hex);

    const Digest& bytes() const { return bytes_; }
    std::string hex() const { return to_hex(bytes_); }

    bool operator==(const Seed&) const = default;

private:
    Digest bytes_{};
};

/// Little-endian fixed-width serialization (`uint_to_bytes`).
template <std::size_t N>
std::array<std::uint8_t, N> le_bytes(std::uint64_t value) {
    std::array<std::uint8_t, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<std::uint8_t>(value >> (8 * i));
    return out;
}

/// Inverse of le_bytes over the first 8 bytes (`bytes_to_uint64`).
std::uint64_t le_uint64(std::span<const std::uint8_t, 8> bytes);

}  // namespace propsel
