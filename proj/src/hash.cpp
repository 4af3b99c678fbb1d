// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/hash.hpp"

#include "propsel/params.hpp"

// The one-shot SHA256() goes through provider dispatch on OpenSSL 3 and is
// several times slower for the 33-40 byte messages hashed here.
#define OPENSSL_SUPPRESS_DEPRECATED
#include <openssl/sha.h>

namespace propsel {

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out;
    SHA256_CTX ctx;
    SHA256_Init(&ctx);
    SHA256_Update(&ctx, data.data(), data.size());
    SHA256_Final(out.data(), &ctx);
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Seed Seed::from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.size() != 64)
        throw Error("seed must be 64 hex digits (32 bytes), got " + std::to_string(hex.size()));
    Digest bytes;
    for (std::size_t i = 0; i < 32; ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error("seed contains a non-hex character");
        bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return Seed(bytes);
}

std::uint64_t le_uint64(std::span<const std::uint8_t, 8> bytes) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v |= std::uint64_t{bytes[i]} << (8 * i);
    return v;
}

}  // namespace propsel
