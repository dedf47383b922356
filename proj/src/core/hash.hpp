// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/bytes.hpp"

namespace intersnap {

Hash256 sha256(std::span<const uint8_t> data);
std::array<uint8_t, 64> sha512(std::span<const uint8_t> data);

inline Hash256 sha256(const Bytes& data) {
    return sha256(std::span<const uint8_t>(data));
}

std::string hash_to_hex(const Hash256& h);
std::optional<Hash256> hash_from_hex(std::string_view hex);

inline bool is_zero(const Hash256& h) {
    for (uint8_t b : h)
        if (b != 0) return false;
    return true;
}

}  // namespace intersnap
