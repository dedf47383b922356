// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace intersnap {

using Bytes = std::vector<uint8_t>;
using Hash256 = std::array<uint8_t, 32>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(std::span<const uint8_t> data);
std::optional<Bytes> from_hex(std::string_view hex);

std::string base64_encode(std::span<const uint8_t> data);
std::optional<Bytes> base64_decode(std::string_view text);

/// Canonical field encoder: every field is written as a 4-byte big-endian
/// length followed by the raw bytes, in call order. Used for transaction,
/// endorsement, and block bytes that get hashed or signed, so the encoding
/// must never change.
class FieldWriter {
public:
    FieldWriter& field(std::span<const uint8_t> data);
    FieldWriter& field(std::string_view s);
    FieldWriter& field_u64(uint64_t v);
    FieldWriter& field_u8(uint8_t v);

    Bytes take() { return std::move(buf_); }
    const Bytes& bytes() const { return buf_; }

private:
    Bytes buf_;
};

void append_u32_be(Bytes& out, uint32_t v);
void append_u64_be(Bytes& out, uint64_t v);
uint32_t read_u32_be(std::span<const uint8_t> in);
uint64_t read_u64_be(std::span<const uint8_t> in);

}  // namespace intersnap
