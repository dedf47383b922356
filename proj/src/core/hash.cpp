// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace intersnap {

namespace {
template <size_t N>
std::array<uint8_t, N> digest(const EVP_MD* md, std::span<const uint8_t> data) {
    std::array<uint8_t, N> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 ||
        len != N) {
        throw std::runtime_error("digest computation failed");
    }
    return out;
}
}  // namespace

Hash256 sha256(std::span<const uint8_t> data) {
    return digest<32>(EVP_sha256(), data);
}

std::array<uint8_t, 64> sha512(std::span<const uint8_t> data) {
    return digest<64>(EVP_sha512(), data);
}

std::string hash_to_hex(const Hash256& h) {
    return to_hex(h);
}

std::optional<Hash256> hash_from_hex(std::string_view hex) {
    auto raw = from_hex(hex);
    if (!raw || raw->size() != 32) return std::nullopt;
    Hash256 out;
    std::copy(raw->begin(), raw->end(), out.begin());
    return out;
}

}  // namespace intersnap
