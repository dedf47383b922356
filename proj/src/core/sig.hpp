// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/bytes.hpp"

namespace intersnap {

/// Ed25519 signing keypair. Key generation is deterministic in the 32-byte
/// seed, and Ed25519 signatures themselves are deterministic, so identically
/// seeded runs produce identical ledgers.
struct SigningKey {
    std::array<uint8_t, 32> seed{};
    std::array<uint8_t, 32> public_key{};

    static SigningKey from_seed(const std::array<uint8_t, 32>& seed);
    Bytes sign(std::span<const uint8_t> message) const;
};

bool verify_signature(const std::array<uint8_t, 32>& public_key,
                      std::span<const uint8_t> message,
                      std::span<const uint8_t> signature);

/// X25519 keypair used for envelope wrapping of archive handles.
struct KxKeypair {
    std::array<uint8_t, 32> private_key{};
    std::array<uint8_t, 32> public_key{};

    static KxKeypair from_seed(const std::array<uint8_t, 32>& seed);
};

/// Raw X25519 shared secret; empty optional when the peer key is invalid.
std::optional<std::array<uint8_t, 32>> x25519_shared(
    const std::array<uint8_t, 32>& private_key,
    const std::array<uint8_t, 32>& peer_public);

}  // namespace intersnap
