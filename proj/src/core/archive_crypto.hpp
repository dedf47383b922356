// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "core/bytes.hpp"
#include "core/hash.hpp"
#include "core/registry.hpp"
#include "core/rng.hpp"
#include "core/sig.hpp"

namespace intersnap {

constexpr uint32_t kDefaultKdfIterations = 65536;

/// 128-bit archive key derived from a passphrase by chained SHA-512:
/// acc = salt || passphrase; repeat iterations times: acc = SHA-512(acc);
/// key = first 16 bytes of acc.
struct DerivedKey {
    std::array<uint8_t, 16> key{};
    std::array<uint8_t, 8> salt{};
    uint32_t iterations{0};
    Hash256 passphrase_fingerprint{};  // wallet lookup aid, never the passphrase
};

/// nullopt on empty passphrase or zero iterations.
std::optional<DerivedKey> derive_key(std::span<const uint8_t> passphrase,
                                     const std::array<uint8_t, 8>& salt,
                                     uint32_t iterations);

/// AES-128-GCM sealed archive. Wire format (also the on-disk layout):
/// version byte || salt(8) || iterations(4, big-endian) || nonce(12) ||
/// ciphertext || tag(16).
struct EncryptedArchive {
    static constexpr uint8_t kVersion = 1;

    uint8_t version{kVersion};
    std::array<uint8_t, 8> salt{};
    uint32_t iterations{0};
    std::array<uint8_t, 12> nonce{};
    Bytes ciphertext;
    std::array<uint8_t, 16> tag{};

    Bytes serialize() const;
    static std::optional<EncryptedArchive> deserialize(std::span<const uint8_t> raw);
};

EncryptedArchive encrypt_archive(std::span<const uint8_t> plaintext, const DerivedKey& key,
                                 DetRng& nonce_source);
/// nullopt on authentication failure; a tampered archive and a wrong key are
/// indistinguishable.
std::optional<Bytes> decrypt_archive(const EncryptedArchive& archive,
                                     const std::array<uint8_t, 16>& key);
inline std::optional<Bytes> decrypt_archive(const EncryptedArchive& archive,
                                            const DerivedKey& key) {
    return decrypt_archive(archive, key.key);
}

/// Off-ledger key backup, one per network. Ledger faults never touch it.
class KeyWallet {
public:
    void put(const std::string& archive_id, const DerivedKey& key);
    const DerivedKey* get(const std::string& archive_id) const;
    size_t size() const { return entries_.size(); }
    const std::map<std::string, DerivedKey>& entries() const { return entries_; }

private:
    std::map<std::string, DerivedKey> entries_;
};

/// What gets handed to a foreign network: the archive's content id, its
/// decryption key, and free-form metadata, sealed to the recipient.
struct EnvelopePayload {
    std::string cid;
    std::array<uint8_t, 16> key{};
    std::string metadata;
};

/// Hybrid public-key wrapping: ephemeral X25519 against the recipient's
/// network key, SHA-512 KDF over the shared secret and both public keys,
/// then the same AES-128-GCM as the archives.
struct Envelope {
    std::string recipient_network;
    std::array<uint8_t, 32> ephemeral_public{};
    std::array<uint8_t, 12> nonce{};
    Bytes ciphertext;
    std::array<uint8_t, 16> tag{};

    Bytes serialize() const;
    static std::optional<Envelope> deserialize(std::span<const uint8_t> raw);
};

/// nullopt when the destination network has no registered envelope key.
std::optional<Envelope> wrap_for_destination(const EnvelopePayload& payload,
                                             const std::string& dest_network,
                                             const IdentityRegistry& registry, DetRng& rng);
/// nullopt unless opened with the designated recipient's private key.
std::optional<EnvelopePayload> unwrap_envelope(const Envelope& env, const KxKeypair& keys);

}  // namespace intersnap
