// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/archive_crypto.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace intersnap {

namespace {

struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

struct GcmSealed {
    Bytes ciphertext;
    std::array<uint8_t, 16> tag{};
};

GcmSealed aes128gcm_seal(const std::array<uint8_t, 16>& key,
                         const std::array<uint8_t, 12>& nonce,
                         std::span<const uint8_t> plaintext) {
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx ||
        EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, key.data(), nonce.data()) != 1)
        throw std::runtime_error("gcm init failed");
    GcmSealed out;
    out.ciphertext.resize(plaintext.size());
    int len = 0;
    if (!plaintext.empty() &&
        EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        throw std::runtime_error("gcm encrypt failed");
    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + len, &fin) != 1)
        throw std::runtime_error("gcm finalize failed");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, out.tag.data()) != 1)
        throw std::runtime_error("gcm tag retrieval failed");
    return out;
}

std::optional<Bytes> aes128gcm_open(const std::array<uint8_t, 16>& key,
                                    const std::array<uint8_t, 12>& nonce,
                                    std::span<const uint8_t> ciphertext,
                                    const std::array<uint8_t, 16>& tag) {
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx ||
        EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, key.data(), nonce.data()) != 1)
        return std::nullopt;
    Bytes plain(ciphertext.size());
    int len = 0;
    if (!ciphertext.empty() &&
        EVP_DecryptUpdate(ctx.get(), plain.data(), &len, ciphertext.data(),
                          static_cast<int>(ciphertext.size())) != 1)
        return std::nullopt;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16,
                            const_cast<uint8_t*>(tag.data())) != 1)
        return std::nullopt;
    int fin = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &fin) != 1) return std::nullopt;
    return plain;
}

}  // namespace

std::optional<DerivedKey> derive_key(std::span<const uint8_t> passphrase,
                                     const std::array<uint8_t, 8>& salt,
                                     uint32_t iterations) {
    if (passphrase.empty() || iterations == 0) return std::nullopt;
    Bytes acc;
    acc.reserve(salt.size() + passphrase.size());
    acc.insert(acc.end(), salt.begin(), salt.end());
    acc.insert(acc.end(), passphrase.begin(), passphrase.end());
    std::array<uint8_t, 64> d{};
    for (uint32_t i = 0; i < iterations; ++i) {
        d = sha512(acc);
        acc.assign(d.begin(), d.end());
    }
    DerivedKey out;
    std::memcpy(out.key.data(), d.data(), out.key.size());
    out.salt = salt;
    out.iterations = iterations;
    out.passphrase_fingerprint = sha256(passphrase);
    return out;
}

Bytes EncryptedArchive::serialize() const {
    Bytes out;
    out.reserve(1 + 8 + 4 + 12 + ciphertext.size() + 16);
    out.push_back(version);
    out.insert(out.end(), salt.begin(), salt.end());
    append_u32_be(out, iterations);
    out.insert(out.end(), nonce.begin(), nonce.end());
    out.insert(out.end(), ciphertext.begin(), ciphertext.end());
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
}

std::optional<EncryptedArchive> EncryptedArchive::deserialize(std::span<const uint8_t> raw) {
    constexpr size_t kHeader = 1 + 8 + 4 + 12;
    if (raw.size() < kHeader + 16) return std::nullopt;
    EncryptedArchive a;
    a.version = raw[0];
    if (a.version != kVersion) return std::nullopt;
    std::memcpy(a.salt.data(), raw.data() + 1, 8);
    a.iterations = read_u32_be(raw.subspan(9, 4));
    std::memcpy(a.nonce.data(), raw.data() + 13, 12);
    const size_t ct_len = raw.size() - kHeader - 16;
    a.ciphertext.assign(raw.begin() + kHeader, raw.begin() + kHeader + ct_len);
    std::memcpy(a.tag.data(), raw.data() + kHeader + ct_len, 16);
    return a;
}

EncryptedArchive encrypt_archive(std::span<const uint8_t> plaintext, const DerivedKey& key,
                                 DetRng& nonce_source) {
    EncryptedArchive out;
    out.salt = key.salt;
    out.iterations = key.iterations;
    out.nonce = nonce_source.array<12>();
    auto sealed = aes128gcm_seal(key.key, out.nonce, plaintext);
    out.ciphertext = std::move(sealed.ciphertext);
    out.tag = sealed.tag;
    return out;
}

std::optional<Bytes> decrypt_archive(const EncryptedArchive& archive,
                                     const std::array<uint8_t, 16>& key) {
    if (archive.version != EncryptedArchive::kVersion) return std::nullopt;
    return aes128gcm_open(key, archive.nonce, archive.ciphertext, archive.tag);
}

void KeyWallet::put(const std::string& archive_id, const DerivedKey& key) {
    entries_[archive_id] = key;
}

const DerivedKey* KeyWallet::get(const std::string& archive_id) const {
    auto it = entries_.find(archive_id);
    return it == entries_.end() ? nullptr : &it->second;
}

namespace {
std::array<uint8_t, 16> envelope_key(const std::array<uint8_t, 32>& shared,
                                     const std::array<uint8_t, 32>& ephemeral_public,
                                     const std::array<uint8_t, 32>& recipient_public) {
    FieldWriter w;
    w.field("intersnap-envelope").field(shared).field(ephemeral_public).field(recipient_public);
    auto d = sha512(w.bytes());
    std::array<uint8_t, 16> key{};
    std::memcpy(key.data(), d.data(), key.size());
    return key;
}

Bytes payload_bytes(const EnvelopePayload& p) {
    nlohmann::json doc{
        {"cid", p.cid},
        {"key", to_hex(p.key)},
        {"metadata", p.metadata},
    };
    return to_bytes(doc.dump());
}

std::optional<EnvelopePayload> payload_from_bytes(const Bytes& raw) {
    auto doc = nlohmann::json::parse(raw.begin(), raw.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    if (!doc.contains("cid") || !doc.contains("key") || !doc.contains("metadata"))
        return std::nullopt;
    EnvelopePayload p;
    p.cid = doc["cid"].get<std::string>();
    auto key = from_hex(doc["key"].get<std::string>());
    if (!key || key->size() != 16) return std::nullopt;
    std::memcpy(p.key.data(), key->data(), 16);
    p.metadata = doc["metadata"].get<std::string>();
    return p;
}
}  // namespace

Bytes Envelope::serialize() const {
    FieldWriter w;
    w.field(recipient_network).field(ephemeral_public).field(nonce).field(ciphertext).field(tag);
    return w.take();
}

std::optional<Envelope> Envelope::deserialize(std::span<const uint8_t> raw) {
    Envelope env;
    size_t off = 0;
    auto next = [&](Bytes& out) -> bool {
        if (off + 4 > raw.size()) return false;
        uint32_t len = read_u32_be(raw.subspan(off, 4));
        off += 4;
        if (off + len > raw.size()) return false;
        out.assign(raw.begin() + off, raw.begin() + off + len);
        off += len;
        return true;
    };
    Bytes recipient, eph, nonce, ct, tag;
    if (!next(recipient) || !next(eph) || !next(nonce) || !next(ct) || !next(tag) ||
        off != raw.size())
        return std::nullopt;
    if (eph.size() != 32 || nonce.size() != 12 || tag.size() != 16) return std::nullopt;
    env.recipient_network.assign(recipient.begin(), recipient.end());
    std::memcpy(env.ephemeral_public.data(), eph.data(), 32);
    std::memcpy(env.nonce.data(), nonce.data(), 12);
    env.ciphertext = std::move(ct);
    std::memcpy(env.tag.data(), tag.data(), 16);
    return env;
}

std::optional<Envelope> wrap_for_destination(const EnvelopePayload& payload,
                                             const std::string& dest_network,
                                             const IdentityRegistry& registry, DetRng& rng) {
    const auto* recipient_pub = registry.network_kx_key(dest_network);
    if (!recipient_pub) return std::nullopt;

    auto ephemeral = KxKeypair::from_seed(rng.array<32>());
    auto shared = x25519_shared(ephemeral.private_key, *recipient_pub);
    if (!shared) return std::nullopt;

    Envelope env;
    env.recipient_network = dest_network;
    env.ephemeral_public = ephemeral.public_key;
    env.nonce = rng.array<12>();
    const auto key = envelope_key(*shared, ephemeral.public_key, *recipient_pub);
    auto sealed = aes128gcm_seal(key, env.nonce, payload_bytes(payload));
    env.ciphertext = std::move(sealed.ciphertext);
    env.tag = sealed.tag;
    return env;
}

std::optional<EnvelopePayload> unwrap_envelope(const Envelope& env, const KxKeypair& keys) {
    auto shared = x25519_shared(keys.private_key, env.ephemeral_public);
    if (!shared) return std::nullopt;
    const auto key = envelope_key(*shared, env.ephemeral_public, keys.public_key);
    auto plain = aes128gcm_open(key, env.nonce, env.ciphertext, env.tag);
    if (!plain) return std::nullopt;
    return payload_from_bytes(*plain);
}

}  // namespace intersnap
