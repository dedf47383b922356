// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/sig.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace intersnap {

namespace {
struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct CtxDeleter {
    void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct PctxDeleter {
    void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PctxDeleter>;

PkeyPtr raw_private(int type, std::span<const uint8_t> key) {
    PkeyPtr p(EVP_PKEY_new_raw_private_key(type, nullptr, key.data(), key.size()));
    if (!p) throw std::runtime_error("raw private key construction failed");
    return p;
}

PkeyPtr raw_public(int type, std::span<const uint8_t> key) {
    return PkeyPtr(EVP_PKEY_new_raw_public_key(type, nullptr, key.data(), key.size()));
}

std::array<uint8_t, 32> public_of(EVP_PKEY* pkey) {
    std::array<uint8_t, 32> out{};
    size_t len = out.size();
    if (EVP_PKEY_get_raw_public_key(pkey, out.data(), &len) != 1 || len != 32)
        throw std::runtime_error("public key extraction failed");
    return out;
}
}  // namespace

SigningKey SigningKey::from_seed(const std::array<uint8_t, 32>& seed) {
    SigningKey k;
    k.seed = seed;
    auto pkey = raw_private(EVP_PKEY_ED25519, seed);
    k.public_key = public_of(pkey.get());
    return k;
}

Bytes SigningKey::sign(std::span<const uint8_t> message) const {
    auto pkey = raw_private(EVP_PKEY_ED25519, seed);
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1)
        throw std::runtime_error("sign init failed");
    size_t sig_len = 64;
    Bytes sig(sig_len);
    if (EVP_DigestSign(ctx.get(), sig.data(), &sig_len, message.data(), message.size()) != 1)
        throw std::runtime_error("sign failed");
    sig.resize(sig_len);
    return sig;
}

bool verify_signature(const std::array<uint8_t, 32>& public_key,
                      std::span<const uint8_t> message,
                      std::span<const uint8_t> signature) {
    if (signature.size() != 64) return false;
    auto pkey = raw_public(EVP_PKEY_ED25519, public_key);
    if (!pkey) return false;
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1)
        return false;
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                            message.data(), message.size()) == 1;
}

KxKeypair KxKeypair::from_seed(const std::array<uint8_t, 32>& seed) {
    KxKeypair k;
    k.private_key = seed;
    auto pkey = raw_private(EVP_PKEY_X25519, seed);
    k.public_key = public_of(pkey.get());
    return k;
}

std::optional<std::array<uint8_t, 32>> x25519_shared(
    const std::array<uint8_t, 32>& private_key,
    const std::array<uint8_t, 32>& peer_public) {
    auto priv = raw_private(EVP_PKEY_X25519, private_key);
    auto peer = raw_public(EVP_PKEY_X25519, peer_public);
    if (!peer) return std::nullopt;
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new(priv.get(), nullptr));
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
        EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1)
        return std::nullopt;
    std::array<uint8_t, 32> out{};
    size_t len = out.size();
    if (EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1 || len != 32)
        return std::nullopt;
    return out;
}

}  // namespace intersnap
