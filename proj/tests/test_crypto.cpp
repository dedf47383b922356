// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "core/archive_crypto.hpp"
#include "core/registry.hpp"

using namespace intersnap;

namespace {
std::array<uint8_t, 8> salt_of(uint64_t v) {
    std::array<uint8_t, 8> s{};
    for (int i = 7; i >= 0; --i) {
        s[i] = static_cast<uint8_t>(v);
        v >>= 8;
    }
    return s;
}
}  // namespace

TEST_CASE("key derivation pinned vectors") {
    // computed independently with a separate SHA-512 implementation
    auto k1 = derive_key(to_bytes("a"), salt_of(0), 1);
    REQUIRE(k1);
    CHECK(to_hex(k1->key) == "907312efa6e237f3777a8b31955e578f");

    auto k3 = derive_key(to_bytes("a"), salt_of(0), 3);
    REQUIRE(k3);
    CHECK(to_hex(k3->key) == "9fa5ddf65db5128ec642f338c88755d5");

    auto k2 = derive_key(to_bytes("archive passphrase"), salt_of(0x0102030405060708ULL), 2);
    REQUIRE(k2);
    CHECK(to_hex(k2->key) == "8e71082e9161d2b3f7531f24c5248237");
}

TEST_CASE("key derivation basic contract") {
    auto a = derive_key(to_bytes("passphrase"), salt_of(42), 16);
    auto b = derive_key(to_bytes("passphrase"), salt_of(42), 16);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->key == b->key);  // deterministic
    CHECK(a->passphrase_fingerprint == sha256(to_bytes("passphrase")));

    auto c = derive_key(to_bytes("passphrase"), salt_of(43), 16);
    REQUIRE(c);
    CHECK(a->key != c->key);  // same passphrase, different salt, different key

    CHECK_FALSE(derive_key({}, salt_of(1), 16));             // empty_passphrase
    CHECK_FALSE(derive_key(to_bytes("x"), salt_of(1), 0));   // iterations >= 1
}

TEST_CASE("no key collisions over 10000 random salts") {
    DetRng rng(2024);
    const Bytes pass = to_bytes("one passphrase to rule them all");
    std::set<std::array<uint8_t, 16>> keys;
    for (int i = 0; i < 10000; ++i) {
        auto key = derive_key(pass, rng.array<8>(), 2);
        REQUIRE(key);
        keys.insert(key->key);
    }
    CHECK(keys.size() == 10000);
}

TEST_CASE("archive encryption round trip and wire format") {
    DetRng rng(5);
    auto key = derive_key(to_bytes("pw"), salt_of(7), 8);
    REQUIRE(key);
    Bytes plain = rng.bytes(4096);

    auto sealed = encrypt_archive(plain, *key, rng);
    CHECK(sealed.salt == key->salt);
    CHECK(sealed.iterations == 8);

    auto raw = sealed.serialize();
    // version byte || salt(8) || iterations(4 BE) || nonce(12) || ct || tag(16)
    REQUIRE(raw.size() == 1 + 8 + 4 + 12 + plain.size() + 16);
    CHECK(raw[0] == EncryptedArchive::kVersion);
    CHECK(Bytes(raw.begin() + 1, raw.begin() + 9) == Bytes(key->salt.begin(), key->salt.end()));
    CHECK(read_u32_be(std::span<const uint8_t>(raw).subspan(9, 4)) == 8);

    auto parsed = EncryptedArchive::deserialize(raw);
    REQUIRE(parsed);
    auto opened = decrypt_archive(*parsed, *key);
    REQUIRE(opened);
    CHECK(*opened == plain);
}

TEST_CASE("tampering and wrong keys fail authentication") {
    DetRng rng(6);
    auto key = derive_key(to_bytes("pw"), salt_of(7), 8);
    auto wrong = derive_key(to_bytes("pw2"), salt_of(7), 8);
    REQUIRE(key);
    REQUIRE(wrong);
    Bytes plain = rng.bytes(512);
    auto sealed = encrypt_archive(plain, *key, rng);

    SUBCASE("bit flip in ciphertext") {
        sealed.ciphertext[100] ^= 0x10;
        CHECK_FALSE(decrypt_archive(sealed, *key));
    }
    SUBCASE("bit flip in tag") {
        sealed.tag[3] ^= 0x01;
        CHECK_FALSE(decrypt_archive(sealed, *key));
    }
    SUBCASE("wrong key") {
        CHECK_FALSE(decrypt_archive(sealed, *wrong));
    }
    SUBCASE("truncated ciphertext") {
        sealed.ciphertext.pop_back();
        CHECK_FALSE(decrypt_archive(sealed, *key));
    }
    SUBCASE("truncated wire bytes fail to parse") {
        auto raw = sealed.serialize();
        raw.resize(20);
        CHECK_FALSE(EncryptedArchive::deserialize(raw));
    }
}

TEST_CASE("identical plaintexts under fresh nonces differ") {
    DetRng rng(7);
    auto key = derive_key(to_bytes("pw"), salt_of(7), 8);
    REQUIRE(key);
    Bytes plain = to_bytes("same archive bytes");
    auto first = encrypt_archive(plain, *key, rng);
    auto second = encrypt_archive(plain, *key, rng);
    CHECK(first.nonce != second.nonce);
    CHECK(first.ciphertext != second.ciphertext);
}

TEST_CASE("wallet stores keys independently of ledger state") {
    KeyWallet wallet;
    auto key = derive_key(to_bytes("pw"), salt_of(1), 4);
    REQUIRE(key);
    wallet.put("cid1-abc", *key);
    const auto* got = wallet.get("cid1-abc");
    REQUIRE(got != nullptr);
    CHECK(got->key == key->key);
    CHECK(wallet.get("cid1-missing") == nullptr);
}

TEST_CASE("envelope unwraps only under the designated recipient key") {
    DetRng rng(11);
    auto n1 = Network::bootstrap({"N1", 3, 1});
    auto n2 = Network::bootstrap({"N2", 3, 2});
    auto n3 = Network::bootstrap({"N3", 3, 3});
    IdentityRegistry registry;
    registry.register_all(n1);
    registry.register_all(n2);
    registry.register_all(n3);

    EnvelopePayload payload;
    payload.cid = "cid1-00ff";
    payload.key = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
    payload.metadata = "{\"span\":[0,10]}";

    auto env = wrap_for_destination(payload, "N2", registry, rng);
    REQUIRE(env);

    auto opened = unwrap_envelope(*env, n2.kx_keys());
    REQUIRE(opened);
    CHECK(opened->cid == payload.cid);
    CHECK(opened->key == payload.key);
    CHECK(opened->metadata == payload.metadata);

    // exhaustive cross-check: every other registered key fails
    CHECK_FALSE(unwrap_envelope(*env, n1.kx_keys()));
    CHECK_FALSE(unwrap_envelope(*env, n3.kx_keys()));

    CHECK_FALSE(wrap_for_destination(payload, "N9", registry, rng));  // unknown_destination

    auto raw = env->serialize();
    auto parsed = Envelope::deserialize(raw);
    REQUIRE(parsed);
    CHECK(unwrap_envelope(*parsed, n2.kx_keys()));
    raw[raw.size() - 1] ^= 1;  // tag byte
    auto damaged = Envelope::deserialize(raw);
    REQUIRE(damaged);
    CHECK_FALSE(unwrap_envelope(*damaged, n2.kx_keys()));
}
