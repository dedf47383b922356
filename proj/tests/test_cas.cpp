// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/cas_store.hpp"

using namespace intersnap;
namespace fs = std::filesystem;

namespace {

// minimal standalone SHA-256, used only as an independent oracle for CIDs
struct OracleSha256 {
    static std::array<uint8_t, 32> digest(std::span<const uint8_t> data) {
        static constexpr uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
            0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
            0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
            0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
            0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
            0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
            0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
            0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                         0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
        std::vector<uint8_t> msg(data.begin(), data.end());
        const uint64_t bit_len = static_cast<uint64_t>(msg.size()) * 8;
        msg.push_back(0x80);
        while (msg.size() % 64 != 56) msg.push_back(0);
        for (int i = 7; i >= 0; --i) msg.push_back(static_cast<uint8_t>(bit_len >> (i * 8)));

        auto rotr = [](uint32_t x, int n) { return x >> n | x << (32 - n); };
        for (size_t off = 0; off < msg.size(); off += 64) {
            uint32_t w[64];
            for (int i = 0; i < 16; ++i)
                w[i] = static_cast<uint32_t>(msg[off + i * 4]) << 24 |
                       static_cast<uint32_t>(msg[off + i * 4 + 1]) << 16 |
                       static_cast<uint32_t>(msg[off + i * 4 + 2]) << 8 |
                       static_cast<uint32_t>(msg[off + i * 4 + 3]);
            for (int i = 16; i < 64; ++i) {
                uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
                uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
                w[i] = w[i - 16] + s0 + w[i - 7] + s1;
            }
            uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6],
                     hh = h[7];
            for (int i = 0; i < 64; ++i) {
                uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
                uint32_t ch = (e & f) ^ (~e & g);
                uint32_t t1 = hh + S1 + ch + K[i] + w[i];
                uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
                uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
                uint32_t t2 = S0 + maj;
                hh = g; g = f; f = e; e = d + t1;
                d = c; c = b; b = a; a = t1 + t2;
            }
            h[0] += a; h[1] += b; h[2] += c; h[3] += d;
            h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
        }
        std::array<uint8_t, 32> out{};
        for (int i = 0; i < 8; ++i) {
            out[i * 4] = static_cast<uint8_t>(h[i] >> 24);
            out[i * 4 + 1] = static_cast<uint8_t>(h[i] >> 16);
            out[i * 4 + 2] = static_cast<uint8_t>(h[i] >> 8);
            out[i * 4 + 3] = static_cast<uint8_t>(h[i]);
        }
        return out;
    }
};

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("intersnap_cas_" + tag);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("cid computation matches an independent sha-256 oracle") {
    // sanity-check the oracle against the FIPS 'abc' vector first
    CHECK(to_hex(OracleSha256::digest(to_bytes("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    DetRng rng(31);
    for (int i = 0; i < 1000; ++i) {
        Bytes data = rng.bytes(1 + rng.below(300));
        CHECK(CasStore::compute_cid(data) == "cid1-" + to_hex(OracleSha256::digest(data)));
    }
}

TEST_CASE("put/get round trip with content addressing") {
    DetRng rng(1);
    auto key = SwarmKey::generate(rng, {"N1", "N2"});
    CasStore store(key, {});

    Bytes x = to_bytes("snapshot archive bytes");
    auto put1 = store.put(x, key.secret, "N1");
    REQUIRE(put1.ok);
    CHECK(CasStore::valid_cid(put1.cid));

    SUBCASE("idempotent put, one stored copy") {
        auto put2 = store.put(x, key.secret, "N2");
        REQUIRE(put2.ok);
        CHECK(put2.cid == put1.cid);
        CHECK(store.object_count() == 1);
    }
    SUBCASE("one extra byte changes the cid") {
        Bytes y = x;
        y.push_back(0x00);
        auto put2 = store.put(y, key.secret, "N1");
        REQUIRE(put2.ok);
        CHECK(put2.cid != put1.cid);
        CHECK(store.object_count() == 2);
    }
    SUBCASE("get returns the exact bytes") {
        auto got = store.get(put1.cid, key.secret, "N2");
        REQUIRE(got.ok);
        CHECK(got.bytes == x);
    }
    SUBCASE("unknown cid") {
        auto got = store.get("cid1-" + std::string(64, '0'), key.secret, "N1");
        CHECK_FALSE(got.ok);
        CHECK(got.err == StoreError::not_found);
    }
}

TEST_CASE("access control: only swarm key holders") {
    DetRng rng(2);
    auto key = SwarmKey::generate(rng, {"N1"});
    CasStore store(key, {});
    Bytes x = to_bytes("secret");

    auto denied = store.put(x, key.secret, "N2");  // not a holder
    CHECK_FALSE(denied.ok);
    CHECK(denied.err == StoreError::access_denied);

    std::array<uint8_t, 32> wrong_secret{};
    auto bad_key = store.put(x, wrong_secret, "N1");  // holder, wrong key bytes
    CHECK_FALSE(bad_key.ok);
    CHECK(bad_key.err == StoreError::access_denied);

    REQUIRE(store.put(x, key.secret, "N1").ok);
    auto got = store.get(CasStore::compute_cid(x), wrong_secret, "N1");
    CHECK_FALSE(got.ok);
    CHECK(got.err == StoreError::access_denied);
}

TEST_CASE("persistence: restart reload and corruption detection") {
    DetRng rng(3);
    auto dir = temp_dir("persist");
    auto key = SwarmKey::generate(rng, {"N1", "auditor"});
    std::string cid;
    Bytes x = rng.bytes(1000);
    {
        CasStore store(key, dir);
        auto put = store.put(x, key.secret, "N1");
        REQUIRE(put.ok);
        cid = put.cid;
        REQUIRE(fs::exists(dir / "objects" / (cid + ".bin")));
        // swarm key file is 64 hex chars
        std::ifstream swarm(dir / "swarm.key");
        std::string hex;
        swarm >> hex;
        CHECK(hex.size() == 64);
        CHECK(hex == key.secret_hex());
    }

    SUBCASE("reload preserves contents and access policy") {
        auto reloaded = CasStore::open(dir);
        REQUIRE(reloaded);
        auto got = reloaded->get(cid, key.secret, "auditor");
        REQUIRE(got.ok);
        CHECK(got.bytes == x);
        CHECK_FALSE(reloaded->get(cid, key.secret, "N9").ok);
    }
    SUBCASE("out-of-band file corruption is caught at get") {
        {
            std::fstream f(dir / "objects" / (cid + ".bin"),
                           std::ios::in | std::ios::out | std::ios::binary);
            f.seekp(100);
            char byte;
            f.seekg(100);
            f.get(byte);
            byte ^= 0x01;
            f.seekp(100);
            f.put(byte);
        }
        auto reloaded = CasStore::open(dir);
        REQUIRE(reloaded);
        auto got = reloaded->get(cid, key.secret, "N1");
        CHECK_FALSE(got.ok);
        CHECK(got.err == StoreError::integrity_mismatch);
    }
    fs::remove_all(dir);
}
