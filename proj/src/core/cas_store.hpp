// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "core/bytes.hpp"
#include "core/hash.hpp"
#include "core/rng.hpp"

namespace intersnap {

/// Shared secret gating the private store, plus the set of parties admitted
/// to present it.
struct SwarmKey {
    std::array<uint8_t, 32> secret{};
    std::set<std::string> holders;

    static SwarmKey generate(DetRng& rng, std::set<std::string> holders);
    std::string secret_hex() const { return to_hex(secret); }
};

enum class StoreError : uint8_t {
    access_denied,
    not_found,
    integrity_mismatch,
    io_failure,
};
const char* to_string(StoreError err);

/// Private content-addressed store. Contents are keyed solely by the
/// SHA-256 of their bytes, retrieval re-verifies that hash, and the store's
/// state is entirely independent of any ledger: blockchain-side faults can
/// never reach it.
///
/// When given a persistence root, the layout is
///   <root>/objects/<cid>.bin
///   <root>/manifest.json
///   <root>/swarm.key        (64 hex chars)
/// and gets read back the object file on every access, so out-of-band
/// corruption and process restarts are both covered. With an empty root the
/// store is memory-only.
class CasStore {
public:
    CasStore(SwarmKey key, std::filesystem::path root);
    /// Reloads a previously persisted store.
    static std::optional<CasStore> open(const std::filesystem::path& root);

    struct PutResult {
        bool ok{false};
        std::string cid;
        StoreError err{StoreError::io_failure};
    };
    PutResult put(std::span<const uint8_t> bytes, const std::array<uint8_t, 32>& presented_key,
                  const std::string& caller);

    struct GetResult {
        bool ok{false};
        Bytes bytes;
        StoreError err{StoreError::io_failure};
    };
    GetResult get(const std::string& cid, const std::array<uint8_t, 32>& presented_key,
                  const std::string& caller) const;

    static std::string compute_cid(std::span<const uint8_t> bytes);
    static bool valid_cid(const std::string& cid);

    std::vector<std::string> list() const;
    size_t object_count() const { return objects_.size(); }
    const SwarmKey& swarm_key() const { return key_; }
    const std::filesystem::path& root() const { return root_; }

private:
    bool admitted(const std::array<uint8_t, 32>& presented_key, const std::string& caller) const;
    void persist_manifest() const;

    SwarmKey key_;
    std::filesystem::path root_;
    std::map<std::string, Bytes> objects_;
};

}  // namespace intersnap
