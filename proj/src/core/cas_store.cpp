// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/cas_store.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace intersnap {

namespace {
constexpr std::string_view kCidPrefix = "cid1-";

std::optional<Bytes> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) return std::nullopt;
    return data;
}

bool write_file(const std::filesystem::path& path, std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    return out.good();
}
}  // namespace

const char* to_string(StoreError err) {
    switch (err) {
        case StoreError::access_denied: return "access_denied";
        case StoreError::not_found: return "not_found";
        case StoreError::integrity_mismatch: return "integrity_mismatch";
        case StoreError::io_failure: return "io_failure";
    }
    return "?";
}

SwarmKey SwarmKey::generate(DetRng& rng, std::set<std::string> holders) {
    SwarmKey k;
    k.secret = rng.array<32>();
    k.holders = std::move(holders);
    return k;
}

CasStore::CasStore(SwarmKey key, std::filesystem::path root)
    : key_(std::move(key)), root_(std::move(root)) {
    if (!root_.empty()) {
        std::filesystem::create_directories(root_ / "objects");
        std::ofstream swarm(root_ / "swarm.key", std::ios::trunc);
        swarm << key_.secret_hex();
        persist_manifest();
    }
}

std::optional<CasStore> CasStore::open(const std::filesystem::path& root) {
    auto manifest_raw = read_file(root / "manifest.json");
    auto swarm_raw = read_file(root / "swarm.key");
    if (!manifest_raw || !swarm_raw) return std::nullopt;
    auto secret = from_hex(std::string(swarm_raw->begin(), swarm_raw->end()));
    if (!secret || secret->size() != 32) return std::nullopt;
    auto doc = nlohmann::json::parse(manifest_raw->begin(), manifest_raw->end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;

    SwarmKey key;
    std::copy(secret->begin(), secret->end(), key.secret.begin());
    for (const auto& h : doc.value("holders", nlohmann::json::array()))
        key.holders.insert(h.get<std::string>());

    CasStore store(key, {});
    store.root_ = root;
    for (const auto& entry : doc.value("objects", nlohmann::json::array())) {
        const auto cid = entry.get<std::string>();
        auto data = read_file(root / "objects" / (cid + ".bin"));
        if (!data) return std::nullopt;
        store.objects_[cid] = std::move(*data);
    }
    return store;
}

bool CasStore::admitted(const std::array<uint8_t, 32>& presented_key,
                        const std::string& caller) const {
    return presented_key == key_.secret && key_.holders.count(caller) != 0;
}

std::string CasStore::compute_cid(std::span<const uint8_t> bytes) {
    return std::string(kCidPrefix) + to_hex(sha256(bytes));
}

bool CasStore::valid_cid(const std::string& cid) {
    if (cid.size() != kCidPrefix.size() + 64) return false;
    if (cid.compare(0, kCidPrefix.size(), kCidPrefix) != 0) return false;
    return from_hex(std::string_view(cid).substr(kCidPrefix.size())).has_value();
}

CasStore::PutResult CasStore::put(std::span<const uint8_t> bytes,
                                  const std::array<uint8_t, 32>& presented_key,
                                  const std::string& caller) {
    if (!admitted(presented_key, caller)) return {false, {}, StoreError::access_denied};
    std::string cid = compute_cid(bytes);
    auto [it, inserted] = objects_.try_emplace(cid, bytes.begin(), bytes.end());
    if (inserted && !root_.empty()) {
        if (!write_file(root_ / "objects" / (cid + ".bin"), bytes))
            return {false, {}, StoreError::io_failure};
        persist_manifest();
    }
    return {true, std::move(cid), StoreError::io_failure};
}

CasStore::GetResult CasStore::get(const std::string& cid,
                                  const std::array<uint8_t, 32>& presented_key,
                                  const std::string& caller) const {
    if (!admitted(presented_key, caller)) return {false, {}, StoreError::access_denied};
    auto it = objects_.find(cid);
    if (it == objects_.end()) return {false, {}, StoreError::not_found};
    Bytes data;
    if (!root_.empty()) {
        // the persisted file is authoritative so on-disk corruption is caught
        auto raw = read_file(root_ / "objects" / (cid + ".bin"));
        if (!raw) return {false, {}, StoreError::not_found};
        data = std::move(*raw);
    } else {
        data = it->second;
    }
    if (compute_cid(data) != cid) return {false, {}, StoreError::integrity_mismatch};
    return {true, std::move(data), StoreError::io_failure};
}

std::vector<std::string> CasStore::list() const {
    std::vector<std::string> out;
    out.reserve(objects_.size());
    for (const auto& [cid, bytes] : objects_) out.push_back(cid);
    return out;
}

void CasStore::persist_manifest() const {
    if (root_.empty()) return;
    nlohmann::json doc;
    doc["holders"] = key_.holders;
    auto objects = nlohmann::json::array();
    for (const auto& [cid, bytes] : objects_) objects.push_back(cid);
    doc["objects"] = objects;
    const std::string text = doc.dump(2);
    write_file(root_ / "manifest.json",
               std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()),
                                        text.size()));
}

}  // namespace intersnap
