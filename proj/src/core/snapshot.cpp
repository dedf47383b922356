// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/snapshot.hpp"

#include <algorithm>

#include "core/compress.hpp"

namespace intersnap {

namespace {
constexpr std::string_view kArchiveMagic = "ISNAP1";
}

SnapshotDecision process_snapshot(SchedulerState& state, int64_t ledger_height, double delta) {
    if (static_cast<double>(ledger_height - state.last_snapshot_height) >= delta) {
        state.last_snapshot_height = ledger_height;
        return {true};
    }
    return {false};
}

std::optional<std::string> select_snapshot_peer(const std::vector<PeerInfo>& topology,
                                                DetRng& rng) {
    uint64_t best = 0;
    bool any = false;
    for (const auto& p : topology) {
        if (!p.ready) continue;
        if (!any || p.replica_height > best) best = p.replica_height;
        any = true;
    }
    if (!any) return std::nullopt;
    std::vector<const PeerInfo*> ties;
    for (const auto& p : topology) {
        if (p.ready && p.replica_height == best) ties.push_back(&p);
    }
    return ties[rng.below(ties.size())]->peer_id;
}

size_t Snapshot::transaction_count() const {
    size_t n = 0;
    for (const auto& b : blocks) n += b.transactions.size();
    return n;
}

namespace {
Hash256 compute_state_digest(const Network& network, int64_t to_height) {
    FieldWriter w;
    w.field("intersnap-state")
        .field(network.id())
        .field_u64(static_cast<uint64_t>(to_height))
        .field(network.chain()[static_cast<size_t>(to_height)].block_hash);
    return sha256(w.bytes());
}

Hash256 compute_snapshot_id(const Snapshot& s) {
    FieldWriter w;
    w.field("intersnap-snapshot")
        .field(s.network_id)
        .field_u64(static_cast<uint64_t>(s.from_height + 1))
        .field_u64(static_cast<uint64_t>(s.to_height))
        .field_u64(s.capture_tick)
        .field(s.state_digest);
    return sha256(w.bytes());
}

SnapshotSetEntry make_entry(const SetRecord& rec) {
    SnapshotSetEntry e;
    e.set = rec.set;
    e.is_source = rec.is_source;
    e.initiated_tick = rec.initiated_tick;
    e.invoke_commit_height = rec.invoke_commit_height;
    e.receipt_commit_height = rec.receipt_commit_height;
    e.completed_tick = rec.completed_tick;
    e.incomplete_tick = rec.incomplete_tick;
    return e;
}
}  // namespace

CaptureResult capture_snapshot(const Network& network, const CrossChainManager& xchain,
                               const std::string& peer_id, int64_t from_height, uint64_t now,
                               int64_t window_start_tick) {
    CaptureResult out;
    const PeerInfo* peer = nullptr;
    auto topology = network.discover_topology();
    for (const auto& p : topology) {
        if (p.peer_id == peer_id) peer = &p;
    }
    if (!peer || !peer->ready) {
        out.err = CaptureError::peer_unavailable;
        return out;
    }
    const int64_t to_height = static_cast<int64_t>(peer->replica_height);
    if (to_height <= from_height) {
        out.err = CaptureError::empty_delta;
        return out;
    }

    Snapshot snap;
    snap.network_id = network.id();
    snap.from_height = from_height;
    snap.to_height = to_height;
    snap.capture_tick = now;

    // the replica is a byte-identical prefix of the canonical chain, so the
    // delta is read off the chain bounded by the peer's height
    auto blocks = network.blocks_since(from_height);
    if (!blocks) {
        out.err = CaptureError::empty_delta;
        return out;
    }
    for (auto& b : *blocks) {
        if (static_cast<int64_t>(b.height) <= to_height) snap.blocks.push_back(std::move(b));
    }

    for (const auto& rec : xchain.records()) {
        const bool completed_here =
            rec.receipt_commit_height &&
            static_cast<int64_t>(*rec.receipt_commit_height) > from_height &&
            static_cast<int64_t>(*rec.receipt_commit_height) <= to_height &&
            (rec.is_source ? rec.set.status == SetStatus::complete : rec.receipt_issued);
        if (completed_here) {
            snap.completed_sets.push_back(make_entry(rec));
            continue;
        }
        if (rec.is_source && rec.set.status == SetStatus::incomplete && rec.incomplete_tick &&
            static_cast<int64_t>(*rec.incomplete_tick) > window_start_tick &&
            *rec.incomplete_tick <= now) {
            snap.incomplete_sets.push_back(make_entry(rec));
        }
    }

    snap.state_digest = compute_state_digest(network, to_height);
    snap.snapshot_id = compute_snapshot_id(snap);
    out.ok = true;
    out.snapshot = std::move(snap);
    return out;
}

namespace {
Json optional_u64(const std::optional<uint64_t>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::optional<std::optional<uint64_t>> parse_optional_u64(const Json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (j[key].is_null()) return std::optional<uint64_t>{};
    if (!j[key].is_number_unsigned()) return std::nullopt;
    return std::optional<uint64_t>(j[key].get<uint64_t>());
}
}  // namespace

Json set_entry_to_json(const SnapshotSetEntry& entry) {
    Json j{
        {"set_id", hash_to_hex(entry.set.set_id)},
        {"source_network", entry.set.source_network},
        {"dest_network", entry.set.dest_network},
        {"invoke", tx_to_json(entry.set.invoke)},
        {"invoke_endorsements", endorsements_to_json(entry.set.invoke_endorsements)},
        {"deadline", entry.set.deadline},
        {"status", to_string(entry.set.status)},
        {"is_source", entry.is_source},
        {"initiated_tick", entry.initiated_tick},
        {"invoke_commit_height", optional_u64(entry.invoke_commit_height)},
        {"receipt_commit_height", optional_u64(entry.receipt_commit_height)},
        {"completed_tick", optional_u64(entry.completed_tick)},
        {"incomplete_tick", optional_u64(entry.incomplete_tick)},
    };
    if (entry.set.receipt) {
        j["receipt"] = tx_to_json(*entry.set.receipt);
        j["receipt_endorsements"] = endorsements_to_json(*entry.set.receipt_endorsements);
    } else {
        j["receipt"] = nullptr;
        j["receipt_endorsements"] = nullptr;
    }
    return j;
}

std::optional<SnapshotSetEntry> set_entry_from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    for (const char* key :
         {"set_id", "source_network", "dest_network", "invoke", "invoke_endorsements",
          "deadline", "status", "is_source", "initiated_tick", "receipt",
          "receipt_endorsements"}) {
        if (!j.contains(key)) return std::nullopt;
    }
    SnapshotSetEntry e;
    auto set_id = hash_from_hex(j["set_id"].get<std::string>());
    auto invoke = tx_from_json(j["invoke"]);
    auto invoke_ends = endorsements_from_json(j["invoke_endorsements"]);
    if (!set_id || !invoke || !invoke_ends) return std::nullopt;
    e.set.set_id = *set_id;
    e.set.source_network = j["source_network"].get<std::string>();
    e.set.dest_network = j["dest_network"].get<std::string>();
    e.set.invoke = std::move(*invoke);
    e.set.invoke_endorsements = std::move(*invoke_ends);
    if (!j["deadline"].is_number_unsigned()) return std::nullopt;
    e.set.deadline = j["deadline"].get<uint64_t>();
    const auto status = j["status"].get<std::string>();
    if (status == "pending")
        e.set.status = SetStatus::pending;
    else if (status == "complete")
        e.set.status = SetStatus::complete;
    else if (status == "incomplete")
        e.set.status = SetStatus::incomplete;
    else
        return std::nullopt;
    if (!j["is_source"].is_boolean() || !j["initiated_tick"].is_number_unsigned())
        return std::nullopt;
    e.is_source = j["is_source"].get<bool>();
    e.initiated_tick = j["initiated_tick"].get<uint64_t>();

    if (!j["receipt"].is_null()) {
        auto receipt = tx_from_json(j["receipt"]);
        auto rends = endorsements_from_json(j["receipt_endorsements"]);
        if (!receipt || !rends) return std::nullopt;
        e.set.receipt = std::move(*receipt);
        e.set.receipt_endorsements = std::move(*rends);
    } else if (!j["receipt_endorsements"].is_null()) {
        return std::nullopt;
    }

    auto ich = parse_optional_u64(j, "invoke_commit_height");
    auto rch = parse_optional_u64(j, "receipt_commit_height");
    auto ct = parse_optional_u64(j, "completed_tick");
    auto it = parse_optional_u64(j, "incomplete_tick");
    if (!ich || !rch || !ct || !it) return std::nullopt;
    e.invoke_commit_height = *ich;
    e.receipt_commit_height = *rch;
    e.completed_tick = *ct;
    e.incomplete_tick = *it;
    return e;
}

Json snapshot_to_json(const Snapshot& snap) {
    auto blocks = Json::array();
    for (const auto& b : snap.blocks) blocks.push_back(block_to_json(b));
    auto completed = Json::array();
    for (const auto& e : snap.completed_sets) completed.push_back(set_entry_to_json(e));
    auto incomplete = Json::array();
    for (const auto& e : snap.incomplete_sets) incomplete.push_back(set_entry_to_json(e));
    return Json{
        {"snapshot_id", hash_to_hex(snap.snapshot_id)},
        {"network_id", snap.network_id},
        {"from_height", snap.from_height},
        {"to_height", snap.to_height},
        {"blocks", std::move(blocks)},
        {"completed_sets", std::move(completed)},
        {"incomplete_sets", std::move(incomplete)},
        {"state_digest", hash_to_hex(snap.state_digest)},
        {"capture_tick", snap.capture_tick},
    };
}

std::optional<Snapshot> snapshot_from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    for (const char* key :
         {"snapshot_id", "network_id", "from_height", "to_height", "blocks", "completed_sets",
          "incomplete_sets", "state_digest", "capture_tick"}) {
        if (!j.contains(key)) return std::nullopt;
    }
    Snapshot s;
    auto id = hash_from_hex(j["snapshot_id"].get<std::string>());
    auto digest = hash_from_hex(j["state_digest"].get<std::string>());
    if (!id || !digest) return std::nullopt;
    s.snapshot_id = *id;
    s.network_id = j["network_id"].get<std::string>();
    if (!j["from_height"].is_number_integer() || !j["to_height"].is_number_integer() ||
        !j["capture_tick"].is_number_unsigned())
        return std::nullopt;
    s.from_height = j["from_height"].get<int64_t>();
    s.to_height = j["to_height"].get<int64_t>();
    s.capture_tick = j["capture_tick"].get<uint64_t>();
    s.state_digest = *digest;
    if (!j["blocks"].is_array() || !j["completed_sets"].is_array() ||
        !j["incomplete_sets"].is_array())
        return std::nullopt;
    for (const auto& bj : j["blocks"]) {
        auto b = block_from_json(bj);
        if (!b) return std::nullopt;
        s.blocks.push_back(std::move(*b));
    }
    for (const auto& ej : j["completed_sets"]) {
        auto e = set_entry_from_json(ej);
        if (!e) return std::nullopt;
        s.completed_sets.push_back(std::move(*e));
    }
    for (const auto& ej : j["incomplete_sets"]) {
        auto e = set_entry_from_json(ej);
        if (!e) return std::nullopt;
        s.incomplete_sets.push_back(std::move(*e));
    }
    return s;
}

AssembleResult assemble_archive(const std::vector<Snapshot>& snapshots) {
    AssembleResult out;
    if (snapshots.empty()) {
        out.err = ArchiveError::empty;
        return out;
    }
    for (size_t i = 1; i < snapshots.size(); ++i) {
        if (snapshots[i].from_height != snapshots[i - 1].to_height ||
            snapshots[i].network_id != snapshots[0].network_id) {
            out.err = ArchiveError::non_contiguous_snapshots;
            return out;
        }
    }

    Json manifest{
        {"network_id", snapshots[0].network_id},
        {"from_height", snapshots.front().from_height},
        {"to_height", snapshots.back().to_height},
        {"snapshot_count", snapshots.size()},
        {"creation_ticks", Json::array()},
    };
    for (const auto& s : snapshots) manifest["creation_ticks"].push_back(s.capture_tick);

    std::string text;
    text += kArchiveMagic;
    text += '\n';
    text += dump_canonical(manifest);
    text += '\n';
    for (const auto& s : snapshots) {
        text += dump_canonical(snapshot_to_json(s));
        text += '\n';
    }
    out.bytes = deflate_bytes(
        std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
    out.ok = true;
    return out;
}

ParseArchiveResult parse_archive(std::span<const uint8_t> plaintext_bytes) {
    ParseArchiveResult out;
    auto inflated = inflate_bytes(plaintext_bytes);
    if (!inflated) return out;
    std::string_view text(reinterpret_cast<const char*>(inflated->data()), inflated->size());

    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) return out;  // every record is newline-terminated
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() < 3 || lines[0] != kArchiveMagic) return out;

    auto manifest = Json::parse(lines[1], nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) return out;
    SnapshotArchive archive;
    if (!manifest.contains("network_id") || !manifest.contains("from_height") ||
        !manifest.contains("to_height") || !manifest.contains("snapshot_count") ||
        !manifest.contains("creation_ticks"))
        return out;
    archive.manifest.network_id = manifest["network_id"].get<std::string>();
    archive.manifest.from_height = manifest["from_height"].get<int64_t>();
    archive.manifest.to_height = manifest["to_height"].get<int64_t>();
    archive.manifest.snapshot_count = manifest["snapshot_count"].get<uint32_t>();
    for (const auto& t : manifest["creation_ticks"])
        archive.manifest.creation_ticks.push_back(t.get<uint64_t>());

    for (size_t i = 2; i < lines.size(); ++i) {
        auto j = Json::parse(lines[i], nullptr, false);
        if (j.is_discarded()) return out;
        auto snap = snapshot_from_json(j);
        if (!snap) return out;
        archive.snapshots.push_back(std::move(*snap));
    }
    if (archive.snapshots.size() != archive.manifest.snapshot_count) return out;
    for (size_t i = 1; i < archive.snapshots.size(); ++i) {
        if (archive.snapshots[i].from_height != archive.snapshots[i - 1].to_height ||
            archive.snapshots[i].network_id != archive.snapshots[0].network_id) {
            out.err = ArchiveError::non_contiguous_snapshots;
            return out;
        }
    }
    if (!archive.snapshots.empty() &&
        (archive.manifest.from_height != archive.snapshots.front().from_height ||
         archive.manifest.to_height != archive.snapshots.back().to_height ||
         archive.manifest.network_id != archive.snapshots.front().network_id))
        return out;

    out.ok = true;
    out.archive = std::move(archive);
    return out;
}

}  // namespace intersnap
