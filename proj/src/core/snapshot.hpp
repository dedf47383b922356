// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/crosschain.hpp"
#include "core/rng.hpp"

namespace intersnap {

/// Need-based scheduling parameters. The threshold is blocks_per_period x
/// window_periods: that much ledger growth since the last snapshot triggers
/// a new one, evaluated every poll_interval ticks.
struct SchedulerConfig {
    double blocks_per_period{0.0};
    double window_periods{1.0};
    uint64_t poll_interval{1};

    double threshold() const { return blocks_per_period * window_periods; }
};

struct SchedulerState {
    std::string network_id;
    int64_t last_snapshot_height{-1};
};

struct SnapshotDecision {
    bool trigger{false};
};

/// Core scheduling rule: trigger iff ledger_height - last_snapshot_height
/// >= delta, advancing last_snapshot_height on trigger.
SnapshotDecision process_snapshot(SchedulerState& state, int64_t ledger_height, double delta);

/// Ready peer with maximum replica height; ties broken uniformly by rng.
/// nullopt when no peer is ready.
std::optional<std::string> select_snapshot_peer(const std::vector<PeerInfo>& topology,
                                                DetRng& rng);

/// A set as captured into a snapshot, with this network's local commit
/// coordinates alongside the full dual-endorsed content.
struct SnapshotSetEntry {
    TransactionSet set;
    bool is_source{false};
    uint64_t initiated_tick{0};
    std::optional<uint64_t> invoke_commit_height;
    std::optional<uint64_t> receipt_commit_height;
    std::optional<uint64_t> completed_tick;
    std::optional<uint64_t> incomplete_tick;
};

struct Snapshot {
    Hash256 snapshot_id{};
    std::string network_id;
    int64_t from_height{-1};  // exclusive
    int64_t to_height{0};     // inclusive
    std::vector<Block> blocks;
    std::vector<SnapshotSetEntry> completed_sets;
    std::vector<SnapshotSetEntry> incomplete_sets;
    Hash256 state_digest{};
    uint64_t capture_tick{0};

    size_t transaction_count() const;
};

enum class CaptureError : uint8_t { peer_unavailable, empty_delta };

/// Captures the ledger delta (from_height, peer's replica height] as seen by
/// the named peer, together with every set whose receipt committed in that
/// span and flags for sets that expired since window_start_tick.
struct CaptureResult {
    bool ok{false};
    Snapshot snapshot;
    CaptureError err{CaptureError::peer_unavailable};
};
CaptureResult capture_snapshot(const Network& network, const CrossChainManager& xchain,
                               const std::string& peer_id, int64_t from_height, uint64_t now,
                               int64_t window_start_tick);

struct ArchiveManifest {
    std::string network_id;
    int64_t from_height{-1};
    int64_t to_height{0};
    uint32_t snapshot_count{0};
    std::vector<uint64_t> creation_ticks;
};

struct SnapshotArchive {
    ArchiveManifest manifest;
    std::vector<Snapshot> snapshots;
};

enum class ArchiveError : uint8_t { empty, non_contiguous_snapshots, malformed };

/// Canonical plaintext archive bytes: the "ISNAP1" magic, the manifest
/// record, and each snapshot record, newline-framed canonical JSON, the
/// whole envelope DEFLATE-compressed with pinned parameters. Identical
/// input yields identical bytes.
struct AssembleResult {
    bool ok{false};
    Bytes bytes;
    ArchiveError err{ArchiveError::empty};
};
AssembleResult assemble_archive(const std::vector<Snapshot>& snapshots);

struct ParseArchiveResult {
    bool ok{false};
    SnapshotArchive archive;
    ArchiveError err{ArchiveError::malformed};
};
ParseArchiveResult parse_archive(std::span<const uint8_t> plaintext_bytes);

Json snapshot_to_json(const Snapshot& snap);
std::optional<Snapshot> snapshot_from_json(const Json& j);
Json set_entry_to_json(const SnapshotSetEntry& entry);
std::optional<SnapshotSetEntry> set_entry_from_json(const Json& j);

}  // namespace intersnap
