// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "core/serial.hpp"

namespace intersnap {

/// Pipeline stage counters. Stage names are fixed:
/// archive_snapshot, compress_archive, encrypt_archive, store_upload,
/// initiate_interop.
struct StageCounter {
    uint64_t attempts{0};
    uint64_t pass{0};
    uint64_t fail{0};
};

struct SnapshotMetricRow {
    std::string network;
    std::string cid;
    uint64_t capture_tick{0};
    int64_t from_height{-1};
    int64_t to_height{0};
    uint64_t block_count{0};
    uint64_t tx_count{0};
    uint64_t plaintext_bytes{0};
    uint64_t ciphertext_bytes{0};
    // wall-clock seconds, excluded from determinism comparisons
    double capture_s{0};
    double compress_s{0};
    double encrypt_s{0};
    double store_put_s{0};
};

struct TransferMetricRow {
    std::string set_id_hex;
    std::string kind;  // "workload" or "archive_handle"
    std::string source;
    std::string dest;
    uint64_t initiated_tick{0};
    int64_t completed_tick{-1};
    std::string status;
};

struct VerdictMetricRow {
    uint64_t tick{0};
    std::string claimant;
    std::string respondent;
    std::string kind;
    std::string outcome;
    std::string rationale;
    uint64_t evidence_count{0};
    std::string origin;  // "scripted" or "receipt_denial"
};

struct BootstrapMetricRow {
    std::string network;
    uint32_t peer{0};
    uint64_t blocks{0};
    std::string source;  // "store" or "replica"
    double wall_s{0};
    uint64_t tick{0};
};

struct MetricsReport {
    std::string scenario_name;
    uint64_t seed{0};
    uint64_t run_ticks{0};
    std::map<std::string, StageCounter> stages;
    std::vector<SnapshotMetricRow> snapshots;
    std::vector<TransferMetricRow> transfers;
    std::vector<VerdictMetricRow> verdicts;
    std::vector<BootstrapMetricRow> bootstraps;
    uint64_t relay_dropped{0};
    uint64_t late_receipts{0};
    std::string final_state_hash;

    /// attempts == pass + fail for every stage.
    bool counters_reconcile() const;
    double overall_success_rate() const;
    Json summary_json() const;
};

class MetricsCollector {
public:
    void stage_attempt(const std::string& stage, bool pass);
    void add_snapshot(SnapshotMetricRow row) { snapshots_.push_back(std::move(row)); }
    void add_transfer(TransferMetricRow row) { transfers_.push_back(std::move(row)); }
    void transfer_status(const std::string& set_id_hex, const std::string& status,
                         int64_t completed_tick);
    void add_verdict(VerdictMetricRow row) { verdicts_.push_back(std::move(row)); }
    void add_bootstrap(BootstrapMetricRow row) { bootstraps_.push_back(std::move(row)); }
    void relay_drop() { ++relay_dropped_; }
    void late_receipt() { ++late_receipts_; }

    MetricsReport finalize(std::string scenario_name, uint64_t seed, uint64_t run_ticks,
                           std::string state_hash) const;

private:
    std::map<std::string, StageCounter> stages_;
    std::vector<SnapshotMetricRow> snapshots_;
    std::vector<TransferMetricRow> transfers_;
    std::vector<VerdictMetricRow> verdicts_;
    std::vector<BootstrapMetricRow> bootstraps_;
    uint64_t relay_dropped_{0};
    uint64_t late_receipts_{0};
};

/// Writes the report as CSV files plus summary.json under dir. Tick-based
/// files are byte-reproducible across identically seeded runs; wall-clock
/// columns are confined to wall_times.csv.
bool export_metrics(const MetricsReport& report, const std::filesystem::path& dir);

}  // namespace intersnap
