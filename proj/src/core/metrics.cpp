// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/metrics.hpp"

#include <fstream>

namespace intersnap {

void MetricsCollector::stage_attempt(const std::string& stage, bool pass) {
    auto& c = stages_[stage];
    ++c.attempts;
    if (pass)
        ++c.pass;
    else
        ++c.fail;
}

void MetricsCollector::transfer_status(const std::string& set_id_hex, const std::string& status,
                                       int64_t completed_tick) {
    for (auto it = transfers_.rbegin(); it != transfers_.rend(); ++it) {
        if (it->set_id_hex == set_id_hex) {
            it->status = status;
            if (completed_tick >= 0) it->completed_tick = completed_tick;
            return;
        }
    }
}

MetricsReport MetricsCollector::finalize(std::string scenario_name, uint64_t seed,
                                         uint64_t run_ticks, std::string state_hash) const {
    MetricsReport r;
    r.scenario_name = std::move(scenario_name);
    r.seed = seed;
    r.run_ticks = run_ticks;
    r.stages = stages_;
    r.snapshots = snapshots_;
    r.transfers = transfers_;
    r.verdicts = verdicts_;
    r.bootstraps = bootstraps_;
    r.relay_dropped = relay_dropped_;
    r.late_receipts = late_receipts_;
    r.final_state_hash = std::move(state_hash);
    return r;
}

bool MetricsReport::counters_reconcile() const {
    for (const auto& [name, c] : stages) {
        if (c.attempts != c.pass + c.fail) return false;
    }
    return true;
}

double MetricsReport::overall_success_rate() const {
    uint64_t attempts = 0, pass = 0;
    for (const auto& [name, c] : stages) {
        attempts += c.attempts;
        pass += c.pass;
    }
    return attempts == 0 ? 1.0 : static_cast<double>(pass) / static_cast<double>(attempts);
}

Json MetricsReport::summary_json() const {
    Json stage_json = Json::object();
    for (const auto& [name, c] : stages) {
        stage_json[name] =
            Json{{"attempts", c.attempts}, {"pass", c.pass}, {"fail", c.fail}};
    }
    std::map<std::string, uint64_t> transfer_status;
    for (const auto& t : transfers) ++transfer_status[t.status];
    std::map<std::string, uint64_t> verdict_outcomes;
    for (const auto& v : verdicts) ++verdict_outcomes[v.outcome];
    return Json{
        {"scenario", scenario_name},
        {"seed", seed},
        {"run_ticks", run_ticks},
        {"final_state_hash", final_state_hash},
        {"stages", std::move(stage_json)},
        {"snapshot_count", snapshots.size()},
        {"transfer_count", transfers.size()},
        {"transfer_status", transfer_status},
        {"verdict_count", verdicts.size()},
        {"verdict_outcomes", verdict_outcomes},
        {"bootstrap_count", bootstraps.size()},
        {"relay_dropped", relay_dropped},
        {"late_receipts", late_receipts},
    };
}

namespace {
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

bool write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return false;
    out << text;
    return out.good();
}
}  // namespace

bool export_metrics(const MetricsReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return false;

    {
        std::string csv =
            "network,cid,capture_tick,from_height,to_height,blocks,transactions,"
            "plaintext_bytes,ciphertext_bytes\n";
        for (const auto& s : report.snapshots) {
            csv += csv_escape(s.network) + "," + s.cid + "," + std::to_string(s.capture_tick) +
                   "," + std::to_string(s.from_height) + "," + std::to_string(s.to_height) +
                   "," + std::to_string(s.block_count) + "," + std::to_string(s.tx_count) +
                   "," + std::to_string(s.plaintext_bytes) + "," +
                   std::to_string(s.ciphertext_bytes) + "\n";
        }
        if (!write_text(dir / "snapshots.csv", csv)) return false;
    }
    {
        std::string csv = "stage,attempts,pass,fail\n";
        for (const auto& [name, c] : report.stages) {
            csv += name + "," + std::to_string(c.attempts) + "," + std::to_string(c.pass) +
                   "," + std::to_string(c.fail) + "\n";
        }
        if (!write_text(dir / "stages.csv", csv)) return false;
    }
    {
        std::string csv = "set_id,kind,source,dest,initiated_tick,completed_tick,status\n";
        for (const auto& t : report.transfers) {
            csv += t.set_id_hex + "," + t.kind + "," + csv_escape(t.source) + "," +
                   csv_escape(t.dest) + "," + std::to_string(t.initiated_tick) + "," +
                   std::to_string(t.completed_tick) + "," + t.status + "\n";
        }
        if (!write_text(dir / "transfers.csv", csv)) return false;
    }
    {
        std::string csv = "tick,claimant,respondent,kind,outcome,rationale,evidence_count,origin\n";
        for (const auto& v : report.verdicts) {
            csv += std::to_string(v.tick) + "," + csv_escape(v.claimant) + "," +
                   csv_escape(v.respondent) + "," + v.kind + "," + v.outcome + "," +
                   v.rationale + "," + std::to_string(v.evidence_count) + "," + v.origin + "\n";
        }
        if (!write_text(dir / "verdicts.csv", csv)) return false;
    }
    {
        // wall-clock measurements; the one file excluded from determinism checks
        std::string csv =
            "network,cid,archived_transactions,to_height,capture_s,compress_s,encrypt_s,"
            "store_put_s,total_s,snapshots_per_min\n";
        for (const auto& s : report.snapshots) {
            const double total = s.capture_s + s.compress_s + s.encrypt_s + s.store_put_s;
            const double per_min = total > 0 ? 60.0 / total : 0.0;
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,%.6f,%.1f", s.capture_s,
                          s.compress_s, s.encrypt_s, s.store_put_s, total, per_min);
            csv += csv_escape(s.network) + "," + s.cid + "," + std::to_string(s.tx_count) +
                   "," + std::to_string(s.to_height) + "," + buf + "\n";
        }
        if (!write_text(dir / "wall_times.csv", csv)) return false;
    }
    {
        std::string csv = "network,peer,blocks,source,wall_s,tick\n";
        for (const auto& b : report.bootstraps) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", b.wall_s);
            csv += csv_escape(b.network) + "," + std::to_string(b.peer) + "," +
                   std::to_string(b.blocks) + "," + b.source + "," + buf + "," +
                   std::to_string(b.tick) + "\n";
        }
        if (!write_text(dir / "bootstraps.csv", csv)) return false;
    }
    return write_text(dir / "summary.json", report.summary_json().dump(2) + "\n");
}

}  // namespace intersnap
