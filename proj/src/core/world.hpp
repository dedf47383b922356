// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <filesystem>

#include "core/auditor.hpp"
#include "core/metrics.hpp"
#include "core/scenario.hpp"

namespace intersnap {

/// Deterministic discrete-event world. One instance per scenario run,
/// strictly single-threaded; identical (config, seed) pairs produce
/// identical event traces and final state hashes.
///
/// Tick processing order: queued deliveries/ingests/revives (FIFO by
/// insertion), fault triggers, workload submissions, scheduler polls,
/// dispute resolutions, set expiry, block sealing.
class World {
public:
    World(ScenarioConfig cfg, uint64_t seed, std::filesystem::path out_dir = {});

    void step();
    void run_until(uint64_t tick);
    void run();

    uint64_t now() const { return tick_; }
    const ScenarioConfig& config() const { return cfg_; }

    /// Schedules (or immediately applies, when due) an additional fault.
    /// Returns false for a fault that references unknown targets.
    bool inject_fault(const FaultSpec& fault);

    enum class BootstrapError : uint8_t {
        fetch_failure,
        integrity_mismatch,
        auth_failure,
        chain_verification_failure,
    };
    struct BootstrapOutcome {
        bool ok{false};
        BootstrapError err{BootstrapError::fetch_failure};
        uint64_t restored_height{0};
        double wall_s{0};
    };
    /// Rebuilds a peer replica from one archived snapshot chain fetched out
    /// of the content store.
    BootstrapOutcome bootstrap_peer_from_archive(const std::string& network_id, uint32_t peer,
                                                 const std::string& cid,
                                                 const std::array<uint8_t, 16>& key);
    /// The local path: re-verify the surviving canonical chain and sync the
    /// peer to it. Baseline for comparing store-based recovery cost.
    BootstrapOutcome bootstrap_peer_from_replica(const std::string& network_id, uint32_t peer);

    struct PublishedArchive {
        std::string cid;
        DerivedKey key;
        int64_t from_height{-1};
        int64_t to_height{0};
        Hash256 snapshot_id{};
        uint64_t publish_tick{0};
    };

    struct FabricationRecord {
        std::string fabricator;
        std::string victim;
        Hash256 payload_digest{};
        uint64_t claim_tick{0};
        uint64_t committed_tick{0};
    };

    Network& network(const std::string& id);
    CrossChainManager& manager(const std::string& id);
    KeyWallet& wallet(const std::string& id);
    const std::vector<PublishedArchive>& published(const std::string& id) const;
    const std::vector<FabricationRecord>& fabrications() const { return fabrications_; }
    CasStore& store() { return store_; }
    Auditor& auditor() { return auditor_; }
    const IdentityRegistry& registry() const { return registry_; }
    DetRng& rng() { return rng_; }
    const std::vector<VerdictMetricRow>& verdicts() const;

    Json state_json() const;
    std::string state_hash() const;
    MetricsReport report() const;
    /// Writes world.json, metrics CSVs, and summary.json under out_dir.
    bool export_run() const;

private:
    struct NetworkRuntime {
        NetworkScenario scenario;
        Network net;
        CrossChainManager xchain;
        SchedulerState sched;
        int64_t last_capture_tick{-1};
        KeyWallet wallet;
        std::vector<PublishedArchive> published;
        std::map<std::string, std::array<uint8_t, 16>> received_handles;  // cid -> key

        NetworkRuntime(NetworkScenario sc)
            : scenario(sc),
              net(Network::bootstrap(sc.net)),
              xchain(sc.net.network_id),
              sched{sc.net.network_id, -1} {}
    };

    struct QueuedEvent {
        enum class Kind : uint8_t { relay_deliver, auditor_ingest, revive };
        Kind kind{Kind::relay_deliver};
        InteropMessage msg;
        std::string network;
        std::string cid;
        std::array<uint8_t, 16> key{};
        bool bootstrap{false};
    };

    NetworkRuntime& runtime(const std::string& id);
    const NetworkRuntime& runtime(const std::string& id) const;
    void schedule(uint64_t tick, QueuedEvent ev);
    void process_queued(const QueuedEvent& ev);
    void apply_fault(const FaultSpec& fault);
    void run_workload();
    void run_polls();
    void run_pipeline(NetworkRuntime& rt);
    void run_disputes();
    void resolve_and_record(const DisputeCase& dc, const std::string& origin);
    bool relay_send(InteropMessage msg);
    bool relay_down_at(uint64_t tick) const;
    std::vector<std::string> share_targets(const NetworkRuntime& rt) const;
    void revive_network(const std::string& id, bool bootstrap);

    ScenarioConfig cfg_;
    uint64_t seed_;
    std::filesystem::path out_dir_;
    uint64_t tick_{0};
    uint64_t next_seq_{0};
    DetRng rng_;
    std::map<std::string, NetworkRuntime> nets_;
    IdentityRegistry registry_;
    SwarmKey swarm_;
    CasStore store_;
    Auditor auditor_;
    std::map<std::pair<uint64_t, uint64_t>, QueuedEvent> queue_;
    std::multimap<uint64_t, FaultSpec> faults_;
    std::multimap<uint64_t, DisputeSpec> disputes_;
    std::vector<std::pair<uint64_t, uint64_t>> relay_outages_;
    std::vector<FabricationRecord> fabrications_;
    MetricsCollector metrics_;
    std::vector<VerdictMetricRow> verdict_rows_;
};

}  // namespace intersnap
