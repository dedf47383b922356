// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/auditor.hpp"
#include "core/snapshot.hpp"

namespace intersnap {

struct RelayConfig {
    uint64_t latency{1};
    uint64_t jitter{0};      // extra delivery delay drawn uniformly from [0, jitter]
    double drop_rate{0.0};
};

struct NetworkScenario {
    NetworkConfig net;
    SchedulerConfig scheduler;
    std::vector<std::string> share_with;  // empty: every other network
};

/// Declarative per-tick submissions: local_per_tick local transactions each
/// tick in [from_tick, to_tick], plus one cross-chain transaction to
/// cross_dest every cross_every ticks.
struct WorkloadEntry {
    std::string network;
    uint64_t from_tick{1};
    uint64_t to_tick{0};
    uint32_t local_per_tick{0};
    uint32_t payload_bytes{1024};
    std::string cross_dest;
    uint64_t cross_every{0};
};

struct FaultSpec {
    enum class Kind : uint8_t {
        peer_crash,
        peer_lag,
        network_crash_with_data_loss,
        relay_outage,
        malicious_fabrication,
        receipt_denial,
    };
    Kind kind{Kind::peer_crash};
    uint64_t at_tick{0};
    std::string network;
    std::string target;            // fabrication victim
    uint32_t peer{0};
    uint64_t behind_by{0};
    int64_t retain_height{-1};
    std::optional<uint64_t> revive_tick;
    bool bootstrap_from_store{false};  // on revive, restore from published archives
    uint64_t from_tick{0};
    uint64_t to_tick{0};               // relay outage window, inclusive
    Bytes payload;                     // fabricated claim payload
    uint64_t claim_tick{0};            // tick the fabricated claim is backdated to
};
const char* to_string(FaultSpec::Kind k);

struct DisputeSpec {
    enum class TargetMode : uint8_t { latest_completed, set_index, fabricated, digest };
    uint64_t at_tick{0};
    std::string claimant;
    std::string respondent;
    ClaimKind kind{ClaimKind::demand_fulfillment};
    TargetMode mode{TargetMode::latest_completed};
    uint32_t index{0};
    Hash256 payload_digest{};
    std::pair<uint64_t, uint64_t> span{0, 0};
};

struct ScenarioConfig {
    int schema{1};
    std::string name;
    uint64_t run_ticks{100};
    uint64_t cross_chain_timeout{30};
    RelayConfig relay;
    uint64_t auditor_delivery_latency{1};
    uint32_t kdf_iterations{65536};
    std::vector<NetworkScenario> networks;
    std::vector<WorkloadEntry> workload;
    std::vector<FaultSpec> faults;
    std::vector<DisputeSpec> disputes;

    Json to_json() const;
    /// Empty when the config is well-formed; otherwise one message per problem.
    std::vector<std::string> validate() const;
};

struct ScenarioParseResult {
    bool ok{false};
    ScenarioConfig config;
    std::string error;
};
ScenarioParseResult parse_scenario(std::string_view json_text);

}  // namespace intersnap
