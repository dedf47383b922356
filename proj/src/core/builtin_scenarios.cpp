// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/builtin_scenarios.hpp"

#include <stdexcept>

namespace intersnap {

namespace {
ScenarioConfig two_network_base(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.run_ticks = 120;
    cfg.cross_chain_timeout = 20;
    cfg.relay = {1, 0, 0.0};
    cfg.auditor_delivery_latency = 1;
    cfg.kdf_iterations = 512;  // keep demo runs snappy

    NetworkScenario n1;
    n1.net = {"N1", 4, 1001};
    n1.scheduler = {2.0, 5.0, 5};  // threshold 10, polled every 5 ticks
    NetworkScenario n2;
    n2.net = {"N2", 3, 2002};
    n2.scheduler = {2.0, 5.0, 5};
    cfg.networks = {n1, n2};

    cfg.workload = {
        {"N1", 1, 110, 2, 256, "N2", 10},
        {"N2", 1, 110, 2, 256, "", 0},
    };
    return cfg;
}
}  // namespace

ScenarioConfig baseline_scenario() {
    auto cfg = two_network_base("baseline");
    cfg.run_ticks = 200;
    cfg.workload[0].to_tick = 190;
    cfg.workload[1].to_tick = 190;
    return cfg;
}

ScenarioConfig fault_demo_scenario(int fault_case) {
    switch (fault_case) {
        case 1: {
            // N2 received assets and issued receipts, then denies one; its own
            // archived signatures defeat the denial
            auto cfg = two_network_base("fault-demo-1-malicious-denial");
            FaultSpec denial;
            denial.kind = FaultSpec::Kind::receipt_denial;
            denial.network = "N2";
            denial.at_tick = 60;
            cfg.faults = {denial};
            return cfg;
        }
        case 2: {
            // N2 loses all ledger data; N1's demand over a pre-crash exchange
            // is backed by archives from both sides
            auto cfg = two_network_base("fault-demo-2-data-loss-legitimate-claim");
            FaultSpec crash;
            crash.kind = FaultSpec::Kind::network_crash_with_data_loss;
            crash.network = "N2";
            crash.at_tick = 70;
            crash.retain_height = -1;
            crash.revive_tick = 80;
            crash.bootstrap_from_store = true;
            cfg.faults = {crash};

            DisputeSpec demand;
            demand.at_tick = 100;
            demand.claimant = "N1";
            demand.respondent = "N2";
            demand.kind = ClaimKind::demand_fulfillment;
            demand.mode = DisputeSpec::TargetMode::set_index;
            demand.index = 0;
            cfg.disputes = {demand};
            return cfg;
        }
        case 3: {
            // N2 crashes and loses history; N1 fabricates a backdated claim
            // and demands dues, but no archive anywhere holds a receipt
            auto cfg = two_network_base("fault-demo-3-fabricated-demand");
            FaultSpec crash;
            crash.kind = FaultSpec::Kind::network_crash_with_data_loss;
            crash.network = "N2";
            crash.at_tick = 50;
            crash.retain_height = 2;
            crash.revive_tick = 60;
            crash.bootstrap_from_store = true;

            FaultSpec fabrication;
            fabrication.kind = FaultSpec::Kind::malicious_fabrication;
            fabrication.network = "N1";
            fabrication.target = "N2";
            fabrication.at_tick = 70;
            fabrication.payload = to_bytes("overdue settlement 77131");
            fabrication.claim_tick = 20;
            cfg.faults = {crash, fabrication};

            DisputeSpec demand;
            demand.at_tick = 90;
            demand.claimant = "N1";
            demand.respondent = "N2";
            demand.kind = ClaimKind::demand_fulfillment;
            demand.mode = DisputeSpec::TargetMode::fabricated;
            demand.index = 0;
            cfg.disputes = {demand};
            return cfg;
        }
        default:
            throw std::invalid_argument("fault case must be 1, 2, or 3");
    }
}

}  // namespace intersnap
