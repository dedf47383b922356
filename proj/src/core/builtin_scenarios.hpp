// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/scenario.hpp"

namespace intersnap {

/// Packaged demonstration scenarios for the three canonical inter-network
/// fault cases:
///   1 — malicious denial of an archived receipt
///   2 — crash-induced data loss followed by a legitimate demand
///   3 — fabricated demand exploiting a counterparty crash
ScenarioConfig fault_demo_scenario(int fault_case);

/// Steady two-network baseline with no faults.
ScenarioConfig baseline_scenario();

}  // namespace intersnap
