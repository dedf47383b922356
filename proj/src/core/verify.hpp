// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "core/serial.hpp"

namespace intersnap {

/// Re-checks every structural invariant over a run's exported state
/// directory (world.json, summary.json, scenario.json, store/): state hash,
/// hash chains, endorsement quorums, set lifecycle legality, archive
/// decryption against wallet keys, content-store integrity, and stage
/// counter reconciliation. Returns a report document:
///   { "ok": bool, "checks": [ {"name", "pass", "detail"}, ... ] }
Json verify_run(const std::filesystem::path& run_dir);

}  // namespace intersnap
