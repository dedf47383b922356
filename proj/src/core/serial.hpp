// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include "core/ledger.hpp"

namespace intersnap {

/// Canonical structured-text encoding used for wire messages, archive
/// contents, and golden files: nlohmann::json with its default sorted-key
/// object storage, byte fields base64-encoded, hashes as lowercase hex.
using Json = nlohmann::json;

Json tx_to_json(const Transaction& tx);
std::optional<Transaction> tx_from_json(const Json& j);

Json endorsements_to_json(const EndorsementSet& ends);
std::optional<EndorsementSet> endorsements_from_json(const Json& j);

Json block_to_json(const Block& block);
/// Validates structure, recomputes tx ids and the block hash; any mismatch
/// parses as nullopt.
std::optional<Block> block_from_json(const Json& j);

std::string dump_canonical(const Json& j);

}  // namespace intersnap
