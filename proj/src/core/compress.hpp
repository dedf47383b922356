// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/bytes.hpp"

namespace intersnap {

/// Raw DEFLATE with pinned parameters (level 6, 32 KiB window). Archive
/// bytes must be reproducible, so the parameters are not configurable.
Bytes deflate_bytes(std::span<const uint8_t> input);

/// nullopt on corrupt input.
std::optional<Bytes> inflate_bytes(std::span<const uint8_t> input);

}  // namespace intersnap
