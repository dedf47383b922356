// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "core/ledger.hpp"

namespace intersnap {

/// Cross-network identity table: every peer's signing key and every
/// network's envelope key, as exchanged between interoperating networks.
/// A simulation-wide instance stands in for the identity-agent machinery
/// of a production deployment.
class IdentityRegistry : public EndorsementVerifier {
public:
    void register_network(const std::string& network_id, uint32_t peer_count,
                          const std::array<uint8_t, 32>& kx_public);
    void register_peer(const std::string& network_id, const std::string& peer_id,
                       const std::array<uint8_t, 32>& ed_public);
    /// Registers a whole network's peers and envelope key in one call.
    void register_all(const Network& net);

    const std::array<uint8_t, 32>* find_peer_key(const std::string& network_id,
                                                 const std::string& peer_id) const override;
    std::optional<uint32_t> network_peer_count(const std::string& network_id) const override;
    const std::array<uint8_t, 32>* network_kx_key(const std::string& network_id) const;

    const std::map<std::string, uint32_t>& networks() const { return peer_counts_; }
    const std::map<std::pair<std::string, std::string>, std::array<uint8_t, 32>>& peers() const {
        return peer_keys_;
    }

private:
    std::map<std::pair<std::string, std::string>, std::array<uint8_t, 32>> peer_keys_;
    std::map<std::string, uint32_t> peer_counts_;
    std::map<std::string, std::array<uint8_t, 32>> kx_keys_;
};

}  // namespace intersnap
