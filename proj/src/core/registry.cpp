// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/registry.hpp"

namespace intersnap {

void IdentityRegistry::register_network(const std::string& network_id, uint32_t peer_count,
                                        const std::array<uint8_t, 32>& kx_public) {
    peer_counts_[network_id] = peer_count;
    kx_keys_[network_id] = kx_public;
}

void IdentityRegistry::register_peer(const std::string& network_id, const std::string& peer_id,
                                     const std::array<uint8_t, 32>& ed_public) {
    peer_keys_[{network_id, peer_id}] = ed_public;
}

void IdentityRegistry::register_all(const Network& net) {
    register_network(net.id(), net.config().peer_count, net.kx_keys().public_key);
    for (const auto& peer : net.peer_ids()) {
        register_peer(net.id(), peer, *net.find_peer_key(net.id(), peer));
    }
}

const std::array<uint8_t, 32>* IdentityRegistry::find_peer_key(const std::string& network_id,
                                                               const std::string& peer_id) const {
    auto it = peer_keys_.find({network_id, peer_id});
    return it == peer_keys_.end() ? nullptr : &it->second;
}

std::optional<uint32_t> IdentityRegistry::network_peer_count(const std::string& network_id) const {
    auto it = peer_counts_.find(network_id);
    if (it == peer_counts_.end()) return std::nullopt;
    return it->second;
}

const std::array<uint8_t, 32>* IdentityRegistry::network_kx_key(const std::string& network_id) const {
    auto it = kx_keys_.find(network_id);
    return it == kx_keys_.end() ? nullptr : &it->second;
}

}  // namespace intersnap
