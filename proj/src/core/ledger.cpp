// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/ledger.hpp"

#include <algorithm>
#include <set>

namespace intersnap {

uint32_t quorum_threshold(uint32_t n) {
    // smallest t with 3t >= 2n
    return (2 * n + 2) / 3;
}

const char* to_string(TxKind kind) {
    switch (kind) {
        case TxKind::local: return "local";
        case TxKind::cross_invoke: return "cross_invoke";
        case TxKind::cross_receipt: return "cross_receipt";
    }
    return "?";
}

const char* to_string(CommitError err) {
    switch (err) {
        case CommitError::insufficient_quorum: return "insufficient_quorum";
        case CommitError::bad_signature: return "bad_signature";
        case CommitError::duplicate_tx: return "duplicate_tx";
    }
    return "?";
}

const char* to_string(AttestError err) {
    switch (err) {
        case AttestError::unknown_peer: return "unknown_peer";
        case AttestError::bad_signature: return "bad_signature";
        case AttestError::insufficient_quorum: return "insufficient_quorum";
    }
    return "?";
}

Bytes Transaction::canonical_bytes() const {
    FieldWriter w;
    w.field(payload)
        .field_u8(static_cast<uint8_t>(kind))
        .field(origin_network)
        .field_u64(logical_time)
        .field(ref_tx_id);
    return w.take();
}

Hash256 Transaction::compute_id() const {
    return sha256(canonical_bytes());
}

Transaction Transaction::make(Bytes payload, TxKind kind, std::string origin_network,
                              uint64_t logical_time, const Hash256& ref) {
    Transaction tx;
    tx.payload = std::move(payload);
    tx.kind = kind;
    tx.origin_network = std::move(origin_network);
    tx.logical_time = logical_time;
    tx.ref_tx_id = ref;
    tx.tx_id = tx.compute_id();
    return tx;
}

Bytes EndorsementSet::canonical_bytes() const {
    FieldWriter w;
    w.field(subject_tx).field(signer_network);
    w.field_u64(signatures.size());
    for (const auto& e : signatures) {
        w.field(e.peer_id).field(e.signature);
    }
    if (prior) {
        w.field_u8(1).field(prior->canonical_bytes());
    } else {
        w.field_u8(0);
    }
    return w.take();
}

Bytes EndorsementSet::signed_message(const Transaction& subject) const {
    Bytes msg = subject.canonical_bytes();
    if (prior) {
        Bytes p = prior->canonical_bytes();
        msg.insert(msg.end(), p.begin(), p.end());
    }
    return msg;
}

Hash256 Block::compute_hash() const {
    FieldWriter w;
    w.field_u64(height).field(prev_hash).field_u64(transactions.size());
    for (const auto& [tx, ends] : transactions) {
        w.field(tx.canonical_bytes()).field(ends.canonical_bytes());
    }
    return sha256(w.bytes());
}

std::optional<AttestError> check_endorsements(const Transaction& tx,
                                              const EndorsementSet& ends,
                                              const EndorsementVerifier& keys) {
    if (tx.tx_id != tx.compute_id() || ends.subject_tx != tx.tx_id)
        return AttestError::bad_signature;
    const bool is_receipt = tx.kind == TxKind::cross_receipt;
    if (is_receipt == is_zero(tx.ref_tx_id))
        return AttestError::bad_signature;

    std::set<std::string> seen;
    const Bytes message = ends.signed_message(tx);
    for (const auto& e : ends.signatures) {
        if (!seen.insert(e.peer_id).second) return AttestError::bad_signature;
        const auto* key = keys.find_peer_key(ends.signer_network, e.peer_id);
        if (!key) return AttestError::unknown_peer;
        if (!verify_signature(*key, message, e.signature)) return AttestError::bad_signature;
    }
    auto n = keys.network_peer_count(ends.signer_network);
    if (!n) return AttestError::unknown_peer;
    if (ends.signatures.size() < quorum_threshold(*n))
        return AttestError::insufficient_quorum;
    return std::nullopt;
}

Hash256 Network::genesis_tag(const NetworkConfig& cfg) {
    FieldWriter w;
    w.field("intersnap-genesis").field(cfg.network_id).field_u64(cfg.genesis_seed);
    return sha256(w.bytes());
}

Network Network::bootstrap(const NetworkConfig& cfg) {
    Network net;
    net.cfg_ = cfg;
    net.peer_ids_.reserve(cfg.peer_count);
    net.peer_keys_.reserve(cfg.peer_count);
    for (uint32_t i = 0; i < cfg.peer_count; ++i) {
        net.peer_ids_.push_back("p" + std::to_string(i + 1));
        FieldWriter w;
        w.field("intersnap-peer-key").field(cfg.network_id).field_u64(i).field_u64(cfg.genesis_seed);
        net.peer_keys_.push_back(SigningKey::from_seed(sha256(w.bytes())));
    }
    {
        FieldWriter w;
        w.field("intersnap-kx-key").field(cfg.network_id).field_u64(cfg.genesis_seed);
        net.kx_keys_ = KxKeypair::from_seed(sha256(w.bytes()));
    }
    Block genesis;
    genesis.height = 0;
    genesis.prev_hash = genesis_tag(cfg);  // network tag, not a block reference
    genesis.block_hash = genesis.compute_hash();
    net.chain_.push_back(std::move(genesis));
    net.peers_.resize(cfg.peer_count);
    return net;
}

std::optional<std::vector<Block>> Network::blocks_since(int64_t from_height) const {
    const int64_t tip = static_cast<int64_t>(height());
    if (from_height < -1 || from_height > tip) return std::nullopt;
    std::vector<Block> out;
    for (int64_t h = from_height + 1; h <= tip; ++h)
        out.push_back(chain_[static_cast<size_t>(h)]);
    return out;
}

std::optional<EndorsementSet> Network::endorse(
    const Transaction& tx, std::shared_ptr<const EndorsementSet> prior) const {
    EndorsementSet ends;
    ends.subject_tx = tx.tx_id;
    ends.signer_network = id();
    ends.prior = std::move(prior);
    const Bytes message = ends.signed_message(tx);
    for (uint32_t i = 0; i < cfg_.peer_count; ++i) {
        if (peers_[i].crashed || !peers_[i].ready) continue;
        ends.signatures.push_back({peer_ids_[i], peer_keys_[i].sign(message)});
    }
    if (ends.signatures.size() < quorum()) return std::nullopt;
    return ends;
}

CommitOutcome Network::commit_transaction(const Transaction& tx, const EndorsementSet& ends) {
    if (tx_heights_.count(tx.tx_id))
        return {false, 0, CommitError::duplicate_tx};

    const EndorsementVerifier* verifier = this;
    if (ends.signer_network != id()) {
        if (!registry_) return {false, 0, CommitError::bad_signature};
        verifier = registry_;
    }
    if (auto err = check_endorsements(tx, ends, *verifier)) {
        switch (*err) {
            case AttestError::insufficient_quorum:
                return {false, 0, CommitError::insufficient_quorum};
            case AttestError::unknown_peer:
            case AttestError::bad_signature:
                return {false, 0, CommitError::bad_signature};
        }
    }

    const uint64_t target_height = height() + 1;
    pending_.emplace_back(tx, ends);
    has_pending_ = true;
    tx_heights_[tx.tx_id] = target_height;
    return {true, target_height, CommitError::insufficient_quorum};
}

std::optional<Block> Network::seal_pending() {
    if (!has_pending_) return std::nullopt;
    Block block;
    block.height = height() + 1;
    block.prev_hash = chain_.back().block_hash;
    block.transactions = std::move(pending_);
    block.block_hash = block.compute_hash();
    pending_.clear();
    has_pending_ = false;
    chain_.push_back(block);
    update_replicas();
    return block;
}

void Network::update_replicas() {
    const uint64_t h = height();
    for (auto& p : peers_) {
        if (p.crashed || p.pinned) continue;
        p.replica_height = p.lag >= h ? 0 : h - p.lag;
    }
}

std::vector<PeerInfo> Network::discover_topology() const {
    std::vector<PeerInfo> out;
    out.reserve(peers_.size());
    for (uint32_t i = 0; i < peers_.size(); ++i) {
        out.push_back({peer_ids_[i], peers_[i].replica_height,
                       peers_[i].ready && !peers_[i].crashed});
    }
    return out;
}

bool Network::has_committed(const Hash256& tx_id) const {
    return tx_heights_.count(tx_id) != 0;
}

std::optional<uint64_t> Network::commit_height(const Hash256& tx_id) const {
    auto it = tx_heights_.find(tx_id);
    if (it == tx_heights_.end()) return std::nullopt;
    return it->second;
}

void Network::crash_peer(uint32_t peer_index) {
    auto& p = peers_.at(peer_index);
    p.crashed = true;
    p.ready = false;
}

void Network::set_peer_lag(uint32_t peer_index, uint64_t behind_by) {
    auto& p = peers_.at(peer_index);
    p.lag = behind_by;
    if (!p.crashed && !p.pinned) {
        const uint64_t h = height();
        p.replica_height = behind_by >= h ? 0 : h - behind_by;
    }
}

void Network::crash_with_data_loss(int64_t retain_height) {
    if (retain_height < 0) {
        chain_.resize(1);  // deterministic genesis survives rebuild
    } else {
        const size_t keep = std::min(chain_.size(), static_cast<size_t>(retain_height) + 1);
        chain_.resize(keep);
    }
    pending_.clear();
    has_pending_ = false;
    tx_heights_.clear();
    for (const auto& block : chain_)
        for (const auto& [tx, ends] : block.transactions) tx_heights_[tx.tx_id] = block.height;
    const uint64_t h = height();
    for (auto& p : peers_) {
        p.crashed = true;
        p.ready = false;
        p.pinned = false;
        p.replica_height = std::min(p.replica_height, h);
    }
}

void Network::revive_all() {
    for (auto& p : peers_) {
        p.crashed = false;
        p.ready = true;
        p.lag = 0;
        p.pinned = false;
        p.replica_height = height();
    }
}

bool Network::any_peer_ready() const {
    return std::any_of(peers_.begin(), peers_.end(),
                       [](const PeerState& p) { return p.ready && !p.crashed; });
}

std::optional<Network::RestoreError> Network::restore_peer_from_blocks(
    uint32_t peer_index, const std::vector<Block>& blocks) {
    if (blocks.empty()) return RestoreError::chain_verification_failure;

    for (size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        if (b.block_hash != b.compute_hash()) return RestoreError::chain_verification_failure;
        if (i > 0 && (b.height != blocks[i - 1].height + 1 ||
                      b.prev_hash != blocks[i - 1].block_hash))
            return RestoreError::chain_verification_failure;
    }

    const uint64_t first = blocks.front().height;
    if (first == 0) {
        if (blocks.front().prev_hash != genesis_tag(cfg_))
            return RestoreError::chain_verification_failure;
    } else {
        // must stitch onto the surviving canonical prefix
        if (height() + 1 < first) return RestoreError::chain_verification_failure;
        if (blocks.front().prev_hash != chain_[first - 1].block_hash)
            return RestoreError::chain_verification_failure;
    }

    // overlapping range must be byte-identical to what we already hold
    for (const Block& b : blocks) {
        if (b.height <= height() && chain_[b.height].block_hash != b.block_hash)
            return RestoreError::chain_verification_failure;
    }

    for (const Block& b : blocks) {
        if (b.height == height() + 1) {
            chain_.push_back(b);
            for (const auto& [tx, ends] : b.transactions) tx_heights_[tx.tx_id] = b.height;
        }
    }

    auto& p = peers_.at(peer_index);
    p.crashed = false;
    p.ready = true;
    p.lag = 0;
    p.pinned = true;
    p.replica_height = blocks.back().height;
    return std::nullopt;
}

void Network::catch_up_peer(uint32_t peer_index) {
    auto& p = peers_.at(peer_index);
    p.crashed = false;
    p.ready = true;
    p.lag = 0;
    p.pinned = false;
    p.replica_height = height();
}

const std::array<uint8_t, 32>* Network::find_peer_key(const std::string& network_id,
                                                      const std::string& peer_id) const {
    if (network_id != id()) return nullptr;
    for (uint32_t i = 0; i < peer_ids_.size(); ++i) {
        if (peer_ids_[i] == peer_id) return &peer_keys_[i].public_key;
    }
    return nullptr;
}

std::optional<uint32_t> Network::network_peer_count(const std::string& network_id) const {
    if (network_id != id()) return std::nullopt;
    return cfg_.peer_count;
}

bool Network::verify_chain() const {
    if (chain_.empty() || chain_[0].height != 0) return false;
    if (chain_[0].prev_hash != genesis_tag(cfg_)) return false;
    for (size_t i = 0; i < chain_.size(); ++i) {
        const Block& b = chain_[i];
        if (b.height != i) return false;
        if (b.block_hash != b.compute_hash()) return false;
        if (i > 0 && b.prev_hash != chain_[i - 1].block_hash) return false;
    }
    return true;
}

}  // namespace intersnap
