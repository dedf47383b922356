// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/bytes.hpp"
#include "core/hash.hpp"
#include "core/sig.hpp"

namespace intersnap {

/// Smallest endorser count t with t >= 2n/3 for an n-peer network.
uint32_t quorum_threshold(uint32_t n);

enum class TxKind : uint8_t { local = 0, cross_invoke = 1, cross_receipt = 2 };
const char* to_string(TxKind kind);

struct Transaction {
    Hash256 tx_id{};
    Bytes payload;
    TxKind kind{TxKind::local};
    std::string origin_network;
    uint64_t logical_time{0};
    /// For cross_receipt transactions: the id of the cross_invoke being
    /// acknowledged. All-zero otherwise.
    Hash256 ref_tx_id{};

    /// Length-prefixed field concatenation, declaration order, tx_id excluded.
    /// These are the bytes that get hashed into tx_id and signed by endorsers.
    Bytes canonical_bytes() const;
    Hash256 compute_id() const;

    static Transaction make(Bytes payload, TxKind kind, std::string origin_network,
                            uint64_t logical_time, const Hash256& ref = Hash256{});
};

struct Endorsement {
    std::string peer_id;
    Bytes signature;
};

/// Peer signatures from one network over a transaction. Receipt endorsements
/// carry the endorsement set they were issued against (the invoke side's),
/// and the signatures cover those prior bytes as well, so swapping in a
/// different invoke endorsement set breaks verification.
struct EndorsementSet {
    Hash256 subject_tx{};
    std::string signer_network;
    std::vector<Endorsement> signatures;
    std::shared_ptr<const EndorsementSet> prior;

    Bytes canonical_bytes() const;
    Bytes signed_message(const Transaction& subject) const;
};

struct Block {
    uint64_t height{0};
    Hash256 prev_hash{};
    std::vector<std::pair<Transaction, EndorsementSet>> transactions;
    Hash256 block_hash{};

    Hash256 compute_hash() const;
};

enum class CommitError : uint8_t {
    insufficient_quorum,
    bad_signature,
    duplicate_tx,
};
const char* to_string(CommitError err);

struct CommitOutcome {
    bool committed{false};
    uint64_t height{0};  // block the transaction lands in when committed
    CommitError reason{CommitError::insufficient_quorum};
};

enum class AttestError : uint8_t { unknown_peer, bad_signature, insufficient_quorum };
const char* to_string(AttestError err);

/// Key lookup interface used when validating endorsements. A Network
/// satisfies it for its own peers; the cross-network identity registry
/// satisfies it for foreign ones.
class EndorsementVerifier {
public:
    virtual ~EndorsementVerifier() = default;
    virtual const std::array<uint8_t, 32>* find_peer_key(const std::string& network_id,
                                                         const std::string& peer_id) const = 0;
    virtual std::optional<uint32_t> network_peer_count(const std::string& network_id) const = 0;
};

/// Full endorsement check: subject linkage, per-signature verification
/// (including attached prior sets, recursively), no duplicate signers, and
/// the signer network's quorum. Returns nullopt when everything holds.
std::optional<AttestError> check_endorsements(const Transaction& tx,
                                              const EndorsementSet& ends,
                                              const EndorsementVerifier& keys);

struct NetworkConfig {
    std::string network_id;
    uint32_t peer_count{0};
    uint64_t genesis_seed{0};
};

struct PeerInfo {
    std::string peer_id;
    uint64_t replica_height{0};
    bool ready{true};
};

/// One permissioned network: peer keys, the canonical append-only chain, and
/// per-peer replica state. Commits within one logical tick batch into a
/// single block, sealed by seal_pending().
class Network : public EndorsementVerifier {
public:
    static Network bootstrap(const NetworkConfig& cfg);

    const NetworkConfig& config() const { return cfg_; }
    const std::string& id() const { return cfg_.network_id; }
    uint32_t quorum() const { return quorum_threshold(cfg_.peer_count); }

    uint64_t height() const { return chain_.back().height; }
    const std::vector<Block>& chain() const { return chain_; }
    /// Blocks with height > from_height in order; nullopt when
    /// from_height > |L| (out of range). from_height = -1 includes genesis.
    std::optional<std::vector<Block>> blocks_since(int64_t from_height) const;

    /// Sign tx with every live peer. Returns nullopt when fewer than quorum
    /// peers are up to sign (source_quorum_unreachable and friends).
    std::optional<EndorsementSet> endorse(const Transaction& tx,
                                          std::shared_ptr<const EndorsementSet> prior = nullptr) const;

    CommitOutcome commit_transaction(const Transaction& tx, const EndorsementSet& ends);
    /// Seals the open batch into one block and advances live replicas.
    /// Returns the sealed block, or nullopt when nothing was pending.
    std::optional<Block> seal_pending();

    std::vector<PeerInfo> discover_topology() const;
    bool has_committed(const Hash256& tx_id) const;
    /// Height of the sealed block containing tx_id, if any.
    std::optional<uint64_t> commit_height(const Hash256& tx_id) const;

    // fault surface, driven by the harness
    void crash_peer(uint32_t peer_index);
    void set_peer_lag(uint32_t peer_index, uint64_t behind_by);
    void crash_with_data_loss(int64_t retain_height);
    void revive_all();
    bool any_peer_ready() const;

    // bootstrap-from-archive support
    enum class RestoreError : uint8_t { chain_verification_failure };
    /// Verifies the given blocks as a chain segment consistent with (and
    /// possibly extending) the canonical chain, adopts any extension, and
    /// pins the peer's replica at the restored height without marking it
    /// caught up.
    std::optional<RestoreError> restore_peer_from_blocks(uint32_t peer_index,
                                                         const std::vector<Block>& blocks);
    /// Replays canonical blocks past the replica height (blocks_since), i.e.
    /// the local catch-up path after a restore.
    void catch_up_peer(uint32_t peer_index);

    const std::vector<std::string>& peer_ids() const { return peer_ids_; }
    const KxKeypair& kx_keys() const { return kx_keys_; }

    // EndorsementVerifier for this network's own peers
    const std::array<uint8_t, 32>* find_peer_key(const std::string& network_id,
                                                 const std::string& peer_id) const override;
    std::optional<uint32_t> network_peer_count(const std::string& network_id) const override;

    /// Registry consulted for endorsements signed by foreign networks; not
    /// owned. May stay null in single-network setups.
    void set_registry(const EndorsementVerifier* registry) { registry_ = registry; }

    /// True when every stored block_hash matches a recomputation over stored
    /// contents and every prev_hash links. The tamper-evidence check.
    bool verify_chain() const;

private:
    Network() = default;

    struct PeerState {
        uint64_t replica_height{0};
        bool ready{true};
        bool crashed{false};
        uint64_t lag{0};
        bool pinned{false};  // replica held at a restored height until catch-up
    };

    static Hash256 genesis_tag(const NetworkConfig& cfg);
    void update_replicas();

    NetworkConfig cfg_;
    std::vector<std::string> peer_ids_;
    std::vector<SigningKey> peer_keys_;
    KxKeypair kx_keys_;
    std::vector<Block> chain_;
    std::map<Hash256, uint64_t> tx_heights_;
    std::vector<PeerState> peers_;
    std::vector<std::pair<Transaction, EndorsementSet>> pending_;
    bool has_pending_{false};
    const EndorsementVerifier* registry_{nullptr};
};

}  // namespace intersnap
