// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "core/registry.hpp"
#include "core/serial.hpp"

namespace intersnap {

enum class SetStatus : uint8_t { pending, complete, incomplete };
const char* to_string(SetStatus s);

/// The atomicity unit: a cross-chain invoke paired with the destination
/// network's receipt. Status is the initiator-side lifecycle; it can only
/// move pending -> complete or pending -> incomplete, never back.
struct TransactionSet {
    Hash256 set_id{};
    std::string source_network;
    std::string dest_network;
    Transaction invoke;
    EndorsementSet invoke_endorsements;
    std::optional<Transaction> receipt;
    std::optional<EndorsementSet> receipt_endorsements;
    SetStatus status{SetStatus::pending};
    uint64_t deadline{0};

    static Hash256 compute_set_id(const Hash256& invoke_tx_id, const std::string& dest_network);
};

struct InteropMessage {
    enum class Direction : uint8_t { request, response };

    Direction direction{Direction::request};
    std::string source_network;  // initiator of the set, both directions
    std::string dest_network;
    Hash256 set_id{};
    uint64_t deadline{0};
    Transaction body;            // T_cc on requests, T_rt on responses
    EndorsementSet attestations; // responses attach the invoke endorsements as prior

    Json to_json() const;
    static std::optional<InteropMessage> from_json(const Json& j);
    std::string to_json_text() const { return dump_canonical(to_json()); }
    static std::optional<InteropMessage> from_json_text(std::string_view text);
};

enum class AttestOutcome : uint8_t { accepted, unknown_peer, bad_signature, insufficient_quorum };
const char* to_string(AttestOutcome o);

/// Pure check of a cross-boundary message: every attestation signature
/// verifies against the registry over exactly the body bytes (plus attached
/// prior endorsements), and the count meets the sender network's quorum.
AttestOutcome verify_attestations(const InteropMessage& msg, const EndorsementVerifier& keys);

/// One network's record of a set it participated in. The initiator drives
/// the pending/complete/incomplete lifecycle; the destination only logs the
/// receipt it issued (receipt_issued), since it cannot observe whether its
/// response ever landed.
struct SetRecord {
    TransactionSet set;
    bool is_source{false};
    bool receipt_issued{false};
    uint64_t initiated_tick{0};
    std::optional<uint64_t> invoke_commit_height;   // on this network's ledger
    std::optional<uint64_t> receipt_commit_height;  // on this network's ledger
    std::optional<uint64_t> completed_tick;
    std::optional<uint64_t> incomplete_tick;
    bool late_receipt{false};
    std::vector<std::pair<uint64_t, SetStatus>> status_history;  // (tick, status)
};

/// Cross-chain lifecycle per network: initiation, acceptance with receipt,
/// completion, expiry. Owns this network's set records in insertion order.
class CrossChainManager {
public:
    explicit CrossChainManager(std::string network_id) : network_id_(std::move(network_id)) {}

    enum class InitiateError : uint8_t {
        empty_payload,
        source_quorum_unreachable,
        commit_failed,
    };
    struct InitiateResult {
        bool ok{false};
        Hash256 set_id{};
        InteropMessage message;
        InitiateError err{InitiateError::commit_failed};
    };
    InitiateResult initiate(Network& source, const std::string& dest_network, Bytes payload,
                            uint64_t now, uint64_t timeout);

    enum class AcceptError : uint8_t {
        attestation_rejected,
        dest_quorum_unreachable,
        commit_failed,
    };
    struct AcceptResult {
        bool ok{false};
        InteropMessage response;
        AcceptError err{AcceptError::commit_failed};
    };
    /// Destination-side handling of a request: verify, commit T_cc with the
    /// source attestations, issue and commit the endorsed T_rt, and return
    /// the response message. Nothing is committed when verification fails.
    AcceptResult accept_and_receipt(Network& dest, const InteropMessage& request, uint64_t now,
                                    const IdentityRegistry& registry);

    enum class CompleteOutcome : uint8_t {
        completed,
        late_receipt,
        bad_attestation,
        unknown_set,
        already_complete,
    };
    /// Initiator-side handling of a response. On time and valid: T_rt is
    /// committed locally and the set turns complete. Late or invalid
    /// receipts are logged and the set is left to expire.
    CompleteOutcome complete_set(Network& source, const InteropMessage& response, uint64_t now,
                                 const IdentityRegistry& registry);

    /// Marks every pending initiated set with deadline < now incomplete.
    std::vector<Hash256> expire_sets(uint64_t now);

    /// Data-loss support: drops every record whose evidence was committed
    /// above retain_height. These records are derived from ledger data, so
    /// they vanish with it; wallets and the content store are unaffected.
    void forget_beyond(int64_t retain_height);

    const SetRecord* find(const Hash256& set_id) const;
    const std::vector<SetRecord>& records() const { return records_; }
    const std::string& network_id() const { return network_id_; }

private:
    SetRecord& emplace_record(SetRecord rec);

    std::string network_id_;
    std::vector<SetRecord> records_;
    std::map<Hash256, size_t> index_;
};

/// Verifies a full set as evidence: invoke endorsements over the invoke,
/// receipt endorsements over the receipt with the invoke endorsements
/// attached as prior, both at their networks' quorums, and the receipt
/// referencing the invoke. The auditor's and the snapshot checker's oracle.
bool verify_transaction_set(const TransactionSet& set, const EndorsementVerifier& keys);

}  // namespace intersnap
