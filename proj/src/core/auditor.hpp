// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/archive_crypto.hpp"
#include "core/cas_store.hpp"
#include "core/snapshot.hpp"

namespace intersnap {

enum class ClaimKind : uint8_t { demand_fulfillment, deny_receipt };
const char* to_string(ClaimKind k);

/// Content-addressed dispute reference: either the set id, or the invoke
/// payload digest plus the tick span the claimant says it happened in.
struct DisputeReference {
    std::optional<Hash256> set_id;
    std::optional<Hash256> payload_digest;
    std::optional<std::pair<uint64_t, uint64_t>> tick_span;  // inclusive
};

struct DisputeCase {
    std::string claimant;
    std::string respondent;
    ClaimKind kind{ClaimKind::demand_fulfillment};
    DisputeReference reference;
};

enum class VerdictOutcome : uint8_t { claim_upheld, claim_refuted, indeterminate };
const char* to_string(VerdictOutcome o);

enum class VerdictRationale : uint8_t {
    case1_valid_receipt,
    case2_no_receipt,
    endorsement_failure,
    span_not_covered,
};
const char* to_string(VerdictRationale r);

struct EvidenceCitation {
    std::string network_id;
    std::string cid;
    Hash256 snapshot_id{};
    Hash256 set_id{};
};

struct Verdict {
    VerdictOutcome outcome{VerdictOutcome::indeterminate};
    VerdictRationale rationale{VerdictRationale::span_not_covered};
    std::vector<EvidenceCitation> evidence;

    Json to_json() const;
};

enum class IngestError : uint8_t { fetch_failure, auth_failure, malformed_archive };
const char* to_string(IngestError e);

/// Independent, honest auditor. Holds every network's published archives and
/// resolves disputes by searching them for dual-endorsed receipts: a valid
/// archived receipt defeats denial; absence of one defeats any demand.
class Auditor {
public:
    Auditor(std::string auditor_id, std::array<uint8_t, 32> swarm_secret)
        : auditor_id_(std::move(auditor_id)), swarm_secret_(swarm_secret) {}

    struct IngestResult {
        bool ok{false};
        IngestError err{IngestError::fetch_failure};
    };
    /// Fetches the archive (CID re-verified by the store), decrypts it with
    /// the envelope-delivered key, parses it, and re-verifies every archived
    /// endorsement before indexing. Anything that fails verification is
    /// quarantined and never becomes evidence.
    IngestResult ingest_snapshot(const CasStore& store, const std::string& network_id,
                                 const std::string& cid, const std::array<uint8_t, 16>& key,
                                 const IdentityRegistry& registry, uint64_t now);

    Verdict resolve_dispute(const DisputeCase& dispute, const IdentityRegistry& registry) const;

    struct ConsistencyReport {
        bool covered{false};
        std::vector<Hash256> only_in_a;
        std::vector<Hash256> only_in_b;
        std::vector<Hash256> endorsement_mismatches;
    };
    ConsistencyReport cross_check_archives(const std::string& network_a,
                                           const std::string& network_b,
                                           std::pair<uint64_t, uint64_t> tick_span,
                                           const IdentityRegistry& registry) const;

    struct IngestedArchive {
        std::string cid;
        SnapshotArchive archive;
        uint64_t ingest_tick{0};
    };
    const std::map<std::string, std::vector<IngestedArchive>>& index() const { return index_; }
    const std::vector<std::string>& quarantined() const { return quarantined_; }

    Json state_json() const;

private:
    struct Match {
        const IngestedArchive* archive;
        const std::string* network;
        const Snapshot* snapshot;
        const SnapshotSetEntry* entry;
    };
    std::vector<Match> find_matches(const std::string& network_id,
                                    const DisputeReference& ref) const;
    /// Archives for network ingested, height-contiguous from genesis, and
    /// current through the given tick.
    bool covers(const std::string& network_id, uint64_t through_tick) const;

    std::string auditor_id_;
    std::array<uint8_t, 32> swarm_secret_;
    std::map<std::string, std::vector<IngestedArchive>> index_;
    std::vector<std::string> quarantined_;
};

}  // namespace intersnap
