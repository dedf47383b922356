// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/auditor.hpp"

#include <algorithm>
#include <set>

namespace intersnap {

const char* to_string(ClaimKind k) {
    switch (k) {
        case ClaimKind::demand_fulfillment: return "demand_fulfillment";
        case ClaimKind::deny_receipt: return "deny_receipt";
    }
    return "?";
}

const char* to_string(VerdictOutcome o) {
    switch (o) {
        case VerdictOutcome::claim_upheld: return "claim_upheld";
        case VerdictOutcome::claim_refuted: return "claim_refuted";
        case VerdictOutcome::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(VerdictRationale r) {
    switch (r) {
        case VerdictRationale::case1_valid_receipt: return "case1_valid_receipt";
        case VerdictRationale::case2_no_receipt: return "case2_no_receipt";
        case VerdictRationale::endorsement_failure: return "endorsement_failure";
        case VerdictRationale::span_not_covered: return "span_not_covered";
    }
    return "?";
}

const char* to_string(IngestError e) {
    switch (e) {
        case IngestError::fetch_failure: return "fetch_failure";
        case IngestError::auth_failure: return "auth_failure";
        case IngestError::malformed_archive: return "malformed_archive";
    }
    return "?";
}

Json Verdict::to_json() const {
    auto cites = Json::array();
    for (const auto& e : evidence) {
        cites.push_back(Json{
            {"network_id", e.network_id},
            {"cid", e.cid},
            {"snapshot_id", hash_to_hex(e.snapshot_id)},
            {"set_id", hash_to_hex(e.set_id)},
        });
    }
    return Json{
        {"outcome", to_string(outcome)},
        {"rationale", to_string(rationale)},
        {"evidence", std::move(cites)},
    };
}

namespace {
bool chain_links(const std::vector<Block>& blocks) {
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].block_hash != blocks[i].compute_hash()) return false;
        if (i > 0 && (blocks[i].height != blocks[i - 1].height + 1 ||
                      blocks[i].prev_hash != blocks[i - 1].block_hash))
            return false;
    }
    return true;
}

bool archive_content_valid(const SnapshotArchive& archive, const IdentityRegistry& registry) {
    for (const auto& snap : archive.snapshots) {
        if (!chain_links(snap.blocks)) return false;
        for (const auto& e : snap.completed_sets) {
            if (!verify_transaction_set(e.set, registry)) return false;
        }
        for (const auto& e : snap.incomplete_sets) {
            // flagged records carry no receipt; the invoke side must still verify
            if (check_endorsements(e.set.invoke, e.set.invoke_endorsements, registry))
                return false;
        }
    }
    return true;
}
}  // namespace

Auditor::IngestResult Auditor::ingest_snapshot(const CasStore& store,
                                               const std::string& network_id,
                                               const std::string& cid,
                                               const std::array<uint8_t, 16>& key,
                                               const IdentityRegistry& registry, uint64_t now) {
    auto fetched = store.get(cid, swarm_secret_, auditor_id_);
    if (!fetched.ok) return {false, IngestError::fetch_failure};

    auto sealed = EncryptedArchive::deserialize(fetched.bytes);
    if (!sealed) return {false, IngestError::malformed_archive};
    auto plain = decrypt_archive(*sealed, key);
    if (!plain) return {false, IngestError::auth_failure};

    auto parsed = parse_archive(*plain);
    if (!parsed.ok || parsed.archive.manifest.network_id != network_id) {
        quarantined_.push_back(cid);
        return {false, IngestError::malformed_archive};
    }
    if (!archive_content_valid(parsed.archive, registry)) {
        quarantined_.push_back(cid);
        return {false, IngestError::malformed_archive};
    }

    index_[network_id].push_back({cid, std::move(parsed.archive), now});
    return {true, IngestError::fetch_failure};
}

bool Auditor::covers(const std::string& network_id, uint64_t through_tick) const {
    auto it = index_.find(network_id);
    if (it == index_.end() || it->second.empty()) return false;

    // collect snapshot spans; archives may restate earlier snapshots
    std::vector<std::pair<int64_t, int64_t>> spans;
    uint64_t latest_tick = 0;
    for (const auto& ia : it->second) {
        for (const auto& snap : ia.archive.snapshots) {
            spans.emplace_back(snap.from_height, snap.to_height);
            latest_tick = std::max(latest_tick, snap.capture_tick);
        }
    }
    std::sort(spans.begin(), spans.end());
    int64_t reach = -1;
    for (const auto& [from, to] : spans) {
        if (from > reach) return false;  // height gap
        reach = std::max(reach, to);
    }
    return latest_tick >= through_tick;
}

std::vector<Auditor::Match> Auditor::find_matches(const std::string& network_id,
                                                  const DisputeReference& ref) const {
    std::vector<Match> out;
    auto it = index_.find(network_id);
    if (it == index_.end()) return out;
    for (const auto& ia : it->second) {
        for (const auto& snap : ia.archive.snapshots) {
            for (const auto& e : snap.completed_sets) {
                bool matched = false;
                if (ref.set_id && e.set.set_id == *ref.set_id) matched = true;
                if (!matched && ref.payload_digest &&
                    sha256(e.set.invoke.payload) == *ref.payload_digest) {
                    const uint64_t tick = e.set.invoke.logical_time;
                    matched = !ref.tick_span ||
                              (tick >= ref.tick_span->first && tick <= ref.tick_span->second);
                }
                if (matched) out.push_back({&ia, &it->first, &snap, &e});
            }
        }
    }
    return out;
}

Verdict Auditor::resolve_dispute(const DisputeCase& dispute,
                                 const IdentityRegistry& registry) const {
    Verdict v;
    const uint64_t through_tick = dispute.reference.tick_span
                                      ? dispute.reference.tick_span->second
                                      : 0;
    if (!covers(dispute.claimant, through_tick) || !covers(dispute.respondent, through_tick)) {
        v.outcome = VerdictOutcome::indeterminate;
        v.rationale = VerdictRationale::span_not_covered;
        return v;
    }

    // the set roles the claim asserts: a demand cites the respondent's receipt
    // of the claimant's invoke; a denial concerns a receipt the claimant
    // itself would have issued
    const std::string& expect_source =
        dispute.kind == ClaimKind::demand_fulfillment ? dispute.claimant : dispute.respondent;
    const std::string& expect_dest =
        dispute.kind == ClaimKind::demand_fulfillment ? dispute.respondent : dispute.claimant;

    std::vector<Match> matches;
    for (const auto* party : {&dispute.claimant, &dispute.respondent}) {
        for (auto& m : find_matches(*party, dispute.reference)) {
            if (m.entry->set.source_network == expect_source &&
                m.entry->set.dest_network == expect_dest)
                matches.push_back(m);
        }
    }

    bool any_entry = false;
    for (const auto& m : matches) {
        any_entry = true;
        if (verify_transaction_set(m.entry->set, registry)) {
            v.evidence.push_back(
                {*m.network, m.archive->cid, m.snapshot->snapshot_id, m.entry->set.set_id});
        }
    }

    if (!v.evidence.empty()) {
        v.rationale = VerdictRationale::case1_valid_receipt;
        v.outcome = dispute.kind == ClaimKind::demand_fulfillment
                        ? VerdictOutcome::claim_upheld
                        : VerdictOutcome::claim_refuted;
        return v;
    }
    if (any_entry) {
        // matching records exist but none withstands re-verification
        v.rationale = VerdictRationale::endorsement_failure;
        v.outcome = dispute.kind == ClaimKind::demand_fulfillment
                        ? VerdictOutcome::claim_refuted
                        : VerdictOutcome::indeterminate;
        return v;
    }
    // no archived receipt anywhere: any demand built on it fails; a denial
    // has nothing standing against it to adjudicate
    v.rationale = VerdictRationale::case2_no_receipt;
    v.outcome = dispute.kind == ClaimKind::demand_fulfillment ? VerdictOutcome::claim_refuted
                                                              : VerdictOutcome::indeterminate;
    return v;
}

Auditor::ConsistencyReport Auditor::cross_check_archives(
    const std::string& network_a, const std::string& network_b,
    std::pair<uint64_t, uint64_t> tick_span, const IdentityRegistry& registry) const {
    ConsistencyReport report;
    if (!covers(network_a, tick_span.second) || !covers(network_b, tick_span.second))
        return report;
    report.covered = true;

    auto collect = [&](const std::string& network_id) {
        std::map<Hash256, const SnapshotSetEntry*> sets;
        for (const auto& ia : index_.at(network_id)) {
            for (const auto& snap : ia.archive.snapshots) {
                for (const auto& e : snap.completed_sets) {
                    const uint64_t tick = e.set.invoke.logical_time;
                    if (tick >= tick_span.first && tick <= tick_span.second)
                        sets.emplace(e.set.set_id, &e);
                }
            }
        }
        return sets;
    };
    auto a_sets = collect(network_a);
    auto b_sets = collect(network_b);

    for (const auto& [id, entry] : a_sets) {
        auto it = b_sets.find(id);
        if (it == b_sets.end()) {
            report.only_in_a.push_back(id);
            continue;
        }
        const auto cryptographic_bytes = [](const TransactionSet& s) {
            FieldWriter w;
            w.field(s.invoke.canonical_bytes()).field(s.invoke_endorsements.canonical_bytes());
            if (s.receipt) w.field(s.receipt->canonical_bytes());
            if (s.receipt_endorsements) w.field(s.receipt_endorsements->canonical_bytes());
            return w.take();
        };
        if (cryptographic_bytes(entry->set) != cryptographic_bytes(it->second->set) ||
            !verify_transaction_set(entry->set, registry) ||
            !verify_transaction_set(it->second->set, registry)) {
            report.endorsement_mismatches.push_back(id);
        }
    }
    for (const auto& [id, entry] : b_sets) {
        if (!a_sets.count(id)) report.only_in_b.push_back(id);
    }
    return report;
}

Json Auditor::state_json() const {
    Json nets = Json::object();
    for (const auto& [network, archives] : index_) {
        auto arr = Json::array();
        for (const auto& ia : archives) {
            arr.push_back(Json{
                {"cid", ia.cid},
                {"from_height", ia.archive.manifest.from_height},
                {"to_height", ia.archive.manifest.to_height},
                {"snapshot_count", ia.archive.manifest.snapshot_count},
                {"ingest_tick", ia.ingest_tick},
            });
        }
        nets[network] = std::move(arr);
    }
    return Json{{"archives", std::move(nets)}, {"quarantined", quarantined_}};
}

}  // namespace intersnap
