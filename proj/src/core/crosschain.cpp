// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/crosschain.hpp"

namespace intersnap {

const char* to_string(SetStatus s) {
    switch (s) {
        case SetStatus::pending: return "pending";
        case SetStatus::complete: return "complete";
        case SetStatus::incomplete: return "incomplete";
    }
    return "?";
}

const char* to_string(AttestOutcome o) {
    switch (o) {
        case AttestOutcome::accepted: return "accepted";
        case AttestOutcome::unknown_peer: return "unknown_peer";
        case AttestOutcome::bad_signature: return "bad_signature";
        case AttestOutcome::insufficient_quorum: return "insufficient_quorum";
    }
    return "?";
}

Hash256 TransactionSet::compute_set_id(const Hash256& invoke_tx_id,
                                       const std::string& dest_network) {
    FieldWriter w;
    w.field("intersnap-set").field(invoke_tx_id).field(dest_network);
    return sha256(w.bytes());
}

Json InteropMessage::to_json() const {
    return Json{
        {"direction", direction == Direction::request ? "request" : "response"},
        {"source_network", source_network},
        {"dest_network", dest_network},
        {"set_id", hash_to_hex(set_id)},
        {"deadline", deadline},
        {"body", tx_to_json(body)},
        {"attestations", endorsements_to_json(attestations)},
    };
}

std::optional<InteropMessage> InteropMessage::from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    for (const char* key :
         {"direction", "source_network", "dest_network", "set_id", "deadline", "body",
          "attestations"}) {
        if (!j.contains(key)) return std::nullopt;
    }
    InteropMessage msg;
    const auto dir = j["direction"].get<std::string>();
    if (dir == "request")
        msg.direction = Direction::request;
    else if (dir == "response")
        msg.direction = Direction::response;
    else
        return std::nullopt;
    msg.source_network = j["source_network"].get<std::string>();
    msg.dest_network = j["dest_network"].get<std::string>();
    auto set_id = hash_from_hex(j["set_id"].get<std::string>());
    if (!set_id || !j["deadline"].is_number_unsigned()) return std::nullopt;
    msg.set_id = *set_id;
    msg.deadline = j["deadline"].get<uint64_t>();
    auto body = tx_from_json(j["body"]);
    auto ends = endorsements_from_json(j["attestations"]);
    if (!body || !ends) return std::nullopt;
    msg.body = std::move(*body);
    msg.attestations = std::move(*ends);
    return msg;
}

std::optional<InteropMessage> InteropMessage::from_json_text(std::string_view text) {
    auto doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) return std::nullopt;
    return from_json(doc);
}

AttestOutcome verify_attestations(const InteropMessage& msg, const EndorsementVerifier& keys) {
    // structural expectations per direction
    if (msg.direction == InteropMessage::Direction::request) {
        if (msg.body.kind != TxKind::cross_invoke ||
            msg.attestations.signer_network != msg.source_network || msg.attestations.prior)
            return AttestOutcome::bad_signature;
    } else {
        if (msg.body.kind != TxKind::cross_receipt ||
            msg.attestations.signer_network != msg.dest_network || !msg.attestations.prior)
            return AttestOutcome::bad_signature;
    }
    auto err = check_endorsements(msg.body, msg.attestations, keys);
    if (!err) return AttestOutcome::accepted;
    switch (*err) {
        case AttestError::unknown_peer: return AttestOutcome::unknown_peer;
        case AttestError::bad_signature: return AttestOutcome::bad_signature;
        case AttestError::insufficient_quorum: return AttestOutcome::insufficient_quorum;
    }
    return AttestOutcome::bad_signature;
}

SetRecord& CrossChainManager::emplace_record(SetRecord rec) {
    index_[rec.set.set_id] = records_.size();
    records_.push_back(std::move(rec));
    return records_.back();
}

const SetRecord* CrossChainManager::find(const Hash256& set_id) const {
    auto it = index_.find(set_id);
    return it == index_.end() ? nullptr : &records_[it->second];
}

CrossChainManager::InitiateResult CrossChainManager::initiate(Network& source,
                                                              const std::string& dest_network,
                                                              Bytes payload, uint64_t now,
                                                              uint64_t timeout) {
    InitiateResult out;
    if (payload.empty()) {
        out.err = InitiateError::empty_payload;
        return out;
    }
    Transaction invoke =
        Transaction::make(std::move(payload), TxKind::cross_invoke, source.id(), now);
    auto ends = source.endorse(invoke);
    if (!ends) {
        out.err = InitiateError::source_quorum_unreachable;
        return out;
    }
    auto commit = source.commit_transaction(invoke, *ends);
    if (!commit.committed) {
        out.err = InitiateError::commit_failed;
        return out;
    }

    SetRecord rec;
    rec.set.set_id = TransactionSet::compute_set_id(invoke.tx_id, dest_network);
    rec.set.source_network = source.id();
    rec.set.dest_network = dest_network;
    rec.set.invoke = invoke;
    rec.set.invoke_endorsements = *ends;
    rec.set.status = SetStatus::pending;
    rec.set.deadline = now + timeout;
    rec.is_source = true;
    rec.initiated_tick = now;
    rec.invoke_commit_height = commit.height;
    rec.status_history.emplace_back(now, SetStatus::pending);
    auto& stored = emplace_record(std::move(rec));

    out.ok = true;
    out.set_id = stored.set.set_id;
    out.message.direction = InteropMessage::Direction::request;
    out.message.source_network = stored.set.source_network;
    out.message.dest_network = dest_network;
    out.message.set_id = stored.set.set_id;
    out.message.deadline = stored.set.deadline;
    out.message.body = stored.set.invoke;
    out.message.attestations = stored.set.invoke_endorsements;
    return out;
}

CrossChainManager::AcceptResult CrossChainManager::accept_and_receipt(
    Network& dest, const InteropMessage& request, uint64_t now,
    const IdentityRegistry& registry) {
    AcceptResult out;
    if (verify_attestations(request, registry) != AttestOutcome::accepted ||
        request.dest_network != dest.id()) {
        out.err = AcceptError::attestation_rejected;
        return out;
    }
    // receipt first: endorse before committing anything, so a dead quorum
    // leaves no partial state
    Transaction receipt;
    {
        FieldWriter w;
        w.field("intersnap-receipt").field(request.set_id);
        receipt = Transaction::make(w.take(), TxKind::cross_receipt, dest.id(), now,
                                    request.body.tx_id);
    }
    auto prior = std::make_shared<EndorsementSet>(request.attestations);
    auto receipt_ends = dest.endorse(receipt, prior);
    if (!receipt_ends) {
        out.err = AcceptError::dest_quorum_unreachable;
        return out;
    }

    auto invoke_commit = dest.commit_transaction(request.body, request.attestations);
    if (!invoke_commit.committed) {
        out.err = AcceptError::commit_failed;
        return out;
    }
    auto receipt_commit = dest.commit_transaction(receipt, *receipt_ends);
    if (!receipt_commit.committed) {
        out.err = AcceptError::commit_failed;
        return out;
    }

    SetRecord rec;
    rec.set.set_id = request.set_id;
    rec.set.source_network = request.source_network;
    rec.set.dest_network = dest.id();
    rec.set.invoke = request.body;
    rec.set.invoke_endorsements = request.attestations;
    rec.set.receipt = receipt;
    rec.set.receipt_endorsements = *receipt_ends;
    rec.set.deadline = request.deadline;
    rec.is_source = false;
    rec.receipt_issued = true;
    rec.initiated_tick = now;
    rec.invoke_commit_height = invoke_commit.height;
    rec.receipt_commit_height = receipt_commit.height;
    emplace_record(std::move(rec));

    out.ok = true;
    out.response.direction = InteropMessage::Direction::response;
    out.response.source_network = request.source_network;
    out.response.dest_network = dest.id();
    out.response.set_id = request.set_id;
    out.response.deadline = request.deadline;
    out.response.body = receipt;
    out.response.attestations = *receipt_ends;
    return out;
}

CrossChainManager::CompleteOutcome CrossChainManager::complete_set(
    Network& source, const InteropMessage& response, uint64_t now,
    const IdentityRegistry& registry) {
    auto it = index_.find(response.set_id);
    if (it == index_.end()) return CompleteOutcome::unknown_set;
    SetRecord& rec = records_[it->second];
    if (!rec.is_source) return CompleteOutcome::unknown_set;
    if (rec.set.status == SetStatus::complete) return CompleteOutcome::already_complete;

    // the receipt must acknowledge our invoke and cover the exact endorsement
    // set we dispatched
    if (verify_attestations(response, registry) != AttestOutcome::accepted ||
        response.body.ref_tx_id != rec.set.invoke.tx_id ||
        response.attestations.signer_network != rec.set.dest_network ||
        !response.attestations.prior ||
        response.attestations.prior->canonical_bytes() !=
            rec.set.invoke_endorsements.canonical_bytes()) {
        return CompleteOutcome::bad_attestation;
    }

    if (rec.set.status == SetStatus::incomplete || now > rec.set.deadline) {
        rec.late_receipt = true;
        return CompleteOutcome::late_receipt;
    }

    auto commit = source.commit_transaction(response.body, response.attestations);
    if (!commit.committed) return CompleteOutcome::bad_attestation;

    rec.set.receipt = response.body;
    rec.set.receipt_endorsements = response.attestations;
    rec.set.status = SetStatus::complete;
    rec.receipt_commit_height = commit.height;
    rec.completed_tick = now;
    rec.status_history.emplace_back(now, SetStatus::complete);
    return CompleteOutcome::completed;
}

std::vector<Hash256> CrossChainManager::expire_sets(uint64_t now) {
    std::vector<Hash256> expired;
    for (auto& rec : records_) {
        if (!rec.is_source || rec.set.status != SetStatus::pending) continue;
        if (rec.set.deadline < now) {
            rec.set.status = SetStatus::incomplete;
            rec.incomplete_tick = now;
            rec.status_history.emplace_back(now, SetStatus::incomplete);
            expired.push_back(rec.set.set_id);
        }
    }
    return expired;
}

void CrossChainManager::forget_beyond(int64_t retain_height) {
    std::vector<SetRecord> kept;
    for (auto& rec : records_) {
        const bool invoke_lost =
            rec.invoke_commit_height &&
            static_cast<int64_t>(*rec.invoke_commit_height) > retain_height;
        const bool receipt_lost =
            rec.receipt_commit_height &&
            static_cast<int64_t>(*rec.receipt_commit_height) > retain_height;
        if (!invoke_lost && !receipt_lost) kept.push_back(std::move(rec));
    }
    records_ = std::move(kept);
    index_.clear();
    for (size_t i = 0; i < records_.size(); ++i) index_[records_[i].set.set_id] = i;
}

bool verify_transaction_set(const TransactionSet& set, const EndorsementVerifier& keys) {
    if (set.invoke_endorsements.signer_network != set.source_network) return false;
    if (check_endorsements(set.invoke, set.invoke_endorsements, keys)) return false;
    if (!set.receipt || !set.receipt_endorsements) return false;
    const auto& rends = *set.receipt_endorsements;
    if (rends.signer_network != set.dest_network) return false;
    if (set.receipt->ref_tx_id != set.invoke.tx_id) return false;
    if (!rends.prior ||
        rends.prior->canonical_bytes() != set.invoke_endorsements.canonical_bytes())
        return false;
    return !check_endorsements(*set.receipt, rends, keys).has_value();
}

}  // namespace intersnap
