// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/serial.hpp"

namespace intersnap {

namespace {
std::optional<Hash256> hash_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    return hash_from_hex(j[key].get<std::string>());
}

std::optional<Bytes> bytes_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    return base64_decode(j[key].get<std::string>());
}

std::optional<std::string> string_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    return j[key].get<std::string>();
}

std::optional<uint64_t> u64_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) return std::nullopt;
    return j[key].get<uint64_t>();
}
}  // namespace

Json tx_to_json(const Transaction& tx) {
    return Json{
        {"tx_id", hash_to_hex(tx.tx_id)},
        {"payload", base64_encode(tx.payload)},
        {"kind", to_string(tx.kind)},
        {"origin_network", tx.origin_network},
        {"logical_time", tx.logical_time},
        {"ref_tx_id", hash_to_hex(tx.ref_tx_id)},
    };
}

std::optional<Transaction> tx_from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    auto id = hash_field(j, "tx_id");
    auto payload = bytes_field(j, "payload");
    auto kind = string_field(j, "kind");
    auto origin = string_field(j, "origin_network");
    auto time = u64_field(j, "logical_time");
    auto ref = hash_field(j, "ref_tx_id");
    if (!id || !payload || !kind || !origin || !time || !ref) return std::nullopt;

    Transaction tx;
    tx.payload = std::move(*payload);
    if (*kind == "local")
        tx.kind = TxKind::local;
    else if (*kind == "cross_invoke")
        tx.kind = TxKind::cross_invoke;
    else if (*kind == "cross_receipt")
        tx.kind = TxKind::cross_receipt;
    else
        return std::nullopt;
    tx.origin_network = std::move(*origin);
    tx.logical_time = *time;
    tx.ref_tx_id = *ref;
    tx.tx_id = *id;
    if (tx.tx_id != tx.compute_id()) return std::nullopt;
    return tx;
}

Json endorsements_to_json(const EndorsementSet& ends) {
    auto sigs = Json::array();
    for (const auto& e : ends.signatures) {
        sigs.push_back(Json{{"peer_id", e.peer_id}, {"signature", base64_encode(e.signature)}});
    }
    Json j{
        {"subject_tx", hash_to_hex(ends.subject_tx)},
        {"signer_network", ends.signer_network},
        {"signatures", std::move(sigs)},
    };
    if (ends.prior) j["prior"] = endorsements_to_json(*ends.prior);
    return j;
}

std::optional<EndorsementSet> endorsements_from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    auto subject = hash_field(j, "subject_tx");
    auto network = string_field(j, "signer_network");
    if (!subject || !network || !j.contains("signatures") || !j["signatures"].is_array())
        return std::nullopt;

    EndorsementSet ends;
    ends.subject_tx = *subject;
    ends.signer_network = std::move(*network);
    for (const auto& sig : j["signatures"]) {
        auto peer = string_field(sig, "peer_id");
        auto raw = bytes_field(sig, "signature");
        if (!peer || !raw) return std::nullopt;
        ends.signatures.push_back({std::move(*peer), std::move(*raw)});
    }
    if (j.contains("prior")) {
        auto prior = endorsements_from_json(j["prior"]);
        if (!prior) return std::nullopt;
        ends.prior = std::make_shared<EndorsementSet>(std::move(*prior));
    }
    return ends;
}

Json block_to_json(const Block& block) {
    auto txs = Json::array();
    for (const auto& [tx, ends] : block.transactions) {
        txs.push_back(Json{{"tx", tx_to_json(tx)}, {"endorsements", endorsements_to_json(ends)}});
    }
    return Json{
        {"height", block.height},
        {"prev_hash", hash_to_hex(block.prev_hash)},
        {"transactions", std::move(txs)},
        {"block_hash", hash_to_hex(block.block_hash)},
    };
}

std::optional<Block> block_from_json(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    auto height = u64_field(j, "height");
    auto prev = hash_field(j, "prev_hash");
    auto hash = hash_field(j, "block_hash");
    if (!height || !prev || !hash || !j.contains("transactions") ||
        !j["transactions"].is_array())
        return std::nullopt;

    Block block;
    block.height = *height;
    block.prev_hash = *prev;
    for (const auto& entry : j["transactions"]) {
        if (!entry.is_object() || !entry.contains("tx") || !entry.contains("endorsements"))
            return std::nullopt;
        auto tx = tx_from_json(entry["tx"]);
        auto ends = endorsements_from_json(entry["endorsements"]);
        if (!tx || !ends) return std::nullopt;
        block.transactions.emplace_back(std::move(*tx), std::move(*ends));
    }
    block.block_hash = *hash;
    if (block.block_hash != block.compute_hash()) return std::nullopt;
    return block;
}

std::string dump_canonical(const Json& j) {
    return j.dump();
}

}  // namespace intersnap
