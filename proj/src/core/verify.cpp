// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/verify.hpp"

#include <fstream>
#include <set>

#include "core/archive_crypto.hpp"
#include "core/cas_store.hpp"
#include "core/scenario.hpp"
#include "core/snapshot.hpp"
#include "core/world.hpp"

namespace intersnap {

namespace {

struct Checker {
    Json checks = Json::array();
    bool all_ok = true;

    void add(const std::string& name, bool pass, std::string detail = {}) {
        checks.push_back(Json{{"name", name}, {"pass", pass}, {"detail", detail}});
        all_ok = all_ok && pass;
    }
};

std::optional<std::string> read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

struct LoadedNetwork {
    NetworkConfig config;
    std::vector<Block> blocks;
    std::set<Hash256> committed;
    Json sets;
    Json wallet;
    Json published;
};

}  // namespace

Json verify_run(const std::filesystem::path& run_dir) {
    Checker c;

    auto world_text = read_text(run_dir / "world.json");
    auto summary_text = read_text(run_dir / "summary.json");
    if (!world_text || !summary_text) {
        c.add("files_present", false, "world.json or summary.json missing");
        return Json{{"ok", false}, {"checks", c.checks}};
    }
    c.add("files_present", true);

    auto world = Json::parse(*world_text, nullptr, false);
    auto summary = Json::parse(*summary_text, nullptr, false);
    if (world.is_discarded() || summary.is_discarded()) {
        c.add("files_parse", false, "world.json or summary.json is not valid JSON");
        return Json{{"ok", false}, {"checks", c.checks}};
    }
    c.add("files_parse", true);

    {
        const std::string canonical = dump_canonical(world);
        const std::string hash = hash_to_hex(sha256(std::span<const uint8_t>(
            reinterpret_cast<const uint8_t*>(canonical.data()), canonical.size())));
        const std::string recorded = summary.value("final_state_hash", "");
        c.add("state_hash_matches", hash == recorded,
              hash == recorded ? "" : "recomputed " + hash + " != recorded " + recorded);
    }

    bool scenario_has_data_loss = false;
    if (auto scenario_text = read_text(run_dir / "scenario.json")) {
        auto parsed = parse_scenario(*scenario_text);
        if (parsed.ok) {
            for (const auto& f : parsed.config.faults) {
                if (f.kind == FaultSpec::Kind::network_crash_with_data_loss)
                    scenario_has_data_loss = true;
            }
        }
    }

    // rebuild networks and the registry; keys are derived from the recorded
    // genesis seeds, so nothing secret needs to live in the export
    std::map<std::string, LoadedNetwork> nets;
    IdentityRegistry registry;
    bool structure_ok = world.contains("networks") && world["networks"].is_object();
    if (structure_ok) {
        for (const auto& [id, nj] : world["networks"].items()) {
            LoadedNetwork ln;
            if (!nj.contains("config") || !nj.contains("blocks") || !nj["blocks"].is_array()) {
                structure_ok = false;
                break;
            }
            ln.config.network_id = nj["config"].value("id", "");
            ln.config.peer_count = nj["config"].value("peers", 0u);
            ln.config.genesis_seed = nj["config"].value("genesis_seed", uint64_t{0});
            for (const auto& bj : nj["blocks"]) {
                auto b = block_from_json(bj);
                if (!b) {
                    structure_ok = false;
                    break;
                }
                for (const auto& [tx, ends] : b->transactions) ln.committed.insert(tx.tx_id);
                ln.blocks.push_back(std::move(*b));
            }
            ln.sets = nj.value("sets", Json::array());
            ln.wallet = nj.value("wallet", Json::object());
            ln.published = nj.value("published", Json::array());
            nets.emplace(id, std::move(ln));
        }
    }
    c.add("state_structure", structure_ok,
          structure_ok ? "" : "networks/blocks malformed or block hashes wrong");
    if (!structure_ok) return Json{{"ok", false}, {"checks", c.checks}};

    for (const auto& [id, ln] : nets) {
        auto fresh = Network::bootstrap(ln.config);
        registry.register_all(fresh);
    }

    {
        bool chains_ok = true;
        std::string detail;
        for (const auto& [id, ln] : nets) {
            auto fresh = Network::bootstrap(ln.config);
            if (ln.blocks.empty() || ln.blocks[0].block_hash != fresh.chain()[0].block_hash) {
                chains_ok = false;
                detail = id + ": genesis mismatch";
                break;
            }
            for (size_t i = 0; i < ln.blocks.size(); ++i) {
                if (ln.blocks[i].height != i ||
                    (i > 0 && ln.blocks[i].prev_hash != ln.blocks[i - 1].block_hash)) {
                    chains_ok = false;
                    detail = id + ": chain broken at height " + std::to_string(i);
                    break;
                }
            }
        }
        c.add("hash_chains_verify", chains_ok, detail);
    }

    {
        bool ends_ok = true;
        std::string detail;
        for (const auto& [id, ln] : nets) {
            for (const auto& b : ln.blocks) {
                for (const auto& [tx, ends] : b.transactions) {
                    if (check_endorsements(tx, ends, registry)) {
                        ends_ok = false;
                        detail = id + ": endorsement failure at height " +
                                 std::to_string(b.height);
                        break;
                    }
                }
            }
        }
        c.add("committed_endorsements_verify", ends_ok, detail);
    }

    {
        bool sets_ok = true;
        std::string detail;
        for (const auto& [id, ln] : nets) {
            for (const auto& sj : ln.sets) {
                auto entry = set_entry_from_json(sj);
                if (!entry) {
                    sets_ok = false;
                    detail = id + ": unparsable set record";
                    break;
                }
                // lifecycle legality: pending first, at most one transition,
                // never incomplete -> complete
                const auto& history = sj.value("status_history", Json::array());
                if (history.size() > 2) {
                    sets_ok = false;
                    detail = id + ": more than one status transition";
                    break;
                }
                if (!history.empty() && history[0][1] != "pending") {
                    sets_ok = false;
                    detail = id + ": history does not start pending";
                    break;
                }
                const bool receipt_issued = sj.value("receipt_issued", false);
                const bool is_complete = entry->set.status == SetStatus::complete;
                if (is_complete || receipt_issued) {
                    if (!verify_transaction_set(entry->set, registry)) {
                        sets_ok = false;
                        detail = id + ": completed set fails dual verification";
                        break;
                    }
                    // local evidence: both transactions on this record's chain
                    if (!ln.committed.count(entry->set.invoke.tx_id) ||
                        !ln.committed.count(entry->set.receipt->tx_id)) {
                        sets_ok = false;
                        detail = id + ": completed set lacks local commits";
                        break;
                    }
                    // absent injected data loss, evidence must be on both chains
                    if (!scenario_has_data_loss) {
                        const std::string& other = entry->is_source
                                                       ? entry->set.dest_network
                                                       : entry->set.source_network;
                        auto oit = nets.find(other);
                        if (oit != nets.end() &&
                            (!oit->second.committed.count(entry->set.invoke.tx_id) ||
                             !oit->second.committed.count(entry->set.receipt->tx_id))) {
                            sets_ok = false;
                            detail = id + ": counterparty ledger missing set evidence";
                            break;
                        }
                    }
                }
                if (entry->set.status == SetStatus::incomplete && entry->set.receipt) {
                    sets_ok = false;
                    detail = id + ": incomplete set carries a receipt";
                    break;
                }
            }
        }
        c.add("set_lifecycles_legal", sets_ok, detail);
    }

    {
        bool store_ok = true;
        std::string detail;
        const auto objects_dir = run_dir / "store" / "objects";
        const auto& cids = world["store"]["cids"];
        for (const auto& cj : cids) {
            const std::string cid = cj.get<std::string>();
            std::ifstream in(objects_dir / (cid + ".bin"), std::ios::binary);
            if (!in) {
                store_ok = false;
                detail = cid + ": object file missing";
                break;
            }
            Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            if (CasStore::compute_cid(data) != cid) {
                store_ok = false;
                detail = cid + ": content does not hash to its cid";
                break;
            }
        }
        c.add("store_objects_verify", store_ok, detail);
    }

    {
        bool archives_ok = true;
        std::string detail;
        const auto objects_dir = run_dir / "store" / "objects";
        for (const auto& [id, ln] : nets) {
            for (const auto& pj : ln.published) {
                const std::string cid = pj.value("cid", "");
                if (!ln.wallet.contains(cid)) {
                    archives_ok = false;
                    detail = id + ": wallet missing key for " + cid;
                    break;
                }
                auto key_raw = from_hex(ln.wallet[cid].value("key", ""));
                std::ifstream in(objects_dir / (cid + ".bin"), std::ios::binary);
                if (!key_raw || key_raw->size() != 16 || !in) {
                    archives_ok = false;
                    detail = id + ": unreadable key or object for " + cid;
                    break;
                }
                Bytes data((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
                auto sealed = EncryptedArchive::deserialize(data);
                std::array<uint8_t, 16> key{};
                std::copy(key_raw->begin(), key_raw->end(), key.begin());
                std::optional<Bytes> plain;
                if (sealed) plain = decrypt_archive(*sealed, key);
                auto parsed = plain ? parse_archive(*plain) : ParseArchiveResult{};
                if (!parsed.ok) {
                    archives_ok = false;
                    detail = id + ": archive " + cid + " fails decrypt/parse";
                    break;
                }
                if (parsed.archive.manifest.from_height != pj.value("from_height", int64_t{0}) ||
                    parsed.archive.manifest.to_height != pj.value("to_height", int64_t{0})) {
                    archives_ok = false;
                    detail = id + ": archive " + cid + " span mismatch";
                    break;
                }
                for (const auto& snap : parsed.archive.snapshots) {
                    for (const auto& e : snap.completed_sets) {
                        if (!verify_transaction_set(e.set, registry)) {
                            archives_ok = false;
                            detail = id + ": archived set fails verification in " + cid;
                            break;
                        }
                    }
                }
            }
        }
        c.add("published_archives_verify", archives_ok, detail);
    }

    {
        bool stages_ok = summary.contains("stages") && summary["stages"].is_object();
        std::string detail;
        if (stages_ok) {
            for (const auto& [name, sj] : summary["stages"].items()) {
                const uint64_t attempts = sj.value("attempts", uint64_t{0});
                const uint64_t pass = sj.value("pass", uint64_t{0});
                const uint64_t fail = sj.value("fail", uint64_t{0});
                if (attempts != pass + fail) {
                    stages_ok = false;
                    detail = name + ": attempts != pass + fail";
                    break;
                }
            }
        }
        c.add("stage_counters_reconcile", stages_ok, detail);
    }

    {
        bool verdicts_ok = true;
        std::string detail;
        for (const auto& vj : world.value("verdicts", Json::array())) {
            if (vj.value("outcome", "") == "claim_upheld" &&
                vj.value("evidence_count", uint64_t{0}) == 0) {
                verdicts_ok = false;
                detail = "claim_upheld verdict without evidence";
                break;
            }
        }
        c.add("verdicts_cite_evidence", verdicts_ok, detail);
    }

    return Json{{"ok", c.all_ok}, {"checks", c.checks}};
}

}  // namespace intersnap
