// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/world.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

namespace intersnap {

namespace {
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::set<std::string> holder_set(const ScenarioConfig& cfg) {
    std::set<std::string> holders{"auditor"};
    for (const auto& n : cfg.networks) holders.insert(n.net.network_id);
    return holders;
}

Json set_record_json(const SetRecord& rec) {
    SnapshotSetEntry entry;
    entry.set = rec.set;
    entry.is_source = rec.is_source;
    entry.initiated_tick = rec.initiated_tick;
    entry.invoke_commit_height = rec.invoke_commit_height;
    entry.receipt_commit_height = rec.receipt_commit_height;
    entry.completed_tick = rec.completed_tick;
    entry.incomplete_tick = rec.incomplete_tick;
    Json j = set_entry_to_json(entry);
    j["receipt_issued"] = rec.receipt_issued;
    j["late_receipt"] = rec.late_receipt;
    auto history = Json::array();
    for (const auto& [tick, status] : rec.status_history)
        history.push_back(Json::array({tick, to_string(status)}));
    j["status_history"] = std::move(history);
    return j;
}
}  // namespace

World::World(ScenarioConfig cfg, uint64_t seed, std::filesystem::path out_dir)
    : cfg_(std::move(cfg)),
      seed_(seed),
      out_dir_(std::move(out_dir)),
      rng_(seed),
      swarm_(SwarmKey::generate(rng_, holder_set(cfg_))),
      store_(swarm_, out_dir_.empty() ? std::filesystem::path{} : out_dir_ / "store"),
      auditor_("auditor", swarm_.secret) {
    auto problems = cfg_.validate();
    if (!problems.empty()) throw std::invalid_argument("config_invalid: " + problems.front());

    for (const auto& ns : cfg_.networks) {
        auto [it, inserted] = nets_.emplace(ns.net.network_id, NetworkRuntime(ns));
        registry_.register_all(it->second.net);
    }
    for (auto& [id, rt] : nets_) rt.net.set_registry(&registry_);

    for (const auto& f : cfg_.faults) {
        faults_.emplace(f.at_tick, f);
        if (f.kind == FaultSpec::Kind::relay_outage)
            relay_outages_.emplace_back(f.from_tick, f.to_tick);
    }
    for (const auto& d : cfg_.disputes) disputes_.emplace(d.at_tick, d);
}

World::NetworkRuntime& World::runtime(const std::string& id) {
    auto it = nets_.find(id);
    if (it == nets_.end()) throw std::out_of_range("unknown network: " + id);
    return it->second;
}

const World::NetworkRuntime& World::runtime(const std::string& id) const {
    auto it = nets_.find(id);
    if (it == nets_.end()) throw std::out_of_range("unknown network: " + id);
    return it->second;
}

Network& World::network(const std::string& id) { return runtime(id).net; }
CrossChainManager& World::manager(const std::string& id) { return runtime(id).xchain; }
KeyWallet& World::wallet(const std::string& id) { return runtime(id).wallet; }
const std::vector<World::PublishedArchive>& World::published(const std::string& id) const {
    return runtime(id).published;
}
const std::vector<VerdictMetricRow>& World::verdicts() const { return verdict_rows_; }

void World::schedule(uint64_t tick, QueuedEvent ev) {
    queue_.emplace(std::make_pair(tick, next_seq_++), std::move(ev));
}

bool World::relay_down_at(uint64_t tick) const {
    for (const auto& [from, to] : relay_outages_) {
        if (tick >= from && tick <= to) return true;
    }
    return false;
}

bool World::relay_send(InteropMessage msg) {
    if (relay_down_at(tick_) || (cfg_.relay.drop_rate > 0 && rng_.chance(cfg_.relay.drop_rate))) {
        metrics_.relay_drop();
        return false;
    }
    uint64_t delay = cfg_.relay.latency;
    if (cfg_.relay.jitter > 0) delay += rng_.below(cfg_.relay.jitter + 1);
    QueuedEvent ev;
    ev.kind = QueuedEvent::Kind::relay_deliver;
    ev.msg = std::move(msg);
    schedule(tick_ + delay, std::move(ev));
    return true;
}

std::vector<std::string> World::share_targets(const NetworkRuntime& rt) const {
    if (!rt.scenario.share_with.empty()) return rt.scenario.share_with;
    std::vector<std::string> out;
    for (const auto& [id, other] : nets_) {
        if (id != rt.scenario.net.network_id) out.push_back(id);
    }
    return out;
}

void World::step() {
    const uint64_t t = tick_;

    while (!queue_.empty() && queue_.begin()->first.first <= t) {
        QueuedEvent ev = std::move(queue_.begin()->second);
        queue_.erase(queue_.begin());
        process_queued(ev);
    }

    for (auto [it, end] = faults_.equal_range(t); it != end; ++it) apply_fault(it->second);

    run_workload();
    run_polls();
    run_disputes();

    for (auto& [id, rt] : nets_) {
        for (const auto& set_id : rt.xchain.expire_sets(t))
            metrics_.transfer_status(hash_to_hex(set_id), "incomplete", -1);
    }
    for (auto& [id, rt] : nets_) rt.net.seal_pending();

    ++tick_;
}

void World::run_until(uint64_t tick) {
    while (tick_ < tick) step();
}

void World::run() { run_until(cfg_.run_ticks); }

void World::process_queued(const QueuedEvent& ev) {
    switch (ev.kind) {
        case QueuedEvent::Kind::relay_deliver: {
            const InteropMessage& msg = ev.msg;
            if (msg.direction == InteropMessage::Direction::request) {
                auto it = nets_.find(msg.dest_network);
                if (it == nets_.end()) return;
                auto& rt = it->second;
                auto acc = rt.xchain.accept_and_receipt(rt.net, msg, tick_, registry_);
                if (!acc.ok) return;
                // archive handles ride inside cross transactions; remember them
                if (auto env = Envelope::deserialize(msg.body.payload)) {
                    if (env->recipient_network == rt.net.id()) {
                        if (auto payload = unwrap_envelope(*env, rt.net.kx_keys()))
                            rt.received_handles[payload->cid] = payload->key;
                    }
                }
                relay_send(acc.response);
            } else {
                auto it = nets_.find(msg.source_network);
                if (it == nets_.end()) return;
                auto& rt = it->second;
                auto outcome = rt.xchain.complete_set(rt.net, msg, tick_, registry_);
                if (outcome == CrossChainManager::CompleteOutcome::completed) {
                    metrics_.transfer_status(hash_to_hex(msg.set_id), "complete",
                                             static_cast<int64_t>(tick_));
                } else if (outcome == CrossChainManager::CompleteOutcome::late_receipt) {
                    metrics_.late_receipt();
                }
            }
            break;
        }
        case QueuedEvent::Kind::auditor_ingest:
            auditor_.ingest_snapshot(store_, ev.network, ev.cid, ev.key, registry_, tick_);
            break;
        case QueuedEvent::Kind::revive:
            revive_network(ev.network, ev.bootstrap);
            break;
    }
}

bool World::inject_fault(const FaultSpec& fault) {
    if (fault.kind != FaultSpec::Kind::relay_outage) {
        auto it = nets_.find(fault.network);
        if (it == nets_.end()) return false;
        if ((fault.kind == FaultSpec::Kind::peer_crash ||
             fault.kind == FaultSpec::Kind::peer_lag) &&
            fault.peer >= it->second.scenario.net.peer_count)
            return false;
        if (fault.kind == FaultSpec::Kind::malicious_fabrication &&
            (!nets_.count(fault.target) || fault.payload.empty()))
            return false;
        if (fault.kind == FaultSpec::Kind::network_crash_with_data_loss &&
            fault.retain_height < -1)
            return false;
    } else if (fault.from_tick > fault.to_tick) {
        return false;
    }
    if (fault.kind == FaultSpec::Kind::relay_outage)
        relay_outages_.emplace_back(fault.from_tick, fault.to_tick);
    if (fault.at_tick <= tick_)
        apply_fault(fault);
    else
        faults_.emplace(fault.at_tick, fault);
    return true;
}

void World::apply_fault(const FaultSpec& fault) {
    switch (fault.kind) {
        case FaultSpec::Kind::peer_crash:
            runtime(fault.network).net.crash_peer(fault.peer);
            break;
        case FaultSpec::Kind::peer_lag:
            runtime(fault.network).net.set_peer_lag(fault.peer, fault.behind_by);
            break;
        case FaultSpec::Kind::network_crash_with_data_loss: {
            auto& rt = runtime(fault.network);
            rt.net.crash_with_data_loss(fault.retain_height);
            rt.xchain.forget_beyond(fault.retain_height);
            rt.sched.last_snapshot_height = std::min(
                rt.sched.last_snapshot_height, static_cast<int64_t>(rt.net.height()));
            if (fault.revive_tick) {
                QueuedEvent ev;
                ev.kind = QueuedEvent::Kind::revive;
                ev.network = fault.network;
                ev.bootstrap = fault.bootstrap_from_store;
                schedule(*fault.revive_tick, std::move(ev));
            }
            break;
        }
        case FaultSpec::Kind::relay_outage:
            // windows are registered when the fault is scheduled
            break;
        case FaultSpec::Kind::malicious_fabrication: {
            auto& rt = runtime(fault.network);
            // forged claim, backdated, endorsed only by the fabricator's own
            // peers; it never exists as a dual-endorsed set anywhere
            auto tx = Transaction::make(fault.payload, TxKind::cross_invoke, fault.network,
                                        fault.claim_tick);
            if (auto ends = rt.net.endorse(tx)) {
                if (rt.net.commit_transaction(tx, *ends).committed) {
                    fabrications_.push_back({fault.network, fault.target,
                                             sha256(fault.payload), fault.claim_tick, tick_});
                }
            }
            break;
        }
        case FaultSpec::Kind::receipt_denial: {
            auto& rt = runtime(fault.network);
            const SetRecord* denied = nullptr;
            for (const auto& rec : rt.xchain.records()) {
                if (!rec.is_source && rec.receipt_issued) denied = &rec;
            }
            if (!denied) {
                verdict_rows_.push_back({tick_, fault.network, "", "deny_receipt",
                                         to_string(VerdictOutcome::indeterminate),
                                         to_string(VerdictRationale::span_not_covered), 0,
                                         "receipt_denial"});
                break;
            }
            DisputeCase dc;
            dc.claimant = fault.network;
            dc.respondent = denied->set.source_network;
            dc.kind = ClaimKind::deny_receipt;
            dc.reference.set_id = denied->set.set_id;
            resolve_and_record(dc, "receipt_denial");
            break;
        }
    }
}

void World::run_workload() {
    const uint64_t t = tick_;
    for (const auto& w : cfg_.workload) {
        if (t < w.from_tick || t > w.to_tick) continue;
        auto& rt = runtime(w.network);
        for (uint32_t i = 0; i < w.local_per_tick; ++i) {
            auto payload = rng_.bytes(w.payload_bytes);
            auto tx = Transaction::make(std::move(payload), TxKind::local, w.network, t);
            if (auto ends = rt.net.endorse(tx)) rt.net.commit_transaction(tx, *ends);
        }
        if (w.cross_every > 0 && (t - w.from_tick) % w.cross_every == 0) {
            auto payload = rng_.bytes(w.payload_bytes);
            auto res = rt.xchain.initiate(rt.net, w.cross_dest, std::move(payload), t,
                                          cfg_.cross_chain_timeout);
            if (res.ok) {
                metrics_.add_transfer({hash_to_hex(res.set_id), "workload", w.network,
                                       w.cross_dest, t, -1, "pending"});
                relay_send(res.message);
            } else {
                metrics_.add_transfer(
                    {"none", "workload", w.network, w.cross_dest, t, -1, "initiate_failed"});
            }
        }
    }
}

void World::run_polls() {
    const uint64_t t = tick_;
    for (auto& [id, rt] : nets_) {
        if (t % rt.scenario.scheduler.poll_interval != 0) continue;
        if (!rt.net.any_peer_ready()) continue;
        uint64_t max_height = 0;
        for (const auto& p : rt.net.discover_topology()) {
            if (p.ready) max_height = std::max(max_height, p.replica_height);
        }
        const int64_t prev = rt.sched.last_snapshot_height;
        if (!process_snapshot(rt.sched, static_cast<int64_t>(max_height),
                              rt.scenario.scheduler.threshold())
                 .trigger)
            continue;
        run_pipeline(rt, prev);
    }
}

void World::run_pipeline(NetworkRuntime& rt, int64_t from_height) {
    const uint64_t t = tick_;
    const std::string& id = rt.scenario.net.network_id;

    auto topo = rt.net.discover_topology();
    auto peer = select_snapshot_peer(topo, rng_);
    auto t0 = Clock::now();
    auto cap = peer ? capture_snapshot(rt.net, rt.xchain, *peer, from_height, t,
                                       rt.last_capture_tick)
                    : CaptureResult{};
    const double capture_s = seconds_since(t0);
    metrics_.stage_attempt("archive_snapshot", cap.ok);
    if (!cap.ok) return;
    rt.last_capture_tick = static_cast<int64_t>(t);

    auto t1 = Clock::now();
    auto assembled = assemble_archive({cap.snapshot});
    const double compress_s = seconds_since(t1);
    metrics_.stage_attempt("compress_archive", assembled.ok);
    if (!assembled.ok) return;

    auto t2 = Clock::now();
    auto passphrase = rng_.bytes(32);
    auto key = derive_key(passphrase, rng_.array<8>(), cfg_.kdf_iterations);
    auto sealed = encrypt_archive(assembled.bytes, *key, rng_);
    auto raw = sealed.serialize();
    const double encrypt_s = seconds_since(t2);
    metrics_.stage_attempt("encrypt_archive", true);

    auto t3 = Clock::now();
    auto put = store_.put(raw, swarm_.secret, id);
    const double store_put_s = seconds_since(t3);
    metrics_.stage_attempt("store_upload", put.ok);
    if (!put.ok) return;

    rt.wallet.put(put.cid, *key);
    rt.published.push_back({put.cid, *key, cap.snapshot.from_height, cap.snapshot.to_height,
                            cap.snapshot.snapshot_id, t});

    {
        // the content id goes on this network's own ledger as the archive's
        // public record; the key itself stays in the wallet
        Json rec{
            {"cid", put.cid},
            {"from_height", cap.snapshot.from_height},
            {"to_height", cap.snapshot.to_height},
            {"snapshot_id", hash_to_hex(cap.snapshot.snapshot_id)},
            {"key_fingerprint", hash_to_hex(key->passphrase_fingerprint)},
        };
        auto tx = Transaction::make(to_bytes(dump_canonical(rec)), TxKind::local, id, t);
        if (auto ends = rt.net.endorse(tx)) rt.net.commit_transaction(tx, *ends);
    }

    for (const auto& dest : share_targets(rt)) {
        EnvelopePayload ep;
        ep.cid = put.cid;
        ep.key = key->key;
        ep.metadata = dump_canonical(Json{{"network", id},
                                          {"from_height", cap.snapshot.from_height},
                                          {"to_height", cap.snapshot.to_height}});
        bool ok = false;
        if (auto env = wrap_for_destination(ep, dest, registry_, rng_)) {
            auto res =
                rt.xchain.initiate(rt.net, dest, env->serialize(), t, cfg_.cross_chain_timeout);
            if (res.ok) {
                metrics_.add_transfer({hash_to_hex(res.set_id), "archive_handle", id, dest, t,
                                       -1, "pending"});
                relay_send(res.message);
                ok = true;
            }
        }
        metrics_.stage_attempt("initiate_interop", ok);
    }

    QueuedEvent ingest;
    ingest.kind = QueuedEvent::Kind::auditor_ingest;
    ingest.network = id;
    ingest.cid = put.cid;
    ingest.key = key->key;
    schedule(t + cfg_.auditor_delivery_latency, std::move(ingest));

    metrics_.add_snapshot({id, put.cid, t, cap.snapshot.from_height, cap.snapshot.to_height,
                           cap.snapshot.blocks.size(), cap.snapshot.transaction_count(),
                           assembled.bytes.size(), raw.size(), capture_s, compress_s,
                           encrypt_s, store_put_s});
}

void World::run_disputes() {
    for (auto [it, end] = disputes_.equal_range(tick_); it != end; ++it) {
        const DisputeSpec& spec = it->second;
        DisputeCase dc;
        dc.claimant = spec.claimant;
        dc.respondent = spec.respondent;
        dc.kind = spec.kind;

        bool resolved_target = false;
        switch (spec.mode) {
            case DisputeSpec::TargetMode::latest_completed: {
                const auto& recs = runtime(spec.claimant).xchain.records();
                for (const auto& rec : recs) {
                    const bool candidate =
                        spec.kind == ClaimKind::demand_fulfillment
                            ? (rec.is_source && rec.set.status == SetStatus::complete &&
                               rec.set.dest_network == spec.respondent)
                            : (!rec.is_source && rec.receipt_issued &&
                               rec.set.source_network == spec.respondent);
                    if (candidate) {
                        dc.reference.set_id = rec.set.set_id;
                        resolved_target = true;
                    }
                }
                break;
            }
            case DisputeSpec::TargetMode::set_index: {
                uint32_t n = 0;
                for (const auto& rec : runtime(spec.claimant).xchain.records()) {
                    if (rec.is_source && rec.set.dest_network == spec.respondent) {
                        if (n == spec.index) {
                            dc.reference.set_id = rec.set.set_id;
                            resolved_target = true;
                            break;
                        }
                        ++n;
                    }
                }
                break;
            }
            case DisputeSpec::TargetMode::fabricated:
                if (spec.index < fabrications_.size()) {
                    const auto& fab = fabrications_[spec.index];
                    dc.reference.payload_digest = fab.payload_digest;
                    dc.reference.tick_span = {{0, fab.claim_tick}};
                    resolved_target = true;
                }
                break;
            case DisputeSpec::TargetMode::digest:
                dc.reference.payload_digest = spec.payload_digest;
                dc.reference.tick_span = spec.span;
                resolved_target = true;
                break;
        }

        if (!resolved_target) {
            verdict_rows_.push_back({tick_, spec.claimant, spec.respondent,
                                     to_string(spec.kind),
                                     to_string(VerdictOutcome::indeterminate),
                                     to_string(VerdictRationale::span_not_covered), 0,
                                     "scripted"});
            continue;
        }
        resolve_and_record(dc, "scripted");
    }
}

void World::resolve_and_record(const DisputeCase& dc, const std::string& origin) {
    auto v = auditor_.resolve_dispute(dc, registry_);
    verdict_rows_.push_back({tick_, dc.claimant, dc.respondent, to_string(dc.kind),
                             to_string(v.outcome), to_string(v.rationale), v.evidence.size(),
                             origin});
}

World::BootstrapOutcome World::bootstrap_peer_from_archive(const std::string& network_id,
                                                           uint32_t peer,
                                                           const std::string& cid,
                                                           const std::array<uint8_t, 16>& key) {
    BootstrapOutcome out;
    auto& rt = runtime(network_id);
    auto start = Clock::now();

    auto got = store_.get(cid, swarm_.secret, network_id);
    if (!got.ok) {
        out.err = got.err == StoreError::integrity_mismatch ? BootstrapError::integrity_mismatch
                                                            : BootstrapError::fetch_failure;
        return out;
    }
    auto sealed = EncryptedArchive::deserialize(got.bytes);
    if (!sealed) {
        out.err = BootstrapError::auth_failure;
        return out;
    }
    auto plain = decrypt_archive(*sealed, key);
    if (!plain) {
        out.err = BootstrapError::auth_failure;
        return out;
    }
    auto parsed = parse_archive(*plain);
    if (!parsed.ok) {
        out.err = BootstrapError::chain_verification_failure;
        return out;
    }
    std::vector<Block> blocks;
    for (auto& snap : parsed.archive.snapshots) {
        for (auto& b : snap.blocks) blocks.push_back(std::move(b));
    }
    if (rt.net.restore_peer_from_blocks(peer, blocks)) {
        out.err = BootstrapError::chain_verification_failure;
        return out;
    }
    out.ok = true;
    out.restored_height = blocks.back().height;
    out.wall_s = seconds_since(start);
    metrics_.add_bootstrap(
        {network_id, peer, blocks.size(), "store", out.wall_s, tick_});
    return out;
}

World::BootstrapOutcome World::bootstrap_peer_from_replica(const std::string& network_id,
                                                           uint32_t peer) {
    BootstrapOutcome out;
    auto& rt = runtime(network_id);
    auto start = Clock::now();
    // replica copy plus the same verification the store path performs
    std::vector<Block> blocks = rt.net.chain();
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].block_hash != blocks[i].compute_hash() ||
            (i > 0 && blocks[i].prev_hash != blocks[i - 1].block_hash)) {
            out.err = BootstrapError::chain_verification_failure;
            return out;
        }
    }
    rt.net.catch_up_peer(peer);
    out.ok = true;
    out.restored_height = rt.net.height();
    out.wall_s = seconds_since(start);
    metrics_.add_bootstrap(
        {network_id, peer, blocks.size(), "replica", out.wall_s, tick_});
    return out;
}

void World::revive_network(const std::string& id, bool bootstrap) {
    auto& rt = runtime(id);
    rt.net.revive_all();
    if (bootstrap) {
        for (const auto& pa : rt.published) {
            bootstrap_peer_from_archive(id, 0, pa.cid, pa.key.key);
        }
        for (uint32_t i = 0; i < rt.scenario.net.peer_count; ++i) rt.net.catch_up_peer(i);
        rt.sched.last_snapshot_height = std::max(rt.sched.last_snapshot_height,
                                                 static_cast<int64_t>(rt.net.height()));
    }
}

Json World::state_json() const {
    Json networks = Json::object();
    for (const auto& [id, rt] : nets_) {
        Json blocks = Json::array();
        for (const auto& b : rt.net.chain()) blocks.push_back(block_to_json(b));
        Json topo = Json::array();
        for (const auto& p : rt.net.discover_topology()) {
            topo.push_back(Json{{"peer_id", p.peer_id},
                                {"replica_height", p.replica_height},
                                {"ready", p.ready}});
        }
        Json sets = Json::array();
        for (const auto& rec : rt.xchain.records()) sets.push_back(set_record_json(rec));
        Json wallet = Json::object();
        for (const auto& [archive_id, key] : rt.wallet.entries()) {
            wallet[archive_id] = Json{{"key", to_hex(key.key)},
                                      {"salt", to_hex(key.salt)},
                                      {"iterations", key.iterations}};
        }
        Json published = Json::array();
        for (const auto& pa : rt.published) {
            published.push_back(Json{{"cid", pa.cid},
                                     {"from_height", pa.from_height},
                                     {"to_height", pa.to_height},
                                     {"snapshot_id", hash_to_hex(pa.snapshot_id)},
                                     {"publish_tick", pa.publish_tick}});
        }
        networks[id] = Json{
            {"config",
             Json{{"id", rt.scenario.net.network_id},
                  {"peers", rt.scenario.net.peer_count},
                  {"genesis_seed", rt.scenario.net.genesis_seed}}},
            {"height", rt.net.height()},
            {"blocks", std::move(blocks)},
            {"topology", std::move(topo)},
            {"scheduler_last", rt.sched.last_snapshot_height},
            {"sets", std::move(sets)},
            {"wallet", std::move(wallet)},
            {"published", std::move(published)},
        };
    }
    Json verdicts = Json::array();
    for (const auto& v : verdict_rows_) {
        verdicts.push_back(Json{{"tick", v.tick},
                                {"claimant", v.claimant},
                                {"respondent", v.respondent},
                                {"kind", v.kind},
                                {"outcome", v.outcome},
                                {"rationale", v.rationale},
                                {"evidence_count", v.evidence_count},
                                {"origin", v.origin}});
    }
    return Json{
        {"schema", 1},
        {"scenario", cfg_.name},
        {"seed", seed_},
        {"tick", tick_},
        {"networks", std::move(networks)},
        {"store", Json{{"cids", store_.list()}}},
        {"auditor", auditor_.state_json()},
        {"verdicts", std::move(verdicts)},
    };
}

std::string World::state_hash() const {
    const std::string text = dump_canonical(state_json());
    return hash_to_hex(sha256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(text.data()), text.size())));
}

MetricsReport World::report() const {
    auto r = metrics_.finalize(cfg_.name, seed_, cfg_.run_ticks, state_hash());
    r.verdicts = verdict_rows_;
    return r;
}

bool World::export_run() const {
    if (out_dir_.empty()) return false;
    std::error_code ec;
    std::filesystem::create_directories(out_dir_, ec);
    if (ec) return false;

    const std::string state_text = dump_canonical(state_json());
    {
        std::ofstream out(out_dir_ / "world.json", std::ios::trunc);
        if (!out) return false;
        out << state_text << "\n";
        if (!out.good()) return false;
    }
    {
        std::ofstream out(out_dir_ / "scenario.json", std::ios::trunc);
        if (!out) return false;
        out << cfg_.to_json().dump(2) << "\n";
    }
    return export_metrics(report(), out_dir_);
}

}  // namespace intersnap
