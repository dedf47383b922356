// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/scenario.hpp"

#include <set>

namespace intersnap {

const char* to_string(FaultSpec::Kind k) {
    switch (k) {
        case FaultSpec::Kind::peer_crash: return "peer_crash";
        case FaultSpec::Kind::peer_lag: return "peer_lag";
        case FaultSpec::Kind::network_crash_with_data_loss:
            return "network_crash_with_data_loss";
        case FaultSpec::Kind::relay_outage: return "relay_outage";
        case FaultSpec::Kind::malicious_fabrication: return "malicious_fabrication";
        case FaultSpec::Kind::receipt_denial: return "receipt_denial";
    }
    return "?";
}

namespace {
std::optional<FaultSpec::Kind> fault_kind_of(const std::string& s) {
    if (s == "peer_crash") return FaultSpec::Kind::peer_crash;
    if (s == "peer_lag") return FaultSpec::Kind::peer_lag;
    if (s == "network_crash_with_data_loss")
        return FaultSpec::Kind::network_crash_with_data_loss;
    if (s == "relay_outage") return FaultSpec::Kind::relay_outage;
    if (s == "malicious_fabrication") return FaultSpec::Kind::malicious_fabrication;
    if (s == "receipt_denial") return FaultSpec::Kind::receipt_denial;
    return std::nullopt;
}

const char* to_string(DisputeSpec::TargetMode m) {
    switch (m) {
        case DisputeSpec::TargetMode::latest_completed: return "latest_completed";
        case DisputeSpec::TargetMode::set_index: return "set_index";
        case DisputeSpec::TargetMode::fabricated: return "fabricated";
        case DisputeSpec::TargetMode::digest: return "digest";
    }
    return "?";
}
}  // namespace

Json ScenarioConfig::to_json() const {
    Json nets = Json::array();
    for (const auto& n : networks) {
        nets.push_back(Json{
            {"id", n.net.network_id},
            {"peers", n.net.peer_count},
            {"genesis_seed", n.net.genesis_seed},
            {"scheduler",
             Json{{"blocks_per_period", n.scheduler.blocks_per_period},
                  {"window_periods", n.scheduler.window_periods},
                  {"poll_interval", n.scheduler.poll_interval}}},
            {"share_with", n.share_with},
        });
    }
    Json work = Json::array();
    for (const auto& w : workload) {
        work.push_back(Json{
            {"network", w.network},
            {"from_tick", w.from_tick},
            {"to_tick", w.to_tick},
            {"local_per_tick", w.local_per_tick},
            {"payload_bytes", w.payload_bytes},
            {"cross_dest", w.cross_dest},
            {"cross_every", w.cross_every},
        });
    }
    Json flts = Json::array();
    for (const auto& f : faults) {
        Json fj{{"kind", to_string(f.kind)}, {"at_tick", f.at_tick}};
        switch (f.kind) {
            case FaultSpec::Kind::peer_crash:
                fj["network"] = f.network;
                fj["peer"] = f.peer;
                break;
            case FaultSpec::Kind::peer_lag:
                fj["network"] = f.network;
                fj["peer"] = f.peer;
                fj["behind_by"] = f.behind_by;
                break;
            case FaultSpec::Kind::network_crash_with_data_loss:
                fj["network"] = f.network;
                fj["retain_height"] = f.retain_height;
                if (f.revive_tick) fj["revive_tick"] = *f.revive_tick;
                fj["bootstrap_from_store"] = f.bootstrap_from_store;
                break;
            case FaultSpec::Kind::relay_outage:
                fj["from_tick"] = f.from_tick;
                fj["to_tick"] = f.to_tick;
                break;
            case FaultSpec::Kind::malicious_fabrication:
                fj["network"] = f.network;
                fj["target"] = f.target;
                fj["payload_text"] = std::string(f.payload.begin(), f.payload.end());
                fj["claim_tick"] = f.claim_tick;
                break;
            case FaultSpec::Kind::receipt_denial:
                fj["network"] = f.network;
                break;
        }
        flts.push_back(std::move(fj));
    }
    Json disp = Json::array();
    for (const auto& d : disputes) {
        Json dj{
            {"at_tick", d.at_tick},
            {"claimant", d.claimant},
            {"respondent", d.respondent},
            {"kind", to_string(d.kind)},
            {"target", Json{{"mode", to_string(d.mode)}}},
        };
        if (d.mode == DisputeSpec::TargetMode::set_index ||
            d.mode == DisputeSpec::TargetMode::fabricated)
            dj["target"]["index"] = d.index;
        if (d.mode == DisputeSpec::TargetMode::digest) {
            dj["target"]["payload_digest"] = hash_to_hex(d.payload_digest);
            dj["target"]["span"] = Json::array({d.span.first, d.span.second});
        }
        disp.push_back(std::move(dj));
    }
    return Json{
        {"schema", schema},
        {"name", name},
        {"run_ticks", run_ticks},
        {"cross_chain_timeout", cross_chain_timeout},
        {"relay", Json{{"latency", relay.latency},
                       {"jitter", relay.jitter},
                       {"drop_rate", relay.drop_rate}}},
        {"auditor_delivery_latency", auditor_delivery_latency},
        {"kdf_iterations", kdf_iterations},
        {"networks", std::move(nets)},
        {"workload", std::move(work)},
        {"faults", std::move(flts)},
        {"disputes", std::move(disp)},
    };
}

std::vector<std::string> ScenarioConfig::validate() const {
    std::vector<std::string> errors;
    auto fail = [&](const std::string& msg) { errors.push_back(msg); };

    if (schema != 1) fail("schema must be 1");
    if (run_ticks == 0) fail("run_ticks must be positive");
    if (networks.empty()) fail("at least one network required");
    if (relay.drop_rate < 0.0 || relay.drop_rate > 1.0) fail("relay.drop_rate out of [0,1]");
    if (kdf_iterations == 0) fail("kdf_iterations must be positive");

    std::set<std::string> ids;
    for (const auto& n : networks) {
        if (n.net.network_id.empty()) fail("network id must be non-empty");
        if (!ids.insert(n.net.network_id).second)
            fail("duplicate network id: " + n.net.network_id);
        if (n.net.peer_count == 0) fail(n.net.network_id + ": peers must be >= 1");
        if (n.scheduler.poll_interval == 0)
            fail(n.net.network_id + ": scheduler.poll_interval must be positive");
        if (n.scheduler.blocks_per_period < 0 || n.scheduler.window_periods <= 0)
            fail(n.net.network_id + ": scheduler threshold parameters out of range");
        for (const auto& peer : n.share_with) {
            if (peer == n.net.network_id) fail(n.net.network_id + ": cannot share with itself");
        }
    }
    auto known = [&](const std::string& id) { return ids.count(id) != 0; };
    for (const auto& n : networks) {
        for (const auto& peer : n.share_with) {
            if (!known(peer)) fail(n.net.network_id + ": unknown share_with " + peer);
        }
    }
    for (const auto& w : workload) {
        if (!known(w.network)) fail("workload: unknown network " + w.network);
        if (w.from_tick > w.to_tick) fail("workload: from_tick > to_tick");
        if (w.payload_bytes == 0) fail("workload: payload_bytes must be positive");
        if (w.cross_every > 0 && !known(w.cross_dest))
            fail("workload: unknown cross_dest " + w.cross_dest);
        if (w.cross_every > 0 && w.cross_dest == w.network)
            fail("workload: cross_dest equals source");
    }
    for (const auto& f : faults) {
        switch (f.kind) {
            case FaultSpec::Kind::peer_crash:
            case FaultSpec::Kind::peer_lag:
                if (!known(f.network)) fail("fault: unknown network " + f.network);
                break;
            case FaultSpec::Kind::network_crash_with_data_loss:
                if (!known(f.network)) fail("fault: unknown network " + f.network);
                if (f.retain_height < -1) fail("fault: retain_height must be >= -1");
                if (f.revive_tick && *f.revive_tick <= f.at_tick)
                    fail("fault: revive_tick must come after at_tick");
                break;
            case FaultSpec::Kind::relay_outage:
                if (f.from_tick > f.to_tick) fail("fault: outage window inverted");
                break;
            case FaultSpec::Kind::malicious_fabrication:
                if (!known(f.network) || !known(f.target))
                    fail("fault: fabrication networks unknown");
                if (f.payload.empty()) fail("fault: fabrication payload empty");
                break;
            case FaultSpec::Kind::receipt_denial:
                if (!known(f.network)) fail("fault: unknown network " + f.network);
                break;
        }
    }
    for (const auto& d : disputes) {
        if (!known(d.claimant) || !known(d.respondent)) fail("dispute: unknown network");
        if (d.claimant == d.respondent) fail("dispute: claimant equals respondent");
    }
    return errors;
}

namespace {
template <typename T>
bool load_number(const Json& j, const char* key, T& out, bool required,
                 std::string& error) {
    if (!j.contains(key)) {
        if (required) error = std::string("missing field: ") + key;
        return !required;
    }
    if (!j[key].is_number()) {
        error = std::string("field must be a number: ") + key;
        return false;
    }
    out = j[key].get<T>();
    return true;
}

bool load_string(const Json& j, const char* key, std::string& out, bool required,
                 std::string& error) {
    if (!j.contains(key)) {
        if (required) error = std::string("missing field: ") + key;
        return !required;
    }
    if (!j[key].is_string()) {
        error = std::string("field must be a string: ") + key;
        return false;
    }
    out = j[key].get<std::string>();
    return true;
}
}  // namespace

ScenarioParseResult parse_scenario(std::string_view json_text) {
    ScenarioParseResult out;
    auto doc = Json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        out.error = "scenario is not valid JSON";
        return out;
    }
    ScenarioConfig cfg;
    std::string err;

    if (!load_number(doc, "schema", cfg.schema, true, err)) { out.error = err; return out; }
    if (!load_string(doc, "name", cfg.name, false, err)) { out.error = err; return out; }
    if (!load_number(doc, "run_ticks", cfg.run_ticks, true, err)) { out.error = err; return out; }
    if (!load_number(doc, "cross_chain_timeout", cfg.cross_chain_timeout, false, err)) {
        out.error = err;
        return out;
    }
    if (!load_number(doc, "auditor_delivery_latency", cfg.auditor_delivery_latency, false,
                     err)) {
        out.error = err;
        return out;
    }
    if (!load_number(doc, "kdf_iterations", cfg.kdf_iterations, false, err)) {
        out.error = err;
        return out;
    }
    if (doc.contains("relay")) {
        const auto& r = doc["relay"];
        if (!r.is_object() || !load_number(r, "latency", cfg.relay.latency, false, err) ||
            !load_number(r, "jitter", cfg.relay.jitter, false, err) ||
            !load_number(r, "drop_rate", cfg.relay.drop_rate, false, err)) {
            out.error = err.empty() ? "relay must be an object" : err;
            return out;
        }
    }

    if (!doc.contains("networks") || !doc["networks"].is_array()) {
        out.error = "missing field: networks";
        return out;
    }
    for (const auto& nj : doc["networks"]) {
        NetworkScenario ns;
        if (!nj.is_object() || !load_string(nj, "id", ns.net.network_id, true, err) ||
            !load_number(nj, "peers", ns.net.peer_count, true, err) ||
            !load_number(nj, "genesis_seed", ns.net.genesis_seed, false, err)) {
            out.error = err.empty() ? "network entries must be objects" : err;
            return out;
        }
        if (nj.contains("scheduler")) {
            const auto& sj = nj["scheduler"];
            if (!sj.is_object() ||
                !load_number(sj, "blocks_per_period", ns.scheduler.blocks_per_period, false,
                             err) ||
                !load_number(sj, "window_periods", ns.scheduler.window_periods, false, err) ||
                !load_number(sj, "poll_interval", ns.scheduler.poll_interval, false, err)) {
                out.error = err.empty() ? "scheduler must be an object" : err;
                return out;
            }
        }
        if (nj.contains("share_with")) {
            if (!nj["share_with"].is_array()) {
                out.error = "share_with must be an array";
                return out;
            }
            for (const auto& s : nj["share_with"]) ns.share_with.push_back(s.get<std::string>());
        }
        cfg.networks.push_back(std::move(ns));
    }

    if (doc.contains("workload")) {
        if (!doc["workload"].is_array()) {
            out.error = "workload must be an array";
            return out;
        }
        for (const auto& wj : doc["workload"]) {
            WorkloadEntry w;
            if (!wj.is_object() || !load_string(wj, "network", w.network, true, err) ||
                !load_number(wj, "from_tick", w.from_tick, true, err) ||
                !load_number(wj, "to_tick", w.to_tick, true, err) ||
                !load_number(wj, "local_per_tick", w.local_per_tick, false, err) ||
                !load_number(wj, "payload_bytes", w.payload_bytes, false, err) ||
                !load_string(wj, "cross_dest", w.cross_dest, false, err) ||
                !load_number(wj, "cross_every", w.cross_every, false, err)) {
                out.error = err.empty() ? "workload entries must be objects" : err;
                return out;
            }
            cfg.workload.push_back(std::move(w));
        }
    }

    if (doc.contains("faults")) {
        if (!doc["faults"].is_array()) {
            out.error = "faults must be an array";
            return out;
        }
        for (const auto& fj : doc["faults"]) {
            FaultSpec f;
            std::string kind;
            if (!fj.is_object() || !load_string(fj, "kind", kind, true, err) ||
                !load_number(fj, "at_tick", f.at_tick, true, err)) {
                out.error = err.empty() ? "fault entries must be objects" : err;
                return out;
            }
            auto k = fault_kind_of(kind);
            if (!k) {
                out.error = "unknown fault kind: " + kind;
                return out;
            }
            f.kind = *k;
            std::string payload_text;
            if (!load_string(fj, "network", f.network, false, err) ||
                !load_string(fj, "target", f.target, false, err) ||
                !load_number(fj, "peer", f.peer, false, err) ||
                !load_number(fj, "behind_by", f.behind_by, false, err) ||
                !load_number(fj, "retain_height", f.retain_height, false, err) ||
                !load_number(fj, "from_tick", f.from_tick, false, err) ||
                !load_number(fj, "to_tick", f.to_tick, false, err) ||
                !load_string(fj, "payload_text", payload_text, false, err) ||
                !load_number(fj, "claim_tick", f.claim_tick, false, err)) {
                out.error = err;
                return out;
            }
            if (fj.contains("revive_tick")) {
                uint64_t revive = 0;
                if (!load_number(fj, "revive_tick", revive, false, err)) {
                    out.error = err;
                    return out;
                }
                f.revive_tick = revive;
            }
            if (fj.contains("bootstrap_from_store") && fj["bootstrap_from_store"].is_boolean())
                f.bootstrap_from_store = fj["bootstrap_from_store"].get<bool>();
            f.payload = to_bytes(payload_text);
            cfg.faults.push_back(std::move(f));
        }
    }

    if (doc.contains("disputes")) {
        if (!doc["disputes"].is_array()) {
            out.error = "disputes must be an array";
            return out;
        }
        for (const auto& dj : doc["disputes"]) {
            DisputeSpec d;
            std::string kind;
            if (!dj.is_object() || !load_number(dj, "at_tick", d.at_tick, true, err) ||
                !load_string(dj, "claimant", d.claimant, true, err) ||
                !load_string(dj, "respondent", d.respondent, true, err) ||
                !load_string(dj, "kind", kind, true, err)) {
                out.error = err.empty() ? "dispute entries must be objects" : err;
                return out;
            }
            if (kind == "demand_fulfillment")
                d.kind = ClaimKind::demand_fulfillment;
            else if (kind == "deny_receipt")
                d.kind = ClaimKind::deny_receipt;
            else {
                out.error = "unknown claim kind: " + kind;
                return out;
            }
            if (!dj.contains("target") || !dj["target"].is_object()) {
                out.error = "dispute target must be an object";
                return out;
            }
            const auto& tj = dj["target"];
            std::string mode;
            if (!load_string(tj, "mode", mode, true, err)) {
                out.error = err;
                return out;
            }
            if (mode == "latest_completed")
                d.mode = DisputeSpec::TargetMode::latest_completed;
            else if (mode == "set_index")
                d.mode = DisputeSpec::TargetMode::set_index;
            else if (mode == "fabricated")
                d.mode = DisputeSpec::TargetMode::fabricated;
            else if (mode == "digest")
                d.mode = DisputeSpec::TargetMode::digest;
            else {
                out.error = "unknown dispute target mode: " + mode;
                return out;
            }
            if (!load_number(tj, "index", d.index, false, err)) {
                out.error = err;
                return out;
            }
            if (d.mode == DisputeSpec::TargetMode::digest) {
                std::string digest_hex;
                if (!load_string(tj, "payload_digest", digest_hex, true, err)) {
                    out.error = err;
                    return out;
                }
                auto digest = hash_from_hex(digest_hex);
                if (!digest) {
                    out.error = "payload_digest must be 64 hex chars";
                    return out;
                }
                d.payload_digest = *digest;
                if (!tj.contains("span") || !tj["span"].is_array() || tj["span"].size() != 2) {
                    out.error = "digest target requires span [from, to]";
                    return out;
                }
                d.span = {tj["span"][0].get<uint64_t>(), tj["span"][1].get<uint64_t>()};
            }
            cfg.disputes.push_back(std::move(d));
        }
    }

    auto problems = cfg.validate();
    if (!problems.empty()) {
        out.error = problems.front();
        return out;
    }
    out.ok = true;
    out.config = std::move(cfg);
    return out;
}

}  // namespace intersnap
