// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "core/auditor.hpp"

using namespace intersnap;

namespace {

/// Two networks, a shared private store, an auditor, and helpers that walk a
/// snapshot through capture -> assemble -> encrypt -> put -> ingest.
struct AuditWorld {
    DetRng rng{909};
    Network n1 = Network::bootstrap({"N1", 3, 11});
    Network n2 = Network::bootstrap({"N2", 4, 22});
    IdentityRegistry registry;
    CrossChainManager m1{"N1"};
    CrossChainManager m2{"N2"};
    SwarmKey swarm = SwarmKey::generate(rng, {"N1", "N2", "auditor"});
    CasStore store{swarm, {}};
    Auditor auditor{"auditor", swarm.secret};
    std::map<std::string, int64_t> last_height{{"N1", -1}, {"N2", -1}};
    std::map<std::string, int64_t> last_tick{{"N1", -1}, {"N2", -1}};

    AuditWorld() {
        registry.register_all(n1);
        registry.register_all(n2);
        n1.set_registry(&registry);
        n2.set_registry(&registry);
    }

    Network& net(const std::string& id) { return id == "N1" ? n1 : n2; }
    CrossChainManager& mgr(const std::string& id) { return id == "N1" ? m1 : m2; }

    void commit_local(const std::string& id, uint64_t tick, const std::string& tag) {
        auto& n = net(id);
        auto tx = Transaction::make(to_bytes(tag), TxKind::local, id, tick);
        REQUIRE(n.commit_transaction(tx, *n.endorse(tx)).committed);
        n.seal_pending();
    }

    Hash256 run_cross(uint64_t tick, const std::string& payload) {
        auto res = m1.initiate(n1, "N2", to_bytes(payload), tick, 30);
        REQUIRE(res.ok);
        auto acc = m2.accept_and_receipt(n2, res.message, tick + 1, registry);
        REQUIRE(acc.ok);
        REQUIRE(m1.complete_set(n1, acc.response, tick + 2, registry) ==
                CrossChainManager::CompleteOutcome::completed);
        n1.seal_pending();
        n2.seal_pending();
        return res.set_id;
    }

    struct Published {
        std::string cid;
        DerivedKey key;
        Snapshot snapshot;
    };

    Published publish(const std::string& id, uint64_t tick,
                      bool corrupt_signature = false) {
        auto& n = net(id);
        auto cap = capture_snapshot(n, mgr(id), "p1", last_height[id], tick, last_tick[id]);
        REQUIRE(cap.ok);
        last_height[id] = cap.snapshot.to_height;
        last_tick[id] = static_cast<int64_t>(tick);
        if (corrupt_signature) {
            REQUIRE(!cap.snapshot.completed_sets.empty());
            cap.snapshot.completed_sets[0]
                .set.receipt_endorsements->signatures[0]
                .signature[4] ^= 1;
        }
        auto assembled = assemble_archive({cap.snapshot});
        REQUIRE(assembled.ok);
        auto key = derive_key(rng.bytes(32), rng.array<8>(), 64);
        REQUIRE(key);
        auto sealed = encrypt_archive(assembled.bytes, *key, rng);
        auto put = store.put(sealed.serialize(), swarm.secret, id);
        REQUIRE(put.ok);
        return {put.cid, *key, cap.snapshot};
    }

    void ingest(const std::string& id, const Published& pub, uint64_t tick) {
        auto res = auditor.ingest_snapshot(store, id, pub.cid, pub.key.key, registry, tick);
        REQUIRE(res.ok);
    }
};

}  // namespace

TEST_CASE("ingest validates fetch, decryption, and archived endorsements") {
    AuditWorld w;
    auto set_id = w.run_cross(1, "asset");
    (void)set_id;
    auto pub = w.publish("N1", 5);

    SUBCASE("valid publication indexes one archive") {
        auto res = w.auditor.ingest_snapshot(w.store, "N1", pub.cid, pub.key.key, w.registry, 6);
        CHECK(res.ok);
        REQUIRE(w.auditor.index().count("N1"));
        CHECK(w.auditor.index().at("N1").size() == 1);
    }
    SUBCASE("wrong key: auth_failure, index unchanged") {
        auto wrong = pub.key.key;
        wrong[0] ^= 1;
        auto res = w.auditor.ingest_snapshot(w.store, "N1", pub.cid, wrong, w.registry, 6);
        CHECK_FALSE(res.ok);
        CHECK(res.err == IngestError::auth_failure);
        CHECK(w.auditor.index().empty());
    }
    SUBCASE("unknown cid: fetch_failure") {
        auto res = w.auditor.ingest_snapshot(w.store, "N1", "cid1-" + std::string(64, 'a'),
                                             pub.key.key, w.registry, 6);
        CHECK_FALSE(res.ok);
        CHECK(res.err == IngestError::fetch_failure);
    }
    SUBCASE("corrupted archived signature: quarantined as malformed") {
        AuditWorld w2;
        w2.run_cross(1, "asset");
        auto bad = w2.publish("N1", 5, /*corrupt_signature=*/true);
        auto res =
            w2.auditor.ingest_snapshot(w2.store, "N1", bad.cid, bad.key.key, w2.registry, 6);
        CHECK_FALSE(res.ok);
        CHECK(res.err == IngestError::malformed_archive);
        CHECK(w2.auditor.index().empty());
        REQUIRE(w2.auditor.quarantined().size() == 1);
        CHECK(w2.auditor.quarantined()[0] == bad.cid);
    }
}

TEST_CASE("dispute resolution implements both proof cases") {
    AuditWorld w;
    auto set_id = w.run_cross(1, "the goods");
    w.commit_local("N1", 4, "pad");
    w.commit_local("N2", 4, "pad");
    w.ingest("N1", w.publish("N1", 6), 7);
    w.ingest("N2", w.publish("N2", 6), 7);

    SUBCASE("legitimate demand with archived completed set: upheld, case 1") {
        DisputeCase dc;
        dc.claimant = "N1";
        dc.respondent = "N2";
        dc.kind = ClaimKind::demand_fulfillment;
        dc.reference.set_id = set_id;
        auto v = w.auditor.resolve_dispute(dc, w.registry);
        CHECK(v.outcome == VerdictOutcome::claim_upheld);
        CHECK(v.rationale == VerdictRationale::case1_valid_receipt);
        REQUIRE(v.evidence.size() == 2);  // cited from both networks' archives
        CHECK(v.evidence[0].network_id != v.evidence[1].network_id);
        for (const auto& e : v.evidence) CHECK(e.set_id == set_id);
    }
    SUBCASE("denier's own signed receipt is archived: refuted, case 1") {
        DisputeCase dc;
        dc.claimant = "N2";  // the destination denies having received the asset
        dc.respondent = "N1";
        dc.kind = ClaimKind::deny_receipt;
        dc.reference.set_id = set_id;
        auto v = w.auditor.resolve_dispute(dc, w.registry);
        CHECK(v.outcome == VerdictOutcome::claim_refuted);
        CHECK(v.rationale == VerdictRationale::case1_valid_receipt);
        CHECK_FALSE(v.evidence.empty());
    }
    SUBCASE("fabricated demand: refuted, case 2") {
        DisputeCase dc;
        dc.claimant = "N1";
        dc.respondent = "N2";
        dc.kind = ClaimKind::demand_fulfillment;
        dc.reference.payload_digest = sha256(to_bytes("never happened"));
        dc.reference.tick_span = {{0, 5}};
        auto v = w.auditor.resolve_dispute(dc, w.registry);
        CHECK(v.outcome == VerdictOutcome::claim_refuted);
        CHECK(v.rationale == VerdictRationale::case2_no_receipt);
        CHECK(v.evidence.empty());
    }
    SUBCASE("payload digest matching within the claimed span") {
        DisputeCase dc;
        dc.claimant = "N1";
        dc.respondent = "N2";
        dc.kind = ClaimKind::demand_fulfillment;
        dc.reference.payload_digest = sha256(to_bytes("the goods"));
        dc.reference.tick_span = {{0, 5}};
        CHECK(w.auditor.resolve_dispute(dc, w.registry).outcome ==
              VerdictOutcome::claim_upheld);
        dc.reference.tick_span = {{3, 5}};  // invoke tick 1 outside span
        CHECK(w.auditor.resolve_dispute(dc, w.registry).outcome ==
              VerdictOutcome::claim_refuted);
    }
    SUBCASE("verdicts are deterministic and exportable") {
        DisputeCase dc;
        dc.claimant = "N1";
        dc.respondent = "N2";
        dc.kind = ClaimKind::demand_fulfillment;
        dc.reference.set_id = set_id;
        auto a = w.auditor.resolve_dispute(dc, w.registry);
        auto b = w.auditor.resolve_dispute(dc, w.registry);
        CHECK(dump_canonical(a.to_json()) == dump_canonical(b.to_json()));
        CHECK(a.to_json()["outcome"] == "claim_upheld");
    }
}

TEST_CASE("uncovered spans yield indeterminate verdicts") {
    AuditWorld w;
    auto set_id = w.run_cross(1, "x");
    w.ingest("N1", w.publish("N1", 5), 6);
    // N2 never published anything

    DisputeCase dc;
    dc.claimant = "N1";
    dc.respondent = "N2";
    dc.kind = ClaimKind::demand_fulfillment;
    dc.reference.set_id = set_id;
    auto v = w.auditor.resolve_dispute(dc, w.registry);
    CHECK(v.outcome == VerdictOutcome::indeterminate);
    CHECK(v.rationale == VerdictRationale::span_not_covered);
}

TEST_CASE("cross_check_archives finds one-sided sets") {
    AuditWorld w;
    auto shared_set = w.run_cross(1, "both see this");

    SUBCASE("honest run: empty report") {
        w.ingest("N1", w.publish("N1", 6), 7);
        w.ingest("N2", w.publish("N2", 6), 7);
        auto report = w.auditor.cross_check_archives("N1", "N2", {0, 6}, w.registry);
        REQUIRE(report.covered);
        CHECK(report.only_in_a.empty());
        CHECK(report.only_in_b.empty());
        CHECK(report.endorsement_mismatches.empty());
    }
    SUBCASE("data loss before snapshot: missing sets listed") {
        // N2 loses everything before publishing; its archive lacks the set
        w.ingest("N1", w.publish("N1", 6), 7);
        w.n2.crash_with_data_loss(-1);
        w.n2.revive_all();
        w.m2 = CrossChainManager{"N2"};  // records lost with the ledger
        w.commit_local("N2", 8, "fresh");
        w.ingest("N2", w.publish("N2", 9), 10);
        w.commit_local("N1", 9, "pad2");
        w.ingest("N1", w.publish("N1", 10), 10);  // N1 coverage through tick 9
        auto report = w.auditor.cross_check_archives("N1", "N2", {0, 9}, w.registry);
        REQUIRE(report.covered);
        REQUIRE(report.only_in_a.size() == 1);
        CHECK(report.only_in_a[0] == shared_set);
        CHECK(report.only_in_b.empty());
    }
}
