"""Adversarial world: queries, delivery, freshness, and the game."""

import random

import pytest

from idak import (
    Outcome,
    Role,
    Status,
    Variant,
    World,
    dlog,
    freshness_truth_table,
    pair,
    run_honest_exchange,
    run_key_reveal_violator,
    run_random_guess_adversary,
)
from idak.errors import QueryError, SessionStateError

from conftest import reference_freshness


def make_world(seed=0, variant=Variant.HARDENED, q=1_000_003):
    world = World(seed, variant, q)
    world.add_party("alice")
    world.add_party("bob")
    return world


def test_faithful_delivery_agrees():
    for seed in range(100):
        world = make_world(seed)
        h_init, h_resp = run_honest_exchange(world, "alice", "bob")
        assert world.session(h_init).status is Status.ACCEPTED
        assert world.matching_session(h_init) == h_resp
        assert world.key_reveal(h_init) == world.key_reveal(h_resp)


def test_deliver_returns_nothing():
    world = make_world()
    h_init, r_init = world.activate("alice", "bob", Role.INITIATOR)
    h_resp, r_resp = world.activate("bob", "alice", Role.RESPONDER)
    assert world.deliver(h_resp, r_init) is None
    assert world.deliver(h_init, r_resp) is None


def test_substituted_delivery_breaks_agreement():
    world = make_world(3)
    h_init, r_init = world.activate("alice", "bob", Role.INITIATOR)
    h_resp, r_resp = world.activate("bob", "alice", Role.RESPONDER)
    world.deliver(h_resp, r_init)
    world.deliver(h_init, r_resp * world.params.group.g)  # adversary tampers
    assert world.session(h_init).status is Status.ACCEPTED
    assert world.key_reveal(h_init) != world.key_reveal(h_resp)
    assert world.matching_session(h_init) is None


def test_deliver_to_accepted_session_fails():
    world = make_world()
    h_init, h_resp = run_honest_exchange(world, "alice", "bob")
    with pytest.raises(SessionStateError):
        world.deliver(h_init, world.params.group.g**5)


def test_unknown_handles_and_identities():
    world = make_world()
    with pytest.raises(QueryError):
        world.eph_reveal(99)
    with pytest.raises(QueryError):
        world.deliver(99, world.params.group.g)
    with pytest.raises(QueryError):
        world.private_reveal("mallory")
    with pytest.raises(QueryError):
        world.activate("mallory", "bob", Role.INITIATOR)


def test_eph_reveal_returns_the_scalar():
    world = make_world(5)
    h_init, r_init = world.activate("alice", "bob", Role.INITIATOR)
    x = world.eph_reveal(h_init)
    assert dlog(r_init) == dlog(world.private_reveal("alice").public_key) * x % world.params.group.q


def test_private_reveal_returns_long_term_material():
    world = make_world(5)
    keys = world.private_reveal("bob")
    g = world.params.group.g
    alpha = dlog(keys.private_key) * pow(dlog(keys.public_key), -1, world.params.group.q)
    assert pair(keys.private_key, g) == pair(keys.public_key, g) ** alpha


def test_key_reveal_requires_acceptance():
    world = make_world()
    h_init, _ = world.activate("alice", "bob", Role.INITIATOR)
    with pytest.raises(SessionStateError):
        world.key_reveal(h_init)


def test_adv_extract_enables_injection():
    """After extracting eve, the adversary can have bob accept a session
    it fully controls."""
    world = make_world(8)
    eve = world.adv_extract("eve")
    t = 12345
    h_resp, r_resp = world.activate("bob", "eve", Role.RESPONDER)
    world.deliver(h_resp, eve.public_key**t)
    assert world.session(h_resp).status is Status.ACCEPTED
    assert world.session(h_resp).peer == "eve"


def test_adv_extract_rejects_registered_parties():
    world = make_world()
    with pytest.raises(QueryError):
        world.adv_extract("alice")


def test_is_fresh_on_unaccepted_session_fails():
    world = make_world()
    h_init, _ = world.activate("alice", "bob", Role.INITIATOR)
    with pytest.raises(SessionStateError):
        world.is_fresh(h_init)


def test_empty_log_is_fresh():
    world = make_world()
    h_init, _ = run_honest_exchange(world, "alice", "bob")
    verdict = world.is_fresh(h_init)
    assert verdict.fresh and verdict.violated_clause is None


def test_crosswise_reveals_stay_fresh():
    """Owner corruption plus the matching session's ephemeral is the
    allowed crosswise combination."""
    world = make_world()
    h_init, h_resp = run_honest_exchange(world, "alice", "bob")
    world.private_reveal("alice")
    world.eph_reveal(h_resp)
    assert world.is_fresh(h_init).fresh


def test_peer_corruption_alone_kills_unmatched_sessions():
    world = make_world()
    h_init, r_init = world.activate("alice", "bob", Role.INITIATOR)
    h_resp, r_resp = world.activate("bob", "alice", Role.RESPONDER)
    world.deliver(h_init, r_resp * world.params.group.g)
    world.deliver(h_resp, r_init)
    world.private_reveal("bob")
    verdict = world.is_fresh(h_init)
    assert not verdict.fresh and verdict.violated_clause == "3b"


def test_truth_table_matches_reference():
    """Implementation freshness equals the clause-by-clause reference on
    all 80 enumerated worlds."""
    rows = freshness_truth_table()
    assert len(rows) == 80
    matched_rows = [r for r in rows if r["matching_session_exists"]]
    unmatched_rows = [r for r in rows if not r["matching_session_exists"]]
    assert len(matched_rows) == 64 and len(unmatched_rows) == 16
    for row in rows:
        fresh, clause = reference_freshness(
            row["matching_session_exists"], set(row["queries"])
        )
        assert row["fresh"] == fresh, row
        assert row["violated_clause"] == clause, row


def test_matching_tiebreak_on_replayed_transcripts():
    """At q=101 ephemeral collisions are easy to farm: when two accepted
    sessions share a transcript, the first in creation order wins."""
    world = World(1, Variant.HARDENED, 101)
    world.add_party("alice")
    world.add_party("bob")
    h_init, r_init = world.activate("alice", "bob", Role.INITIATOR)
    seen = {}
    duplicate = None
    for _ in range(200):
        handle, r_out = world.activate("bob", "alice", Role.RESPONDER)
        if r_out in seen:
            duplicate = (seen[r_out], handle)
            break
        seen[r_out] = handle
    assert duplicate is not None
    first, second = duplicate
    world.deliver(first, r_init)
    world.deliver(second, r_init)
    world.deliver(h_init, world.session(first).r_out)
    assert world.matching_session(h_init) == first


def test_game_mechanics_and_query_discipline():
    world = make_world(6)
    h_init, _ = run_honest_exchange(world, "alice", "bob")
    with pytest.raises(QueryError):
        world.guess(0)  # guess before test
    answer = world.test(h_init)
    assert len(answer) == 32
    with pytest.raises(QueryError):
        world.test(h_init)  # second test
    with pytest.raises(QueryError):
        world.guess(2)
    outcome = world.guess(0)
    assert outcome in (Outcome.WIN, Outcome.LOSE)
    with pytest.raises(QueryError):
        world.guess(0)  # second guess


def test_test_answer_is_real_or_random():
    """With bit 0 the answer is the session key; with bit 1 it is not."""
    seen = set()
    for seed in range(50):
        world = make_world(seed)
        h_init, _ = run_honest_exchange(world, "alice", "bob")
        real = world.session(h_init).key
        answer = world.test(h_init)
        bit = world._test_bit
        seen.add(bit)
        assert (answer == real) == (bit == 0)
    assert seen == {0, 1}


def test_test_requires_accepted_session():
    world = make_world()
    h_init, _ = world.activate("alice", "bob", Role.INITIATOR)
    with pytest.raises(SessionStateError):
        world.test(h_init)


def test_guess_time_freshness_rules():
    """Revealing the test session key after the test query invalidates
    the experiment even on a correct bit."""
    for seed in range(20):
        report = run_key_reveal_violator(Variant.HARDENED, seed)
        assert report["verdict"] == "invalid"
        assert report["freshness"] == {"fresh": False, "violated_clause": "1"}


def test_experiment_determinism():
    r1 = run_random_guess_adversary(Variant.HARDENED, 42)
    r2 = run_random_guess_adversary(Variant.HARDENED, 42)
    assert r1 == r2
    assert r1["adversary"] == "random-guess"
    assert r1["verdict"] in ("win", "lose")


def test_random_guess_win_rate_rough():
    wins = sum(
        run_random_guess_adversary(Variant.HARDENED, seed)["verdict"] == "win"
        for seed in range(500)
    )
    assert 0.40 <= wins / 500 <= 0.60


def test_world_determinism_full_log():
    def script(seed):
        world = make_world(seed)
        h_init, h_resp = run_honest_exchange(world, "alice", "bob")
        world.eph_reveal(h_init)
        world.private_reveal("bob")
        world.test(h_resp)
        world.guess(1)
        return world.experiment_report("scripted")

    assert script(11) == script(11)
    assert script(11) != script(12)


def test_report_shape():
    world = make_world(2)
    h_init, _ = run_honest_exchange(world, "alice", "bob")
    world.test(h_init)
    world.guess(0)
    report = world.experiment_report("shape-check")
    assert set(report) == {
        "seed",
        "variant",
        "adversary",
        "query_log",
        "test_session",
        "hidden_bit",
        "guess",
        "verdict",
        "freshness",
    }
    assert report["query_log"][0] == {"query": "Test", "session": h_init}
    assert report["test_session"]["owner"] == "alice"
    assert report["test_session"]["role"] == "initiator"
