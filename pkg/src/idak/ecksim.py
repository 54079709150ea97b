"""Adversarial network simulation and the distinguishing experiment.

The adversary owns the wire. Sessions only ever complete through
`deliver`, with whatever element the adversary chooses to hand over, and
`deliver` returns nothing: keys stay inside the world unless a reveal
query exposes them. Reveal queries (ephemeral scalar, long-term key,
session key, extraction of fresh identities) are appended to a query
log; the freshness rule is a pure function of that log.

Freshness of a completed session sid with owner A and intended peer B,
writing sid* for its matching session when one exists, fails exactly
when one of these holds:

    1    the session key of sid or sid* was revealed
    2a   (sid* exists) A's long-term key and sid's ephemeral both revealed
    2b   (sid* exists) B's long-term key and sid*'s ephemeral both revealed
    3a   (no sid*)     A's long-term key and sid's ephemeral both revealed
    3b   (no sid*)     B's long-term key revealed at all

The test/guess pair plays real-or-random: `test` flips a hidden bit and
returns either the real session key or 32 uniform bytes; `guess` wins
only when the bit is named correctly AND the test session is still fresh
at guess time, so reveals made after the test query still disqualify it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .errors import CapabilityError, QueryError, SessionStateError
from .group import DEFAULT_Q, GElem, GroupParams, random_scalar
from .kgc import KGC, IdentityKey, SystemParams
from .oracles import DEFAULT_DIGEST, KEY_BYTES
from .protocol import (
    Role,
    Session,
    Status,
    Variant,
    complete_session,
    session_id,
    sessions_match,
    start_session,
)


class QueryKind(Enum):
    EPHEMERAL_KEY_REVEAL = "EphemeralKeyReveal"
    PRIVATE_KEY_REVEAL = "PrivateKeyReveal"
    SESSION_KEY_REVEAL = "SessionKeyReveal"
    EXTRACT = "Extract"
    TEST = "Test"
    GUESS = "Guess"


@dataclass(frozen=True)
class QueryRecord:
    kind: QueryKind
    session: int | None = None
    identity: str | None = None
    bit: int | None = None

    def to_json(self) -> dict:
        record: dict = {"query": self.kind.value}
        if self.session is not None:
            record["session"] = self.session
        if self.identity is not None:
            record["identity"] = self.identity
        if self.bit is not None:
            record["bit"] = self.bit
        return record


@dataclass(frozen=True)
class FreshnessVerdict:
    fresh: bool
    violated_clause: str | None = None

    def to_json(self) -> dict:
        return {"fresh": self.fresh, "violated_clause": self.violated_clause}


class Outcome(Enum):
    WIN = "win"
    LOSE = "lose"
    INVALID = "invalid"


class World:
    """One experiment instance: a KGC, honest parties, their sessions,
    and the adversary's query log. Deterministic given (seed, script)."""

    def __init__(
        self,
        seed: int,
        variant: Variant = Variant.HARDENED,
        q: int = DEFAULT_Q,
        digest: str = DEFAULT_DIGEST,
        master_key_reveal: bool = False,
    ) -> None:
        self.seed = seed
        self.variant = variant
        self.rng = random.Random(seed)
        self.kgc = KGC(self.rng, GroupParams(q), digest, master_key_reveal=master_key_reveal)
        self.params: SystemParams = self.kgc.params
        self.log: list[QueryRecord] = []
        self._parties: dict[str, IdentityKey] = {}
        self._sessions: dict[int, Session] = {}
        self._next_handle = 1
        self._test_handle: int | None = None
        self._test_bit: int | None = None
        self._guess_bit: int | None = None
        self._outcome: Outcome | None = None

    # -- party and session management -------------------------------------

    def add_party(self, identity: str) -> None:
        """Register an honest party. Not an adversary query, not logged."""
        self._parties[identity] = self.kgc.extract(identity)

    def activate(self, owner: str, peer: str, role: Role) -> tuple[int, GElem]:
        """Open a session at a registered party, returning its handle and
        the outgoing element (which the adversary may or may not deliver)."""
        keys = self._party_keys(owner)
        session, r_out = start_session(self.params, keys, peer, role, self.variant, self.rng)
        handle = self._next_handle
        self._next_handle += 1
        self._sessions[handle] = session
        return handle, r_out

    def deliver(self, handle: int, element: GElem) -> None:
        """Hand an element of the adversary's choice to a session. The
        session completes (or rejects); nothing is returned."""
        session = self._session(handle)
        complete_session(session, element, self._party_keys(session.owner), self.params)

    def matching_session(self, handle: int) -> int | None:
        """Handle of the first accepted session (creation order) matching
        crosswise, or None."""
        own = session_id(self._session(handle))
        for other_handle, other in self._sessions.items():
            if other_handle == handle or other.status is not Status.ACCEPTED:
                continue
            if sessions_match(own, session_id(other)):
                return other_handle
        return None

    def session(self, handle: int) -> Session:
        return self._session(handle)

    def _session(self, handle: int) -> Session:
        try:
            return self._sessions[handle]
        except KeyError:
            raise QueryError(f"unknown session handle {handle}") from None

    def _party_keys(self, identity: str) -> IdentityKey:
        try:
            return self._parties[identity]
        except KeyError:
            raise QueryError(f"unknown party {identity!r}") from None

    # -- adversary reveal queries ------------------------------------------

    def eph_reveal(self, handle: int) -> int:
        """Reveal a session's ephemeral scalar."""
        session = self._session(handle)
        self.log.append(QueryRecord(QueryKind.EPHEMERAL_KEY_REVEAL, session=handle))
        return session.x

    def key_reveal(self, handle: int) -> bytes:
        """Reveal an accepted session's key."""
        session = self._session(handle)
        if session.status is not Status.ACCEPTED:
            raise SessionStateError("session key exists only after acceptance")
        self.log.append(QueryRecord(QueryKind.SESSION_KEY_REVEAL, session=handle))
        return session.key

    def private_reveal(self, identity: str) -> IdentityKey:
        """Reveal a registered party's long-term key material."""
        keys = self._party_keys(identity)
        self.log.append(QueryRecord(QueryKind.PRIVATE_KEY_REVEAL, identity=identity))
        return keys

    def adv_extract(self, identity: str) -> IdentityKey:
        """Let the adversary register its own identity with the KGC and
        collect the key material. Logged as an extraction, which the
        freshness rule ignores for sessions the identity does not own."""
        if identity in self._parties:
            raise QueryError(f"{identity!r} is already a registered party")
        keys = self.kgc.extract(identity)
        self.log.append(QueryRecord(QueryKind.EXTRACT, identity=identity))
        return keys

    # -- freshness ----------------------------------------------------------

    def is_fresh(self, handle: int) -> FreshnessVerdict:
        """Evaluate the freshness rule for an accepted session against the
        current query log. Clauses are checked in order 1, 2a/3a, 2b/3b
        and the first violated one is reported."""
        session = self._session(handle)
        if session.status is not Status.ACCEPTED:
            raise SessionStateError("freshness is defined only for accepted sessions")
        star = self.matching_session(handle)

        def revealed(kind: QueryKind, target: int) -> bool:
            return any(r.kind is kind and r.session == target for r in self.log)

        def corrupted(identity: str) -> bool:
            return any(
                r.kind is QueryKind.PRIVATE_KEY_REVEAL and r.identity == identity
                for r in self.log
            )

        if revealed(QueryKind.SESSION_KEY_REVEAL, handle) or (
            star is not None and revealed(QueryKind.SESSION_KEY_REVEAL, star)
        ):
            return FreshnessVerdict(False, "1")
        if star is not None:
            if corrupted(session.owner) and revealed(QueryKind.EPHEMERAL_KEY_REVEAL, handle):
                return FreshnessVerdict(False, "2a")
            if corrupted(session.peer) and revealed(QueryKind.EPHEMERAL_KEY_REVEAL, star):
                return FreshnessVerdict(False, "2b")
        else:
            if corrupted(session.owner) and revealed(QueryKind.EPHEMERAL_KEY_REVEAL, handle):
                return FreshnessVerdict(False, "3a")
            if corrupted(session.peer):
                return FreshnessVerdict(False, "3b")
        return FreshnessVerdict(True)

    # -- the distinguishing game --------------------------------------------

    def test(self, handle: int) -> bytes:
        """Flip the hidden bit and answer with the real session key (bit 0)
        or 32 uniform bytes (bit 1). Allowed once per experiment."""
        if self._test_handle is not None:
            raise QueryError("only one test query is allowed")
        session = self._session(handle)
        if session.status is not Status.ACCEPTED:
            raise SessionStateError("only an accepted session can be tested")
        self._test_handle = handle
        self._test_bit = self.rng.getrandbits(1)
        self.log.append(QueryRecord(QueryKind.TEST, session=handle))
        if self._test_bit == 0:
            return session.key
        return self.rng.randbytes(KEY_BYTES)

    def guess(self, bit: int) -> Outcome:
        """Commit to a bit. Wins only on a correct bit AND a test session
        that is fresh right now; an unfresh test session invalidates the
        experiment whatever the bit says."""
        if self._test_handle is None:
            raise QueryError("guess requires a prior test query")
        if self._outcome is not None:
            raise QueryError("only one guess is allowed")
        if bit not in (0, 1):
            raise QueryError("guess bit must be 0 or 1")
        self._guess_bit = bit
        self.log.append(QueryRecord(QueryKind.GUESS, bit=bit))
        verdict = self.is_fresh(self._test_handle)
        if not verdict.fresh:
            self._outcome = Outcome.INVALID
        elif bit == self._test_bit:
            self._outcome = Outcome.WIN
        else:
            self._outcome = Outcome.LOSE
        return self._outcome

    def experiment_report(self, adversary: str) -> dict:
        """JSON-ready record of a finished experiment."""
        test_session = None
        freshness = None
        if self._test_handle is not None:
            test_session = session_id(self._session(self._test_handle)).to_json()
            freshness = self.is_fresh(self._test_handle).to_json()
        return {
            "seed": self.seed,
            "variant": self.variant.value,
            "adversary": adversary,
            "query_log": [record.to_json() for record in self.log],
            "test_session": test_session,
            "hidden_bit": self._test_bit,
            "guess": self._guess_bit,
            "verdict": self._outcome.value if self._outcome else None,
            "freshness": freshness,
        }


def run_honest_exchange(world: World, initiator: str, responder: str) -> tuple[int, int]:
    """Faithful delivery in both directions; returns the two handles."""
    h_init, r_init = world.activate(initiator, responder, Role.INITIATOR)
    h_resp, r_resp = world.activate(responder, initiator, Role.RESPONDER)
    world.deliver(h_resp, r_init)
    world.deliver(h_init, r_resp)
    return h_init, h_resp


def run_random_guess_adversary(
    variant: Variant, seed: int, q: int = DEFAULT_Q
) -> dict:
    """Calibration probe: honest run, test, then a coin-flip guess. Over
    many seeds the win rate must sit at one half."""
    world = World(seed, variant, q)
    world.add_party("alice")
    world.add_party("bob")
    h_init, _ = run_honest_exchange(world, "alice", "bob")
    world.test(h_init)
    world.guess(world.rng.getrandbits(1))
    return world.experiment_report("random-guess")


def run_key_reveal_violator(variant: Variant, seed: int, q: int = DEFAULT_Q) -> dict:
    """Calibration probe for clause 1: reveal the test session's key after
    the test query, then guess the bit correctly. The reveal must turn
    even a correct guess into an invalid experiment."""
    world = World(seed, variant, q)
    world.add_party("alice")
    world.add_party("bob")
    h_init, _ = run_honest_exchange(world, "alice", "bob")
    answer = world.test(h_init)
    real_key = world.key_reveal(h_init)
    world.guess(0 if answer == real_key else 1)
    return world.experiment_report("key-reveal-violator")


_ATOMS_MATCHED = (
    "SessionKeyReveal(sid)",
    "SessionKeyReveal(sid*)",
    "PrivateKeyReveal(owner)",
    "PrivateKeyReveal(peer)",
    "EphemeralKeyReveal(sid)",
    "EphemeralKeyReveal(sid*)",
)
_ATOMS_UNMATCHED = (
    "SessionKeyReveal(sid)",
    "PrivateKeyReveal(owner)",
    "PrivateKeyReveal(peer)",
    "EphemeralKeyReveal(sid)",
)


def freshness_truth_table(
    seed: int = 0, variant: Variant = Variant.HARDENED, q: int = DEFAULT_Q
) -> list[dict]:
    """Exhaustive freshness enumeration over real worlds.

    For each branch (matching session present or absent) and each subset
    of the relevant reveal queries, a fresh world is built, the queries
    are issued for real, and the implementation verdict is recorded.
    2^6 matched rows plus 2^4 unmatched rows, 80 in total.
    """
    rows: list[dict] = []
    for matched in (True, False):
        atoms = _ATOMS_MATCHED if matched else _ATOMS_UNMATCHED
        for mask in range(1 << len(atoms)):
            chosen = [atom for i, atom in enumerate(atoms) if mask >> i & 1]
            world = World(seed, variant, q)
            world.add_party("alice")
            world.add_party("bob")
            if matched:
                h_sid, h_star = run_honest_exchange(world, "alice", "bob")
            else:
                h_sid, r_sid = world.activate("alice", "bob", Role.INITIATOR)
                h_other, r_other = world.activate("bob", "alice", Role.RESPONDER)
                # tampered response: alice accepts a transcript bob never saw
                world.deliver(h_sid, r_other * world.params.group.g)
                world.deliver(h_other, r_sid)
                h_star = None
            for atom in chosen:
                if atom == "SessionKeyReveal(sid)":
                    world.key_reveal(h_sid)
                elif atom == "SessionKeyReveal(sid*)":
                    world.key_reveal(h_star)
                elif atom == "PrivateKeyReveal(owner)":
                    world.private_reveal("alice")
                elif atom == "PrivateKeyReveal(peer)":
                    world.private_reveal("bob")
                elif atom == "EphemeralKeyReveal(sid)":
                    world.eph_reveal(h_sid)
                elif atom == "EphemeralKeyReveal(sid*)":
                    world.eph_reveal(h_star)
            verdict = world.is_fresh(h_sid)
            rows.append(
                {
                    "matching_session_exists": matched,
                    "queries": chosen,
                    "fresh": verdict.fresh,
                    "violated_clause": verdict.violated_clause,
                }
            )
    return rows
