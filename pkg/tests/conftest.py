"""Shared fixtures and independent reference oracles.

The reference functions here deliberately avoid the package's group and
oracle code: they work on plain integers with raw hashlib calls, so a
test comparing the two routes actually compares two implementations.
"""

import hashlib
import random

import pytest

from idak import DEFAULT_Q, GroupParams


@pytest.fixture
def p101() -> GroupParams:
    return GroupParams(101)


@pytest.fixture
def big() -> GroupParams:
    return GroupParams(DEFAULT_Q)


def _h(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def _scalar(digest: bytes, q: int) -> int:
    return 1 + int.from_bytes(digest, "big") % (q - 1)


def _ser(exp: int) -> bytes:
    return exp.to_bytes(8, "big")


def _frame(identity: str) -> bytes:
    raw = identity.encode("utf-8")
    return len(raw).to_bytes(4, "big") + raw


def reference_identity_exponent(identity: str, q: int) -> int:
    return _scalar(_h(b"H1G" + identity.encode("utf-8")), q)


def reference_session_key(
    variant: str,
    q: int,
    h: int,
    alpha: int,
    id_init: str,
    id_resp: str,
    x_init: int,
    x_resp: int,
) -> bytes:
    """Recompute a session key purely from exponents and raw hashlib."""
    a = reference_identity_exponent(id_init, q)
    b = reference_identity_exponent(id_resp, q)
    r_init, r_resp = a * x_init % q, b * x_resp % q
    if variant == "original":
        s_init = _scalar(_h(b"PI0" + _ser(r_init) + _ser(r_resp)), q)
        s_resp = _scalar(_h(b"PI0" + _ser(r_resp) + _ser(r_init)), q)
    else:
        s_init = _scalar(
            _h(b"PI1" + _frame(id_init) + _frame(id_resp) + _ser(r_init) + _ser(r_resp)), q
        )
        s_resp = _scalar(
            _h(b"PI1" + _frame(id_resp) + _frame(id_init) + _ser(r_resp) + _ser(r_init)), q
        )
    sigma = (
        a * b % q * alpha % q * h % q * ((x_init + s_init) % q) % q * ((x_resp + s_resp) % q) % q
    )
    if variant == "original":
        return _h(b"KDF0" + _ser(sigma))
    return _h(
        b"KDF" + _frame(id_init) + _frame(id_resp) + _ser(r_init) + _ser(r_resp) + _ser(sigma)
    )


def reference_handshake_key(variant: str, seed: int, q: int) -> bytes:
    """Replays the documented draw order (master key, initiator scalar,
    responder scalar) and hands off to the exponent-level reference."""
    rng = random.Random(seed)
    alpha = rng.randrange(1, q)
    x = rng.randrange(1, q)
    y = rng.randrange(1, q)
    return reference_session_key(variant, q, 1, alpha, "alice", "bob", x, y)


def reference_freshness(matched: bool, queries: set[str]) -> tuple[bool, str | None]:
    """Direct transcription of the freshness definition as a boolean
    formula over query atoms, checked clause by clause."""
    if "SessionKeyReveal(sid)" in queries or (matched and "SessionKeyReveal(sid*)" in queries):
        return False, "1"
    if matched:
        if "PrivateKeyReveal(owner)" in queries and "EphemeralKeyReveal(sid)" in queries:
            return False, "2a"
        if "PrivateKeyReveal(peer)" in queries and "EphemeralKeyReveal(sid*)" in queries:
            return False, "2b"
    else:
        if "PrivateKeyReveal(owner)" in queries and "EphemeralKeyReveal(sid)" in queries:
            return False, "3a"
        if "PrivateKeyReveal(peer)" in queries:
            return False, "3b"
    return True, None
