"""Two-pass key agreement: session state machine and key computation.

Each party sends one element R = public_key^x for a fresh scalar x. On
receipt of the peer's element the owner derives a shared pairing value
and feeds it through the variant's key derivation:

    original   s-values hash the ordered message pair only; the session
               key is a digest of the shared value alone.
    hardened   s-values and the key derivation additionally bind both
               identities, always in initiator-first order.

Writing s_i / s_r for the initiator and responder scalars, the initiator
pairs (peer_base^s_r * r_resp) with private_key^((x + s_i) * h) and the
responder pairs (peer_base^s_i * r_init) with private_key^((x + s_r) * h).
On honest runs both products land on the exponent

    base_init * base_resp * master * h * (x_init + s_i) * (x_resp + s_r)

so the two sides agree. The co-factor h is applied at exchange time on
the private-key side; extraction itself never includes it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    EmptyIdentityError,
    GroupMismatchError,
    InvalidElementError,
    SessionStateError,
)
from .group import GElem, GTElem, pair, random_scalar
from .kgc import IdentityKey, SystemParams
from .oracles import (
    bound_scalar,
    derive_key_bound,
    derive_key_plain,
    hash_to_group,
    key_digest,
    transcript_scalar,
)


class Variant(Enum):
    ORIGINAL = "original"
    HARDENED = "hardened"


class Role(Enum):
    INITIATOR = "initiator"
    RESPONDER = "responder"


class Status(Enum):
    ACTIVE = "active"
    ACCEPTED = "accepted"


@dataclass
class Session:
    """Mutable per-session state owned by exactly one party."""

    owner: str
    peer: str
    role: Role
    variant: Variant
    x: int
    r_out: GElem
    r_in: GElem | None = None
    status: Status = field(default=Status.ACTIVE)
    key: bytes | None = None


@dataclass(frozen=True)
class SessionId:
    """Value identity of an accepted session: who ran it, against whom,
    in which role, over which transcript (initiator message first)."""

    owner: str
    peer: str
    role: Role
    transcript: tuple[GElem, GElem]

    def to_json(self) -> dict:
        return {
            "owner": self.owner,
            "peer": self.peer,
            "role": self.role.value,
            "transcript": [self.transcript[0].hex(), self.transcript[1].hex()],
        }


def session_scalars(
    variant: Variant,
    id_init: str,
    id_resp: str,
    r_init: GElem,
    r_resp: GElem,
    digest: str,
) -> tuple[int, int]:
    """The (initiator, responder) scalar pair for a transcript. Both
    sides of an honest run compute identical values because the inputs
    are all public."""
    if variant is Variant.ORIGINAL:
        return (
            transcript_scalar(r_init, r_resp, digest),
            transcript_scalar(r_resp, r_init, digest),
        )
    return (
        bound_scalar(id_init, id_resp, r_init, r_resp, digest),
        bound_scalar(id_resp, id_init, r_resp, r_init, digest),
    )


def derive_session_key(
    variant: Variant,
    id_init: str,
    id_resp: str,
    r_init: GElem,
    r_resp: GElem,
    shared: GTElem,
    digest: str,
) -> bytes:
    if variant is Variant.ORIGINAL:
        return derive_key_plain(shared, digest)
    return derive_key_bound(id_init, id_resp, r_init, r_resp, shared, digest)


def start_session(
    params: SystemParams,
    keys: IdentityKey,
    peer: str,
    role: Role,
    variant: Variant,
    rng: random.Random,
) -> tuple[Session, GElem]:
    """Open a session: draw the ephemeral scalar and produce the outgoing
    element public_key^x. The session stays Active until completion."""
    if not peer:
        raise EmptyIdentityError("peer identity must be nonempty")
    x = random_scalar(rng, params.group)
    r_out = keys.public_key**x
    session = Session(keys.identity, peer, role, variant, x, r_out)
    return session, r_out


def complete_session(
    session: Session,
    r_in: GElem,
    keys: IdentityKey,
    params: SystemParams,
) -> bytes:
    """Accept the peer's element and compute the session key.

    Validation happens before any state changes, so a rejected element
    leaves the session Active. The identity element is rejected: it
    would collapse the shared value to a constant.
    """
    if session.status is not Status.ACTIVE:
        raise SessionStateError("session has already accepted")
    if keys.identity != session.owner:
        raise ValueError("key material does not belong to the session owner")
    if not isinstance(r_in, GElem):
        raise InvalidElementError("incoming message is not a source-group element")
    if r_in.params != params.group:
        raise GroupMismatchError("incoming element from a different group instantiation")
    if r_in.is_identity:
        raise InvalidElementError("identity element rejected as an exchange message")

    if session.role is Role.INITIATOR:
        id_init, id_resp = session.owner, session.peer
        r_init, r_resp = session.r_out, r_in
    else:
        id_init, id_resp = session.peer, session.owner
        r_init, r_resp = r_in, session.r_out

    s_init, s_resp = session_scalars(
        session.variant, id_init, id_resp, r_init, r_resp, params.digest
    )
    peer_base = hash_to_group(params.group, session.peer, params.digest)
    h = params.group.h
    if session.role is Role.INITIATOR:
        shared = pair(peer_base**s_resp * r_resp, keys.private_key ** ((session.x + s_init) * h))
    else:
        shared = pair(peer_base**s_init * r_init, keys.private_key ** ((session.x + s_resp) * h))
    key = derive_session_key(
        session.variant, id_init, id_resp, r_init, r_resp, shared, params.digest
    )

    session.r_in = r_in
    session.key = key
    session.status = Status.ACCEPTED
    return key


def session_id(session: Session) -> SessionId:
    """SessionId of an accepted session; raises while it is still Active."""
    if session.status is not Status.ACCEPTED:
        raise SessionStateError("session id is defined only after acceptance")
    if session.role is Role.INITIATOR:
        transcript = (session.r_out, session.r_in)
    else:
        transcript = (session.r_in, session.r_out)
    return SessionId(session.owner, session.peer, session.role, transcript)


def sessions_match(a: SessionId, b: SessionId) -> bool:
    """Crosswise match: each names the other as peer, the roles are
    complementary, and both saw the same ordered transcript."""
    return (
        a.owner == b.peer
        and b.owner == a.peer
        and a.role is not b.role
        and a.transcript == b.transcript
    )


def transcript_record(initiator: Session, responder: Session) -> dict:
    """JSON-ready record of a completed two-party run. Carries key
    digests, never keys: raw keys appear nowhere in transcripts."""
    return {
        "variant": initiator.variant.value,
        "initiator": initiator.owner,
        "responder": responder.owner,
        "r_initiator": initiator.r_out.hex(),
        "r_responder": responder.r_out.hex(),
        "initiator_accepted": initiator.status is Status.ACCEPTED,
        "responder_accepted": responder.status is Status.ACCEPTED,
        "initiator_key_digest": key_digest(initiator.key) if initiator.key else None,
        "responder_key_digest": key_digest(responder.key) if responder.key else None,
    }
