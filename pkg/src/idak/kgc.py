"""Key generation center: master-secret setup and identity key extraction."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CapabilityError
from .group import DEFAULT_Q, GElem, GroupParams, random_scalar
from .oracles import DEFAULT_DIGEST, hash_to_group


@dataclass(frozen=True)
class SystemParams:
    """Everything public a party needs: the group and the digest name."""

    group: GroupParams
    digest: str = DEFAULT_DIGEST


@dataclass(frozen=True)
class IdentityKey:
    """One identity's key material. public_key is the hash-to-group image
    of the identity; private_key is that point raised to the master secret."""

    identity: str
    public_key: GElem
    private_key: GElem


class KGC:
    """Holds the master secret and answers extraction requests.

    Extraction is deliberately unauthenticated: anyone, an adversary
    included, may register any identity and receive its private key.
    That is a protocol assumption, not an oversight, and several attack
    scripts depend on it. The master secret leaves the object only
    through reveal_master_key, which must be enabled at construction.
    """

    def __init__(
        self,
        rng: random.Random,
        group: GroupParams | None = None,
        digest: str = DEFAULT_DIGEST,
        master_key_reveal: bool = False,
    ) -> None:
        group = group if group is not None else GroupParams(DEFAULT_Q)
        self.params = SystemParams(group, digest)
        self._alpha = random_scalar(rng, group)
        self._master_key_reveal = master_key_reveal
        self._registry: dict[str, IdentityKey] = {}

    def extract(self, identity: str) -> IdentityKey:
        """Register an identity and return its key pair. Idempotent: the
        same identity always maps to the same material."""
        existing = self._registry.get(identity)
        if existing is not None:
            return existing
        base = hash_to_group(self.params.group, identity, self.params.digest)
        key = IdentityKey(identity, base, base**self._alpha)
        self._registry[identity] = key
        return key

    def registered_identities(self) -> list[str]:
        """Identities seen so far, in first-extraction order."""
        return list(self._registry)

    def reveal_master_key(self) -> int:
        """Hand the master secret to the caller. Gated: the KGC must have
        been built with master_key_reveal=True, otherwise this refuses."""
        if not self._master_key_reveal:
            raise CapabilityError("master-key reveal is not enabled on this KGC")
        return self._alpha

    def export_state(self) -> dict:
        """JSON-ready snapshot. The master secret appears only when the
        reveal capability was enabled."""
        state: dict = {
            "group": self.params.group.to_json(),
            "digest": self.params.digest,
            "registered_identities": self.registered_identities(),
        }
        if self._master_key_reveal:
            state["master_key"] = str(self._alpha)
        return state
