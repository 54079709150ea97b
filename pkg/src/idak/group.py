"""Toy symmetric bilinear group with exponent-transparent elements.

Both the source group G and the target group GT are presented through the
exponents of a fixed generator in a prime-order group: an element stores
the exponent e, the pairing multiplies exponents mod q, and the discrete
logarithm is therefore available for free as a test oracle (`dlog`).
Bilinearity, symmetry and non-degeneracy hold exactly; hardness is
deliberately absent, which is what makes the attack harness checkable.

A production backend over an asymmetric pairing curve would swap in its
own element types behind the same surface (constructors, `pair`, the
`*` / `**` operators, `to_bytes` / `from_bytes`). Such a backend must
raise `errors.BackendCapabilityError` from `dlog` and `dbdh_check`,
which require exponent visibility.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DecodeError, GroupMismatchError

DEFAULT_Q = 1_000_003  # smallest prime above 10**6; keeps exponents cheap to audit

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GroupParams:
    """Public parameters of the toy group: prime order q, co-factor h,
    and the byte width of the canonical element encoding."""

    q: int
    h: int = 1
    width: int = 8

    def __post_init__(self) -> None:
        if self.q <= 3 or not is_prime(self.q):
            raise ValueError(f"group order must be a prime above 3, got {self.q}")
        if self.h < 1:
            raise ValueError(f"co-factor must be at least 1, got {self.h}")
        if self.width < 1 or self.q > 1 << (8 * self.width):
            raise ValueError("group order does not fit the encoding width")

    @property
    def g(self) -> GElem:
        """Canonical generator of G."""
        return GElem(self, 1)

    @property
    def gt(self) -> GTElem:
        """Canonical generator of GT, the pairing of g with itself."""
        return GTElem(self, 1)

    def to_json(self) -> dict[str, str]:
        # decimal strings keep 64-bit values safe for any JSON consumer
        return {"q": str(self.q), "h": str(self.h), "width": str(self.width)}


@dataclass(frozen=True)
class _Elem:
    params: GroupParams
    exp: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "exp", self.exp % self.params.q)

    def _require_same_group(self, other: _Elem) -> None:
        if self.__class__ is not other.__class__:
            raise TypeError(
                f"cannot combine {self.__class__.__name__} with {other.__class__.__name__}"
            )
        if self.params != other.params:
            raise GroupMismatchError("elements belong to different group instantiations")

    def __mul__(self, other: _Elem) -> _Elem:
        self._require_same_group(other)
        return self.__class__(self.params, self.exp + other.exp)

    def __pow__(self, scalar: int) -> _Elem:
        return self.__class__(self.params, self.exp * scalar)

    @property
    def is_identity(self) -> bool:
        return self.exp == 0

    def to_bytes(self) -> bytes:
        return self.exp.to_bytes(self.params.width, "big")

    def hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_bytes(cls, params: GroupParams, data: bytes):
        """Decode a canonical encoding; rejects wrong lengths and any
        value at or above q rather than reducing it."""
        if len(data) != params.width:
            raise DecodeError(f"expected {params.width} bytes, got {len(data)}")
        value = int.from_bytes(data, "big")
        if value >= params.q:
            raise DecodeError(f"encoded value {value} is not below the group order")
        return cls(params, value)


class GElem(_Elem):
    """Element of the source group G, stored as its exponent."""


class GTElem(_Elem):
    """Element of the target group GT, stored as its exponent."""


def pair(a: GElem, b: GElem) -> GTElem:
    """The bilinear map: on exponent representations it multiplies
    exponents mod q, so pair(g^x, g^y) = gt^(x*y) by construction."""
    if not isinstance(a, GElem) or not isinstance(b, GElem):
        raise TypeError("pair expects two source-group elements")
    if a.params != b.params:
        raise GroupMismatchError("pairing operands from different group instantiations")
    return GTElem(a.params, a.exp * b.exp)


def random_scalar(rng: random.Random, params: GroupParams) -> int:
    """Uniform nonzero scalar in [1, q)."""
    return rng.randrange(1, params.q)


def dlog(elem: GElem | GTElem) -> int:
    """Discrete log to the canonical generator. The toy backend exposes
    it for free; it exists purely as a test and adversary oracle."""
    return elem.exp


def dbdh_check(x_elem: GElem, y_elem: GElem, z_elem: GElem, candidate: GTElem) -> bool:
    """Decide whether candidate = gt^(x*y*z) for the given g^x, g^y, g^z.

    Makes the decisional pairing problem trivially decidable, which is
    the point of the toy backend: tests can tell real keys from random.
    """
    for e in (y_elem, z_elem):
        if x_elem.params != e.params:
            raise GroupMismatchError("mixed group instantiations in decision check")
    if x_elem.params != candidate.params:
        raise GroupMismatchError("candidate from a different group instantiation")
    q = x_elem.params.q
    return candidate.exp == x_elem.exp * y_elem.exp % q * z_elem.exp % q
