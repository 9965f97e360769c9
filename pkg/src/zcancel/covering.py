"""Cyclic covers, parabolic fiber data and Hirzebruch-Jung strings.

A parabolic fiber over ``p`` is described by a fraction ``e/m`` with
``gcd(e, m) = 1``; ``m`` is the fiber multiplicity.  Pulling back along
the cyclic cover of order ``d = lcm(m_i)`` clears every denominator.

Singularity types follow the convention that type ``(n, q)`` is the
quotient by ``(x, y) -> (zeta x, zeta^q y)``; the resolution string is
read from the component meeting the bridge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .divisors import BaseCurve, GraphDivisor
from .errors import BadParameters, InputError, NonIntegral, NotSingular
from .trees import FiberTree


@dataclass(frozen=True)
class DPDDivisor:
    entries: tuple[tuple[str, int, int], ...]

    def __post_init__(self):
        entries = tuple((str(p), int(e), int(m)) for p, e, m in self.entries)
        seen = set()
        for p, e, m in entries:
            if m < 1:
                raise InputError(f"multiplicity at {p} must be positive")
            if math.gcd(e, m) != 1:
                raise InputError(f"{e}/{m} at {p} is not in lowest terms")
            if p in seen:
                raise InputError(f"point {p} appears twice")
            seen.add(p)
        object.__setattr__(self, "entries", entries)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, _, m in self.entries]

    @classmethod
    def parse(cls, text: str) -> "DPDDivisor":
        """Parse ``"p1:1/2,p2:3/4"``; a bare integer means denominator 1."""
        entries = []
        col = 1
        for item in text.split(","):
            start = col
            col += len(item) + 1
            if not item.strip():
                continue
            label, sep, frac = item.partition(":")
            if not sep or not label.strip():
                raise InputError(f"expected 'point:e/m', got {item!r}", 1, start)
            num, slash, den = frac.strip().partition("/")
            try:
                e = int(num)
                m = int(den) if slash else 1
            except ValueError:
                raise InputError(f"malformed fraction {frac.strip()!r}", 1, start) from None
            entries.append((label.strip(), e, m))
        try:
            return cls(tuple(entries))
        except InputError as exc:
            raise InputError(exc.message, 1, 1) from None

    def to_json(self) -> dict:
        return {p: str(Fraction(e, m)) for p, e, m in self.entries}


def cover_order(multiplicities: Sequence[int]) -> int:
    if not multiplicities:
        raise BadParameters("cover_order needs at least one multiplicity")
    return math.lcm(*multiplicities)


def dpd_cover(dpd: DPDDivisor, d: int) -> list[tuple[str, int]]:
    """Coefficients ``d*e/m`` of the pulled-back divisor."""
    out = []
    for p, e, m in dpd.entries:
        if d % m:
            raise NonIntegral(f"{m} does not divide the cover order {d} at {p}")
        out.append((p, d * e // m))
    return out


def line_bundle_divisor(points: Sequence[str]) -> GraphDivisor:
    """Graph divisor of a line bundle over the affine line: trivial fibers everywhere."""
    points = tuple(points)
    return GraphDivisor(BaseCurve(points), {p: FiberTree.single() for p in points})


def singularity_type(e: int, m: int) -> tuple[int, int]:
    if m < 1 or math.gcd(e, m) != 1:
        raise BadParameters(f"need m >= 1 and gcd(e, m) = 1, got ({e}, {m})")
    if m == 1:
        raise NotSingular("a reduced fiber carries no quotient singularity")
    return m, e % m


def hj_string(n: int, q: int) -> list[int]:
    """Negative continued fraction ``n/q = a1 - 1/(a2 - ...)``, returned as ``[-a1, -a2, ...]``."""
    if not (1 <= q < n) or math.gcd(n, q) != 1:
        raise BadParameters(f"need 1 <= q < n with gcd 1, got ({n}, {q})")
    out = []
    while q:
        a = -(-n // q)
        out.append(-a)
        n, q = q, a * q - n
    return out


def hj_inverse(s: Sequence[int]) -> tuple[int, int]:
    if not s or any(a > -2 for a in s):
        raise BadParameters("a resolution string is nonempty with entries <= -2")
    value = Fraction(-s[-1])
    for a in reversed(s[:-1]):
        value = -a - 1 / value
    return value.numerator, value.denominator
