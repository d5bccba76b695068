"""Weights, the invariant monomial basis, and its leader/partner pairing.

For weight [n1, n2]chi at level U_0(4) the invariant monomials are the
X^i1 Y^i2 with ``i1 - i2 = n2 - n1 (mod 3)``.  They are ordered by total
degree, ties broken by larger i1 first, and then greedily grouped into
pairs {X^a Y^b, X^(a+1) Y^(b+1)}.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

__all__ = [
    "FinitePart",
    "WeightCharacter",
    "WeightTuple",
    "MonomialIndex",
    "BasisPairing",
    "weight_tuple",
    "residue_class",
    "monomial_stream",
    "pairing",
    "pairing_through_degree",
    "parse_weight",
]


class FinitePart(enum.Enum):
    CHI = "chi"
    CHI_TAU3 = "chi_tau3"


@dataclass(frozen=True)
class WeightCharacter:
    """The weight-character [n1, n2] times a finite-order part."""

    n1: int
    n2: int
    finite_part: FinitePart = FinitePart.CHI

    def require_odd(self) -> None:
        if self.n1 % 2 == 0 or self.n2 % 2 == 0:
            raise ValueError(f"weight [{self.n1},{self.n2}] needs odd n1, n2")

    @property
    def m(self) -> tuple[int, int]:
        """(m1, m2) with n_i = 2 m_i + 1."""
        self.require_odd()
        return (self.n1 - 1) // 2, (self.n2 - 1) // 2

    def __str__(self):
        tag = "chi" if self.finite_part is FinitePart.CHI else "chi*tau^3"
        return f"[{self.n1},{self.n2}]{tag}"


def parse_weight(text: str) -> WeightCharacter:
    """Parse ``"n1,n2"`` into a chi-weight."""
    parts = text.replace("[", "").replace("]", "").split(",")
    if len(parts) != 2:
        raise ValueError(f"weight must look like n1,n2: {text!r}")
    return WeightCharacter(int(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class WeightTuple:
    k: tuple[int, int]
    r: int
    n: tuple[int, int]
    v: tuple[int, int]
    w: tuple[int, int]


def weight_tuple(wc: WeightCharacter, r: int | None = None) -> WeightTuple:
    """Complete (n1, n2) to the tuple (k, r, n, v, w).

    ``r`` defaults to ``max(n1, n2)`` so that v is componentwise nonnegative.
    """
    n = (wc.n1, wc.n2)
    if r is None:
        r = max(n)
    if (r - n[0]) % 2 or (r - n[1]) % 2:
        raise ValueError(f"r={r} must have the parity of n1={n[0]} and n2={n[1]}")
    v = ((r - n[0]) // 2, (r - n[1]) // 2)
    k = (n[0] + 2, n[1] + 2)
    w = (v[0] + n[0] + 1, v[1] + n[1] + 1)
    return WeightTuple(k=k, r=r, n=n, v=v, w=w)


class MonomialIndex(NamedTuple):
    i1: int
    i2: int

    @property
    def degree(self) -> int:
        return self.i1 + self.i2

    def partner(self) -> "MonomialIndex":
        return MonomialIndex(self.i1 + 1, self.i2 + 1)


def residue_class(wc: WeightCharacter) -> int:
    return (wc.n2 - wc.n1) % 3


def in_class(idx: tuple[int, int], residue: int) -> bool:
    return (idx[0] - idx[1]) % 3 == residue


def monomial_stream(wc: WeightCharacter | int) -> Iterator[MonomialIndex]:
    """Yield the invariant monomials in graded order, X-heavy first."""
    residue = wc if isinstance(wc, int) else residue_class(wc)
    for deg in itertools.count():
        for i1 in range(deg, -1, -1):
            if (2 * i1 - deg) % 3 == residue:
                yield MonomialIndex(i1, deg - i1)


@dataclass(frozen=True)
class BasisPairing:
    residue: int
    pairs: tuple[tuple[MonomialIndex, MonomialIndex], ...]

    @property
    def leaders(self) -> tuple[MonomialIndex, ...]:
        return tuple(p[0] for p in self.pairs)

    @property
    def ordered(self) -> tuple[MonomialIndex, ...]:
        return tuple(m for p in self.pairs for m in p)

    def __len__(self):
        return len(self.pairs)

    def position(self, idx) -> int:
        return self.ordered.index(MonomialIndex(*idx))

    def to_json(self, wc: WeightCharacter) -> dict:
        return {
            "weight": [wc.n1, wc.n2],
            "pairs": [[list(a), list(b)] for a, b in self.pairs],
            "leaders": [list(a) for a, _ in self.pairs],
        }


def _greedy_pairs(residue: int) -> Iterator[tuple[MonomialIndex, MonomialIndex]]:
    used: set[MonomialIndex] = set()
    for m in monomial_stream(residue):
        if m in used:
            used.discard(m)  # each monomial is seen exactly once
            continue
        partner = m.partner()
        used.add(partner)
        yield m, partner


def pairing(wc: WeightCharacter | int, n_pairs: int) -> BasisPairing:
    """First ``n_pairs`` leader/partner pairs of the basis ordering."""
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    residue = wc if isinstance(wc, int) else residue_class(wc)
    return BasisPairing(residue, tuple(itertools.islice(_greedy_pairs(residue), n_pairs)))


def pairing_through_degree(wc: WeightCharacter | int, max_leader_degree: int) -> BasisPairing:
    """All pairs whose leader has total degree at most ``max_leader_degree``."""
    residue = wc if isinstance(wc, int) else residue_class(wc)
    pairs = tuple(
        itertools.takewhile(lambda p: p[0].degree <= max_leader_degree, _greedy_pairs(residue))
    )
    return BasisPairing(residue, pairs)
