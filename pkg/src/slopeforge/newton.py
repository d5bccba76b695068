"""Characteristic series, Newton and Hodge polygons, and slope bookkeeping.

All polygons are computed with exact rationals; hull tests use
cross-multiplication, never floating-point slopes.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import _linalg
from .basis import BasisPairing, MonomialIndex, WeightCharacter, pairing
from .exactfield import ONE, ZERO, CyclotomicRational, ExtendedInt, val2
from .upmatrix import UpMatrixTruncation, block_slopes, blocks, build_truncation

__all__ = [
    "SlopeMultiset",
    "CharSeries",
    "NewtonPolygon",
    "HodgePolygon",
    "MinorIndex",
    "StablePrefix",
    "DEFAULT_MAX_SIZE",
    "char_series",
    "serre_coefficients",
    "newton_polygon",
    "np_of_blocks",
    "hodge_polygon",
    "stable_prefix",
    "prefix_agrees",
    "minimal_minors",
    "slopes",
]

DEFAULT_MAX_SIZE = 64
DEFAULT_MINOR_BUDGET = 200_000


@dataclass(frozen=True)
class SlopeMultiset:
    """Slopes with multiplicities, sorted by slope.

    >>> SlopeMultiset.from_slopes([4, 2, 2, 4])
    SlopeMultiset([2,2],[4,2])
    """

    items: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def from_slopes(cls, values: Iterable) -> "SlopeMultiset":
        counts = Counter(Fraction(v) for v in values)
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "SlopeMultiset":
        counts: Counter = Counter()
        for s, m in pairs:
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            counts[Fraction(s)] += m
        return cls(tuple(sorted(counts.items())))

    def expand(self) -> list[Fraction]:
        return [s for s, m in self.items for _ in range(m)]

    def __len__(self):
        return sum(m for _, m in self.items)

    def __iter__(self):
        return iter(self.items)

    def __or__(self, other: "SlopeMultiset") -> "SlopeMultiset":
        return SlopeMultiset.from_pairs(self.items + other.items)

    def shift(self, r) -> "SlopeMultiset":
        return SlopeMultiset(tuple((s + r, m) for s, m in self.items))

    def below(self, cutoff) -> "SlopeMultiset":
        return SlopeMultiset(tuple((s, m) for s, m in self.items if s < cutoff))

    def weighted_sum(self) -> Fraction:
        return sum((s * m for s, m in self.items), Fraction(0))

    def max(self):
        return self.items[-1][0] if self.items else None

    def pretty(self) -> str:
        return ",".join(f"[{_fmt(s)},{m}]" for s, m in self.items)

    def to_json(self) -> list:
        return [[s.numerator, s.denominator, m] for s, m in self.items]

    @classmethod
    def from_json(cls, data) -> "SlopeMultiset":
        return cls.from_pairs((Fraction(n, d), m) for n, d, m in data)

    def __repr__(self):
        return f"SlopeMultiset({self.pretty()})"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class CharSeries:
    """Coefficients c_0 = 1, c_1, ..., c_N of det(1 - T U)."""

    coeffs: tuple[CyclotomicRational, ...]

    def __post_init__(self):
        coeffs = tuple(CyclotomicRational.coerce(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("a characteristic series starts with c_0 = 1")

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def valuations(self) -> list[ExtendedInt]:
        return [val2(c) for c in self.coeffs]

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "CharSeries":
        return cls(tuple(CyclotomicRational.coerce(s) for s in items))


def _rows(U):
    return U.entries if isinstance(U, UpMatrixTruncation) else U


def char_series(U, max_size: int = DEFAULT_MAX_SIZE) -> CharSeries:
    """Exact det(1 - T U) via division-free Berkowitz."""
    rows = _rows(U)
    if len(rows) > max_size:
        raise ValueError(f"matrix size {len(rows)} exceeds the limit {max_size}")
    return CharSeries(tuple(_linalg.charpoly(rows)))


def serre_coefficients(U, n_max: int, budget: int = DEFAULT_MINOR_BUDGET) -> CharSeries:
    """c_0..c_{n_max} as signed sums of principal minors."""
    rows = _rows(U)
    N = len(rows)
    n_max = min(n_max, N)
    needed = sum(math.comb(N, n) for n in range(n_max + 1))
    if needed > budget:
        raise ValueError(f"{needed} principal minors exceed the budget {budget}")
    L, A = _linalg.clear_denominators(rows)
    coeffs = [ONE]
    for n in range(1, n_max + 1):
        s0 = s1 = 0
        for J in itertools.combinations(range(N), n):
            d = _linalg.bareiss_det_pairs([[A[r][c] for c in J] for r in J])
            s0 += d[0]
            s1 += d[1]
        sign = -1 if n % 2 else 1
        scale = L**n
        coeffs.append(CyclotomicRational(Fraction(sign * s0, scale), Fraction(sign * s1, scale)))
    return CharSeries(tuple(coeffs))


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[tuple[int, Fraction], ...]
    slopes: SlopeMultiset
    deficient: bool = False

    @property
    def width(self) -> int:
        return self.vertices[-1][0] if self.vertices else 0

    def ordinate(self, x) -> Fraction:
        """Height of the polygon above abscissa ``x`` (0 <= x <= width)."""
        return _interpolate(self.vertices, x)


def _interpolate(vertices, x) -> Fraction:
    x = Fraction(x)
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    if vertices and x == vertices[0][0]:
        return Fraction(vertices[0][1])
    raise ValueError(f"abscissa {x} outside the polygon")


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points sorted by abscissa; collinear points dropped."""
    hull: list[tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord hull[-2] -> p
            if (y1 - y0) * (p[0] - x0) >= (p[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(cs: CharSeries) -> NewtonPolygon:
    """Lower convex hull of (n, val2(c_n)) over the nonzero coefficients."""
    vals = cs.valuations()
    if vals[0] != 0:
        raise ValueError("c_0 must be a unit")
    points = [(n, Fraction(int(v))) for n, v in enumerate(vals) if not v.is_inf]
    deficient = vals[-1].is_inf
    hull = lower_hull(points)
    pairs = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        pairs.append(((y1 - y0) / (x1 - x0), x1 - x0))
    return NewtonPolygon(tuple(hull), SlopeMultiset.from_pairs(pairs), deficient)


def _is_block_diagonal(rows) -> bool:
    N = len(rows)
    return all(
        not rows[r][c]
        for r in range(N)
        for c in range(N)
        if r // 2 != c // 2
    )


def np_of_blocks(D: UpMatrixTruncation) -> SlopeMultiset:
    """Union of the 2x2 block slopes of a block-diagonal truncation."""
    if not _is_block_diagonal(D.entries):
        raise ValueError("np_of_blocks needs a block-diagonal matrix")
    out = SlopeMultiset()
    for be in blocks(D):
        out = out | block_slopes(be)
    return out


@dataclass(frozen=True)
class HodgePolygon:
    """Partial sums of the sorted finite row-minimum valuations."""

    vertices: tuple[tuple[int, Fraction], ...]
    slopes: SlopeMultiset
    skipped_rows: tuple[int, ...] = field(default=())

    @property
    def width(self) -> int:
        return self.vertices[-1][0]

    def ordinate(self, x) -> Fraction:
        return _interpolate(self.vertices, x)


def hodge_polygon(U, convention: str = "rowmin") -> HodgePolygon:
    """Hodge polygon of a finite matrix.

    ``rowmin`` sorts the per-row minimum valuations; rows that are entirely
    zero are skipped and listed in ``skipped_rows``.  ``smith`` uses the
    valuations of the elementary divisors, so its right endpoint is
    val2(det U) whenever U is invertible.
    """
    rows = _rows(U)
    if convention == "rowmin":
        vals, skipped = _row_minima(rows)
    elif convention == "smith":
        vals, skipped = _elementary_divisor_valuations(rows), []
    else:
        raise ValueError(f"unknown Hodge convention {convention!r}")
    vals.sort()
    vertices = [(0, Fraction(0))]
    for k, m in enumerate(vals, start=1):
        vertices.append((k, vertices[-1][1] + m))
    return HodgePolygon(tuple(vertices), SlopeMultiset.from_slopes(vals), tuple(skipped))


def _row_minima(rows):
    mins, skipped = [], []
    for r, row in enumerate(rows):
        m = min(val2(x) for x in row)
        if m.is_inf:
            skipped.append(r)
        else:
            mins.append(int(m))
    return mins, skipped


def _elementary_divisor_valuations(rows) -> list[int]:
    # pivot on a minimal-valuation entry, then pass to the Schur complement;
    # every step is a unimodular row/column operation over the valuation ring
    M = [list(row) for row in rows]
    out = []
    while M and M[0]:
        best = None
        for r, row in enumerate(M):
            for c, x in enumerate(row):
                v = val2(x)
                if not v.is_inf and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            break
        v, pr, pc = best
        out.append(int(v))
        pivot = M[pr][pc]
        prow = M[pr]
        M = [
            [
                x - row[pc] * prow[c] / pivot if row[pc] else x
                for c, x in enumerate(row)
                if c != pc
            ]
            for r, row in enumerate(M)
            if r != pr
        ]
    return out


class StablePrefix(NamedTuple):
    cutoff: int
    stable: SlopeMultiset


def stable_prefix(wc: WeightCharacter, bp: BasisPairing | None, N: int, sm: SlopeMultiset) -> StablePrefix:
    """Slopes of an N x N truncation that no further pair can disturb.

    Every pair beyond the truncation is led by some (a, b) of degree at least
    that of the first excluded leader, and contributes slopes >= a + b + 1.
    """
    if N % 2:
        raise ValueError("N must be even")
    n_pairs = N // 2
    if bp is None or len(bp) != n_pairs + 1:
        bp = pairing(wc, n_pairs + 1)
    a, b = bp.leaders[n_pairs]
    cutoff = a + b + 1
    return StablePrefix(cutoff, sm.below(cutoff))


def slopes(U, method: str = "charpoly") -> SlopeMultiset:
    """Slopes of a truncation by ``charpoly``, ``blocks`` or ``serre``."""
    from .upmatrix import block_diagonal

    if method == "charpoly":
        return newton_polygon(char_series(U)).slopes
    if method == "blocks":
        return np_of_blocks(block_diagonal(U))
    if method == "serre":
        return newton_polygon(serre_coefficients(U, len(_rows(U)))).slopes
    raise ValueError(f"unknown slope method {method!r}")


def prefix_agrees(wc: WeightCharacter, N: int, method: str = "charpoly", extra: int = 4) -> bool:
    """Recompute at N + extra and compare the stable prefix of size N."""
    base = slopes(build_truncation(wc, N), method)
    cutoff, stable = stable_prefix(wc, None, N, base)
    bigger = slopes(build_truncation(wc, N + extra), method)
    return bigger.below(cutoff) == stable


@dataclass(frozen=True)
class MinorIndex:
    positions: tuple[int, ...]
    J: frozenset
    S: int
    valuation: ExtendedInt


def minimal_minors(U, n: int, budget: int = DEFAULT_MINOR_BUDGET) -> list[MinorIndex]:
    """All size-n principal minors of minimal 2-adic valuation."""
    rows = _rows(U)
    N = len(rows)
    if not 0 <= n <= N:
        raise ValueError(f"minor size {n} out of range for a {N} x {N} matrix")
    if math.comb(N, n) > budget:
        raise ValueError(f"{math.comb(N, n)} minors exceed the budget {budget}")
    order = U.ordered if isinstance(U, UpMatrixTruncation) else tuple(
        MonomialIndex(k, 0) for k in range(N)
    )
    best: ExtendedInt | None = None
    found: list[MinorIndex] = []
    for J in itertools.combinations(range(N), n):
        v = val2(_linalg.det([[rows[r][c] for c in J] for r in J]))
        if best is None or v < best:
            best, found = v, []
        if v == best:
            mons = frozenset(order[k] for k in J)
            found.append(MinorIndex(J, mons, sum(m[0] + m[1] for m in mons), v))
    return found
