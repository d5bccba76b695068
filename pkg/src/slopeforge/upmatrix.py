"""Truncations of the normalised U_2 operator at level U_0(4).

Entries are produced by the closed form

    E * (C(i1,j1,n1,-2) C(i2,j2,n2,-2) + 3^(m1+m2) eps)

with ``E = 2^(i1+i2) d2^(n1+n2-2i1-2i2) 3^(1-i1-i2)``.  An independent
route sums the four double-coset matrices g_1..g_4 through the general
entry formula ``omega_entry``; it exists to cross-check the closed form.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .basis import (
    BasisPairing,
    MonomialIndex,
    WeightCharacter,
    in_class,
    pairing,
    residue_class,
)
from .exactfield import (
    INF,
    ONE,
    ZERO,
    ZETA,
    CyclotomicRational,
    ExtendedInt,
    c_poly,
    g_bound,
    val2,
)

__all__ = [
    "GeneratorConstants",
    "CANONICAL",
    "ParabolicMatrix",
    "EntryFormulaParts",
    "UpMatrixTruncation",
    "BlockEntries",
    "entry_closed",
    "entry_bound",
    "build_truncation",
    "valuation_matrix",
    "block_diagonal",
    "blocks",
    "block_entries",
    "block_slopes",
    "omega_entry",
    "generator_matrices",
    "assemble_from_generators",
    "MembershipReport",
    "class_membership",
    "sample_class_member",
]

P = 2


@dataclass(frozen=True)
class GeneratorConstants:
    """Entries of the generators g_1..g_4; only a2*d2 = -b*c = 1/3 matters."""

    d2: CyclotomicRational = ONE
    a2: CyclotomicRational = CyclotomicRational(Fraction(1, 3))
    b: CyclotomicRational = ONE
    c: CyclotomicRational = CyclotomicRational(Fraction(-1, 3))
    zeta: CyclotomicRational = ZETA

    def __post_init__(self):
        for name in ("d2", "a2", "b", "c", "zeta"):
            object.__setattr__(self, name, CyclotomicRational.coerce(getattr(self, name)))
        third = CyclotomicRational(Fraction(1, 3))
        if self.a2 * self.d2 != third or -(self.b * self.c) != third:
            raise ValueError("generator constants need a2*d2 == -b*c == 1/3")
        if val2(self.d2) != 0:
            raise ValueError("d2 must be a 2-adic unit")

    @classmethod
    def with_d2(cls, d2) -> "GeneratorConstants":
        d2 = CyclotomicRational.coerce(d2)
        return cls(d2=d2, a2=CyclotomicRational(Fraction(1, 3)) / d2)

    @property
    def a1(self) -> CyclotomicRational:
        return (2 * self.zeta + 1) * self.a2

    @property
    def d1(self) -> CyclotomicRational:
        return -(2 * self.zeta + 1) * self.d2


CANONICAL = GeneratorConstants()


@dataclass(frozen=True)
class EntryFormulaParts:
    E: CyclotomicRational
    eps: int
    m1: int
    m2: int
    delta: int
    cc: CyclotomicRational


def _check_index(wc, idx, residue):
    if not in_class(idx, residue):
        raise ValueError(
            f"monomial {tuple(idx)} is not in the basis of [{wc.n1},{wc.n2}]"
            f" (needs i1 - i2 = {residue} mod 3)"
        )


def entry_closed(wc: WeightCharacter, i, j, gc: GeneratorConstants = CANONICAL):
    """Closed-form (i, j) entry of U_2^0 in weight ``wc``.

    Returns ``(value, parts)``.  Rows index the output monomial X^i1 Y^i2,
    columns the input monomial.
    """
    wc.require_odd()
    residue = residue_class(wc)
    _check_index(wc, i, residue)
    _check_index(wc, j, residue)
    m1, m2 = wc.m
    i1, i2 = i
    j1, j2 = j
    delta = int(i1 == j1 and i2 == j2)
    eps = (-1) ** ((m1 + m2 + i1 + i2 + 1) % 2) * delta
    E = (
        CyclotomicRational(2 ** (i1 + i2))
        * gc.d2 ** (wc.n1 + wc.n2 - 2 * i1 - 2 * i2)
        * _pow3(1 - i1 - i2)
    )
    cc = c_poly(i1, j1, wc.n1, -2) * c_poly(i2, j2, wc.n2, -2)
    value = E * (cc + _pow3(m1 + m2) * eps) if (cc or eps) else ZERO
    return value, EntryFormulaParts(E=E, eps=eps, m1=m1, m2=m2, delta=delta, cc=cc)


def _pow3(e: int) -> CyclotomicRational:
    return CyclotomicRational(3) ** e


def entry_bound(wc: WeightCharacter, i, j) -> ExtendedInt:
    """Valuation lower bound i1 + i2 + g(i1, j1, n1) + g(i2, j2, n2)."""
    return (
        ExtendedInt(i[0] + i[1])
        + g_bound(i[0], j[0], wc.n1)
        + g_bound(i[1], j[1], wc.n2)
    )


@dataclass
class UpMatrixTruncation:
    """An N x N matrix on the paired basis, rows and columns in basis order."""

    weight: WeightCharacter
    entries: list[list[CyclotomicRational]]
    basis: BasisPairing
    gc: GeneratorConstants = CANONICAL

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def ordered(self) -> tuple[MonomialIndex, ...]:
        return self.basis.ordered

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def submatrix(self, idx: Sequence[int]) -> list[list[CyclotomicRational]]:
        return [[self.entries[r][c] for c in idx] for r in idx]

    def with_entries(self, entries) -> "UpMatrixTruncation":
        return UpMatrixTruncation(self.weight, entries, self.basis, self.gc)


def build_truncation(wc: WeightCharacter, N: int, gc: GeneratorConstants = CANONICAL) -> UpMatrixTruncation:
    """Top-left N x N corner of U_2^0 in the paired basis (N even)."""
    if N < 2 or N % 2:
        raise ValueError(f"truncation size must be even and >= 2, got {N}")
    wc.require_odd()
    bp = pairing(wc, N // 2)
    order = bp.ordered
    entries = [[entry_closed(wc, i, j, gc)[0] for j in order] for i in order]
    return UpMatrixTruncation(wc, entries, bp, gc)


def valuation_matrix(U) -> list[list[ExtendedInt]]:
    rows = U.entries if isinstance(U, UpMatrixTruncation) else U
    return [[val2(x) for x in row] for row in rows]


def block_diagonal(U: UpMatrixTruncation) -> UpMatrixTruncation:
    """D(U): keep only the 2x2 diagonal blocks of each leader/partner pair."""
    N = U.size
    entries = [[ZERO] * N for _ in range(N)]
    for r in range(N):
        base = r - r % 2
        for c in (base, base + 1):
            entries[r][c] = U.entries[r][c]
    return U.with_entries(entries)


@dataclass(frozen=True)
class BlockEntries:
    """The block [[t_ab, r_ab], [s_ab, t_a1b1]] of the pair led by (a, b)."""

    leader: MonomialIndex
    t_ab: CyclotomicRational
    r_ab: CyclotomicRational
    s_ab: CyclotomicRational
    t_a1b1: CyclotomicRational

    @property
    def mixed_parity(self) -> bool:
        return (self.leader[0] - self.leader[1]) % 2 == 1


def blocks(U: UpMatrixTruncation) -> list[BlockEntries]:
    out = []
    for k, (lead, _) in enumerate(U.basis.pairs):
        r = 2 * k
        e = U.entries
        out.append(BlockEntries(lead, e[r][r], e[r][r + 1], e[r + 1][r], e[r + 1][r + 1]))
    return out


def block_entries(wc: WeightCharacter, leader, gc: GeneratorConstants = CANONICAL) -> BlockEntries:
    """The 2x2 block of a single pair, without building the whole truncation."""
    a = MonomialIndex(*leader)
    b = a.partner()
    return BlockEntries(
        a,
        entry_closed(wc, a, a, gc)[0],
        entry_closed(wc, a, b, gc)[0],
        entry_closed(wc, b, a, gc)[0],
        entry_closed(wc, b, b, gc)[0],
    )


def block_slopes(be: BlockEntries):
    """Slopes of one 2x2 block from lambda^2 - (t + t')lambda + (t t' - r s)."""
    from .newton import CharSeries, newton_polygon

    trace = be.t_ab + be.t_a1b1
    det = be.t_ab * be.t_a1b1 - be.r_ab * be.s_ab
    return newton_polygon(CharSeries((ONE, -trace, det))).slopes


# generator route ---------------------------------------------------------

@dataclass(frozen=True)
class ParabolicMatrix:
    """The matrix [[p*a, b], [p^(s+1)*c, d]].

    ``a`` is stored without its factor of p, so the general entry formula
    reads off ``p^(i1+i2) a^i1 conj(a)^i2`` directly.
    """

    a: CyclotomicRational
    b: CyclotomicRational
    c: CyclotomicRational
    d: CyclotomicRational
    s: int = 1

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, CyclotomicRational.coerce(getattr(self, name)))
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        for name in "abc":
            if val2(getattr(self, name)) < 0:
                raise ValueError(f"entry {name} is not 2-integral")
        if val2(self.d) != 0:
            raise ValueError("lower-right entry must be a 2-adic unit")
        if not self.det():
            raise ValueError("matrix is singular")

    def det(self) -> CyclotomicRational:
        return P * self.a * self.d - self.b * self.c * P ** (self.s + 1)

    @property
    def alpha(self) -> CyclotomicRational:
        return self.b * self.c * P**self.s / (self.a * self.d)


def omega_entry(g: ParabolicMatrix, i, j, wc: WeightCharacter, chi_of_d) -> CyclotomicRational:
    """(i, j) entry of the weight-``wc`` action of ``g`` without det factors."""
    chi_of_d = CyclotomicRational.coerce(chi_of_d)
    i1, i2 = i
    j1, j2 = j
    a, b, d = g.a, g.b, g.d
    ab, bb, db = a.conj(), b.conj(), d.conj()
    lead = chi_of_d * d**wc.n1 * db**wc.n2 * CyclotomicRational(P ** (i1 + i2))
    if not b:
        if (i1, i2) != (j1, j2):
            return ZERO
        return lead * a**i1 / d**j1 * ab**i2 / db**j2
    alpha = g.alpha
    cc = c_poly(i1, j1, wc.n1, alpha) * c_poly(i2, j2, wc.n2, alpha.conj())
    if not cc:
        return ZERO
    return (
        lead
        * a**i1 / d**j1
        * ab**i2 / db**j2
        * b ** (j1 - i1)
        * bb ** (j2 - i2)
        * cc
    )


def generator_matrices(gc: GeneratorConstants = CANONICAL):
    """g_1..g_4 paired with the character value on their lower-right entry."""
    z = gc.zeta
    z2 = z * z
    return [
        (ParabolicMatrix(gc.a1, ZERO, ZERO, gc.d1), CyclotomicRational(-1)),
        (ParabolicMatrix(gc.a2, gc.b, gc.c, gc.d2), ONE),
        (ParabolicMatrix(gc.a2 * z, gc.b, gc.c, gc.d2 * z2), ONE),
        (ParabolicMatrix(gc.a2 * z2, gc.b, gc.c, gc.d2 * z), ONE),
    ]


def assemble_from_generators(wc: WeightCharacter, i, j, gc: GeneratorConstants = CANONICAL):
    """Sum of omega_entry over g_1..g_4, conjugated into the closed-form basis.

    The diagonal change of basis is X^i1 Y^i2 -> (b/d2)^i1 conj(b/d2)^i2 X^i1 Y^i2.
    """
    total = ZERO
    for g, chi in generator_matrices(gc):
        total = total + omega_entry(g, i, j, wc, chi)
    q = gc.b / gc.d2
    qb = q.conj()
    scale = q ** (i[0] - j[0]) * qb ** (i[1] - j[1])
    return total * scale


# the valuation class ------------------------------------------------------

def _block_rules(lead):
    """Valuation rules for (t, r, s, t') as (kind, value) with kind '=' or '>='."""
    a, b = lead
    w = a + b
    if (a - b) % 2:
        return (("=", w + 1), (">=", w + 2), (">=", w + 5), ("=", w + 3))
    return ((">=", w + 2), ("=", w), ("=", w + 4), (">=", w + 4))


@dataclass
class MembershipReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def class_membership(M, wc: WeightCharacter, basis: BasisPairing | None = None) -> MembershipReport:
    """Check the block valuation pattern and the off-block entry bound.

    Violations are ``(row, col, valuation, rule)`` with 0-based positions.
    """
    rows = M.entries if isinstance(M, UpMatrixTruncation) else M
    N = len(rows)
    if N % 2:
        raise ValueError("class membership needs an even-size matrix")
    if basis is None:
        basis = M.basis if isinstance(M, UpMatrixTruncation) else pairing(wc, N // 2)
    order = basis.ordered
    violations = []
    for k, (lead, _) in enumerate(basis.pairs):
        r0 = 2 * k
        cells = ((r0, r0), (r0, r0 + 1), (r0 + 1, r0), (r0 + 1, r0 + 1))
        for (r, c), (kind, bound) in zip(cells, _block_rules(lead)):
            v = val2(rows[r][c])
            good = v == bound if kind == "=" else v >= bound
            if not good:
                violations.append((r, c, v, f"{kind} {bound}"))
    for r in range(N):
        for c in range(N):
            if r // 2 == c // 2:
                continue
            bound = entry_bound(wc, order[r], order[c])
            v = val2(rows[r][c])
            if v < bound:
                violations.append((r, c, v, f">= {bound}"))
    return MembershipReport(not violations, violations)


def _random_unit(rng: random.Random) -> CyclotomicRational:
    while True:
        a = rng.randint(-7, 7)
        b = rng.randint(-7, 7)
        if a % 2 or b % 2:
            return CyclotomicRational(a, b)


def _at_least(bound: ExtendedInt, rng: random.Random) -> CyclotomicRational:
    if bound.is_inf or rng.random() < 1 / 8:
        return ZERO
    extra = 0
    while rng.random() < 0.5:
        extra += 1
    return _random_unit(rng) * CyclotomicRational(2) ** (int(bound) + extra)


def sample_class_member(wc: WeightCharacter, N: int, seed: int) -> UpMatrixTruncation:
    """A random matrix in the valuation class of U_2^0, reproducible per seed."""
    if N < 2 or N % 2:
        raise ValueError(f"size must be even and >= 2, got {N}")
    rng = random.Random(seed)
    bp = pairing(wc, N // 2)
    order = bp.ordered
    entries = [[ZERO] * N for _ in range(N)]
    for r in range(N):
        for c in range(N):
            if r // 2 == c // 2:
                continue
            entries[r][c] = _at_least(entry_bound(wc, order[r], order[c]), rng)
    for k, (lead, _) in enumerate(bp.pairs):
        r0 = 2 * k
        cells = ((r0, r0), (r0, r0 + 1), (r0 + 1, r0), (r0 + 1, r0 + 1))
        for (r, c), (kind, bound) in zip(cells, _block_rules(lead)):
            if kind == "=":
                entries[r][c] = _random_unit(rng) * CyclotomicRational(2) ** bound
            else:
                entries[r][c] = _at_least(ExtendedInt(bound), rng)
    return UpMatrixTruncation(wc, entries, bp)
