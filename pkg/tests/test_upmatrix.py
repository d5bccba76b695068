import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slopeforge import _linalg
from slopeforge.basis import MonomialIndex, WeightCharacter, pairing, pairing_through_degree
from slopeforge.exactfield import INF, ONE, ZERO, ZETA, CyclotomicRational, val2
from slopeforge.newton import SlopeMultiset
from slopeforge.upmatrix import (
    CANONICAL,
    GeneratorConstants,
    ParabolicMatrix,
    assemble_from_generators,
    block_diagonal,
    block_entries,
    block_slopes,
    blocks,
    build_truncation,
    class_membership,
    entry_bound,
    entry_closed,
    generator_matrices,
    omega_entry,
    sample_class_member,
    valuation_matrix,
)

W11 = WeightCharacter(1, 1)
GRID = [WeightCharacter(*w) for w in [(1, 1), (3, 5), (5, 3), (1, 7), (-1, 5)]]

# valuations of the top-left 10 x 10 corner for [1,1]chi, as published
STAR = None
PUBLISHED = [
    [STAR, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [4, STAR, 3, 3, 3, 3, 6, 2, 7, 2],
    [STAR, STAR, 4, 6, STAR, STAR, 4, 3, 4, 3],
    [STAR, STAR, 9, 6, STAR, STAR, 9, 8, 6, 5],
    [STAR, STAR, STAR, STAR, 4, 6, 4, 3, STAR, STAR],
    [STAR, STAR, STAR, STAR, 9, 6, 9, 8, STAR, STAR],
    [STAR, STAR, STAR, STAR, STAR, STAR, 8, 4, STAR, STAR],
    [STAR, STAR, STAR, STAR, STAR, STAR, 8, 11, STAR, STAR],
    [STAR, STAR, 10, 9, STAR, STAR, 10, 10, 12, 6],
    [STAR, STAR, 13, 12, STAR, STAR, 15, 12, 10, 11],
]


def as_published(vals):
    return [[None if v.is_inf else int(v) for v in row] for row in vals]


# Independent oracle: expand (A X + B)^l (C X + D)^(n - l) as a power series
# and read off coefficients, instead of going through the C(i, j, n, x) sums.

def _series_mul(f, g, deg):
    out = [ZERO] * (deg + 1)
    for i, a in enumerate(f[: deg + 1]):
        if not a:
            continue
        for j, b in enumerate(g[: deg + 1 - i]):
            out[i + j] = out[i + j] + a * b
    return out


def _series_pow(base, e, deg):
    if e < 0:
        const, lin = base[0], base[1]
        inv = [ONE / const]
        for _ in range(deg):
            inv.append(inv[-1] * (-lin / const))
        base, e = inv, -e
    out = [ONE] + [ZERO] * deg
    for _ in range(e):
        out = _series_mul(out, base, deg)
    return out


def action_coefficient(A, B, C, D, l, n, i):
    """Coefficient of X^i in (A X + B)^l (C X + D)^(n - l)."""
    num = _series_pow([B, A] + [ZERO] * i, l, i)
    den = _series_pow([D, C] + [ZERO] * i, n - l, i)
    return _series_mul(num, den, i)[i]


def entry_by_series(wc, i, j, gc=CANONICAL):
    total = ZERO
    for g, chi in generator_matrices(gc):
        A, B, C, D = 2 * g.a, g.b, 4 * g.c, g.d
        x = action_coefficient(A, B, C, D, j[0], wc.n1, i[0])
        y = action_coefficient(A.conj(), B.conj(), C.conj(), D.conj(), j[1], wc.n2, i[1])
        total = total + chi * x * y
    q = gc.b / gc.d2
    return total * q ** (i[0] - j[0]) * q.conj() ** (i[1] - j[1])


def test_entry_closed_examples():
    v, parts = entry_closed(W11, (0, 0), (0, 0))
    assert v == 0 and val2(v).is_inf
    assert parts.eps == -1 and parts.delta == 1 and parts.E == 3
    assert val2(entry_closed(W11, (0, 0), (1, 1))[0]) == 0
    assert val2(entry_closed(W11, (1, 1), (0, 0))[0]) == 4


def test_entry_closed_rejects_wrong_class():
    with pytest.raises(ValueError):
        entry_closed(W11, (1, 0), (0, 0))
    with pytest.raises(ValueError):
        entry_closed(WeightCharacter(2, 1), (0, 0), (0, 0))


def test_valuation_matrix_matches_published_table():
    assert as_published(valuation_matrix(build_truncation(W11, 10))) == PUBLISHED


def test_two_by_two_corner():
    assert as_published(valuation_matrix(build_truncation(W11, 2))) == [[None, 0], [4, None]]


def test_odd_size_rejected():
    with pytest.raises(ValueError):
        build_truncation(W11, 9)


@pytest.mark.parametrize("wc", GRID, ids=str)
def test_entry_bound_holds(wc):
    U = build_truncation(wc, 20)
    for r, i in enumerate(U.ordered):
        for c, j in enumerate(U.ordered):
            assert val2(U[r, c]) >= entry_bound(wc, i, j)


@pytest.mark.parametrize("d2", [3, 1 + 2 * ZETA, Fraction(5, 7), -1])
def test_valuations_do_not_depend_on_d2(d2):
    gc = GeneratorConstants.with_d2(d2)
    for wc in GRID[:3]:
        assert valuation_matrix(build_truncation(wc, 12, gc)) == valuation_matrix(build_truncation(wc, 12))


def test_generator_constants_validation():
    assert CANONICAL.a2 * CANONICAL.d2 == Fraction(1, 3)
    assert -(CANONICAL.b * CANONICAL.c) == Fraction(1, 3)
    with pytest.raises(ValueError):
        GeneratorConstants(a2=1)
    with pytest.raises(ValueError):
        GeneratorConstants.with_d2(2)


@pytest.mark.parametrize("wc", GRID + [WeightCharacter(7, 1), WeightCharacter(-3, -5)], ids=str)
def test_series_oracle_agrees_with_closed_form(wc):
    order = pairing(wc, 5).ordered
    for i in order:
        for j in order:
            assert entry_by_series(wc, i, j) == entry_closed(wc, i, j)[0], (i, j)


@pytest.mark.parametrize("d2", [1, 3, Fraction(-5, 7)])
@pytest.mark.parametrize("wc", GRID, ids=str)
def test_generator_route_agrees_with_closed_form(wc, d2):
    gc = GeneratorConstants.with_d2(d2)
    order = pairing(wc, 6).ordered
    for i in order:
        for j in order:
            assert assemble_from_generators(wc, i, j, gc) == entry_closed(wc, i, j, gc)[0]


@pytest.mark.parametrize("d2", [1, 3])
@pytest.mark.parametrize("wc", GRID, ids=str)
def test_omega_on_first_generator(wc, d2):
    gc = GeneratorConstants.with_d2(d2)
    g1, chi = generator_matrices(gc)[0]
    assert chi == -1
    m1, m2 = wc.m
    for i in pairing(wc, 6).ordered:
        i1, i2 = i
        expected = (
            CyclotomicRational(2 ** (i1 + i2))
            * gc.d2 ** (wc.n1 + wc.n2 - 2 * i1 - 2 * i2)
            * CyclotomicRational(3) ** (m1 + m2 + 1 - i1 - i2)
            * (-1) ** (m1 + m2 + 1 + i1 + i2)
        )
        assert omega_entry(g1, i, i, wc, chi) == expected
        # equals the delta term of the closed form
        _, parts = entry_closed(wc, i, i, gc)
        assert expected == parts.E * CyclotomicRational(3) ** (m1 + m2) * parts.eps


def test_omega_diagonal_matrix_is_monomial():
    g = ParabolicMatrix(3, 0, 0, 5)
    assert omega_entry(g, (0, 0), (1, 1), W11, 1) == 0
    assert omega_entry(g, (1, 1), (1, 1), W11, 1) != 0


def test_omega_rational_matrix_at_constant_monomial():
    g = ParabolicMatrix(Fraction(1, 3), 1, Fraction(5, 7), 3)
    assert omega_entry(g, (0, 0), (0, 0), W11, 1) == g.d * g.d.conj() == 9


def test_parabolic_matrix_validation():
    with pytest.raises(ValueError):
        ParabolicMatrix(1, 1, 1, 2)  # d not a unit
    with pytest.raises(ValueError):
        ParabolicMatrix(Fraction(1, 2), 1, 1, 1)  # a not integral
    g = ParabolicMatrix(1, 1, 1, 1, s=1)
    assert g.alpha == 2


def test_block_diagonal_idempotent_and_clean():
    U = build_truncation(W11, 10)
    D = block_diagonal(U)
    assert block_diagonal(D).entries == D.entries
    vals = valuation_matrix(D)
    for r in range(10):
        for c in range(10):
            if r // 2 != c // 2:
                assert vals[r][c].is_inf
            else:
                assert vals[r][c] == valuation_matrix(U)[r][c]


def test_blocks_of_worked_example():
    bs = blocks(build_truncation(W11, 10))
    assert [b.leader for b in bs] == [(0, 0), (3, 0), (0, 3), (2, 2), (6, 0)]
    assert val2(bs[0].r_ab) == 0


@pytest.mark.parametrize(
    "leader, expected", [((0, 0), [2, 2]), ((3, 0), [4, 6]), ((6, 0), [8, 8])]
)
def test_block_slopes_examples(leader, expected):
    assert block_slopes(block_entries(W11, leader)) == SlopeMultiset.from_slopes(expected)


@pytest.mark.parametrize("wc", GRID, ids=str)
def test_block_valuation_pattern(wc):
    for lead in pairing_through_degree(wc, 20).leaders:
        be = block_entries(wc, lead)
        w = lead[0] + lead[1]
        vt, vr, vs, vt1 = (val2(x) for x in (be.t_ab, be.r_ab, be.s_ab, be.t_a1b1))
        if be.mixed_parity:
            assert (vt, vt1) == (w + 1, w + 3)
            assert vr >= w + 2 and vs >= w + 5
        else:
            assert (vr, vs) == (w, w + 4)
            assert vt >= w + 2 and vt1 >= w + 4


def test_membership_of_the_operator():
    assert class_membership(build_truncation(W11, 10), W11)
    for wc in GRID:
        assert class_membership(build_truncation(wc, 16), wc).ok


def test_zero_matrix_is_not_a_member():
    zero = [[ZERO] * 10 for _ in range(10)]
    report = class_membership(zero, W11)
    assert not report.ok
    assert (0, 1, INF, "= 0") in report.violations


def test_scaled_off_block_entry_is_reported():
    U = build_truncation(W11, 10)
    entries = [row[:] for row in U.entries]
    entries[0][2] = entries[0][2] / 4
    report = class_membership(U.with_entries(entries), W11)
    assert not report.ok
    assert [v[:2] for v in report.violations] == [(0, 2)]


@pytest.mark.parametrize("seed", range(5))
def test_sampler_produces_members(seed):
    for wc in (W11, WeightCharacter(3, 5)):
        assert class_membership(sample_class_member(wc, 12, seed), wc).ok


def test_sampler_determinism_and_variety():
    a = sample_class_member(W11, 10, 1).entries
    b = sample_class_member(W11, 10, 1).entries
    c = sample_class_member(W11, 10, 2).entries
    assert a == b
    assert a != c


def test_minor_lower_bound():
    for wc in GRID[:3]:
        U = build_truncation(wc, 10)
        for n in range(1, 5):
            for J in itertools.combinations(range(10), n):
                S = sum(U.ordered[k][0] + U.ordered[k][1] for k in J)
                assert val2(_linalg.det(U.submatrix(J))) >= S


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GRID), st.integers(0, 9), st.integers(0, 9))
def test_entry_bound_property(wc, r, c):
    order = pairing(wc, 5).ordered
    i, j = order[r], order[c]
    assert val2(entry_closed(wc, i, j)[0]) >= entry_bound(wc, i, j)
