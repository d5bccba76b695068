"""Slope prediction from parallel-weight-3 classical slopes, and its verification.

Each leader (a, b) of the paired basis contributes the classical slopes of
the component selected by its parity, shifted by a + b:

* both even      -> slopes of [1,1]chi,       i.e. {2, 2} + a + b
* otherwise      -> slopes of [1,1]chi*tau^3, i.e. {1, 3} + a + b
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .basis import FinitePart, MonomialIndex, WeightCharacter, pairing, residue_class
from .newton import (
    SlopeMultiset,
    char_series,
    newton_polygon,
    np_of_blocks,
    stable_prefix,
)
from .upmatrix import (
    block_diagonal,
    build_truncation,
    class_membership,
    entry_bound,
)
from .exactfield import val2

__all__ = [
    "ClassicalSlopeTable",
    "CLASSICAL_SLOPES",
    "Prediction",
    "VerificationReport",
    "chi_ab",
    "predict_slopes",
    "verify_theorem",
    "weight_independence_check",
    "stable_slopes",
]


@dataclass(frozen=True)
class ClassicalSlopeTable:
    """U_2 slopes on classical forms of level U_0(4), parallel weight 3."""

    chi: SlopeMultiset = SlopeMultiset.from_pairs([(2, 2)])
    chi_tau3: SlopeMultiset = SlopeMultiset.from_pairs([(1, 1), (3, 1)])

    def __getitem__(self, part: FinitePart) -> SlopeMultiset:
        return self.chi if part is FinitePart.CHI else self.chi_tau3


CLASSICAL_SLOPES = ClassicalSlopeTable()


def chi_ab(a: int, b: int) -> FinitePart:
    """Component of weight space that a pair led by (a, b) borrows slopes from."""
    if a % 2 and b % 2:
        raise ValueError(f"({a},{b}) cannot be a leader: both coordinates odd")
    if a % 2 == 0 and b % 2 == 0:
        return FinitePart.CHI
    return FinitePart.CHI_TAU3


@dataclass(frozen=True)
class Prediction:
    weight: WeightCharacter
    per_pair: tuple[tuple[MonomialIndex, FinitePart, SlopeMultiset], ...]
    total: SlopeMultiset

    def to_json(self) -> dict:
        return {
            "weight": [self.weight.n1, self.weight.n2],
            "pairs": [
                {"leader": list(lead), "char": part.value, "slopes": sm.to_json()}
                for lead, part, sm in self.per_pair
            ],
            "slopes": self.total.to_json(),
        }


def predict_slopes(wc: WeightCharacter, n_pairs: int,
                   table: ClassicalSlopeTable = CLASSICAL_SLOPES) -> Prediction:
    wc.require_odd()
    per_pair = []
    total = SlopeMultiset()
    for lead in pairing(wc, n_pairs).leaders:
        part = chi_ab(*lead)
        contribution = table[part].shift(lead[0] + lead[1])
        per_pair.append((lead, part, contribution))
        total = total | contribution
    return Prediction(wc, tuple(per_pair), total)


@dataclass
class VerificationReport:
    weight: WeightCharacter
    N: int
    cutoff: int
    computed_stable: SlopeMultiset
    blocks_stable: SlopeMultiset
    predicted_stable: SlopeMultiset
    match: bool
    invariant_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.match and not self.invariant_failures

    def to_json(self) -> dict:
        return {
            "weight": [self.weight.n1, self.weight.n2],
            "size": self.N,
            "cutoff": self.cutoff,
            "computed": self.computed_stable.to_json(),
            "blocks": self.blocks_stable.to_json(),
            "predicted": self.predicted_stable.to_json(),
            "match": self.match,
            "invariant_failures": [str(f) for f in self.invariant_failures],
        }


def verify_theorem(wc: WeightCharacter, N: int) -> VerificationReport:
    """Compare charpoly, block and predicted slopes of the size-N truncation."""
    if N < 2 or N % 2:
        raise ValueError("N must be even and at least 2")
    U = build_truncation(wc, N)
    computed = newton_polygon(char_series(U)).slopes
    from_blocks = np_of_blocks(block_diagonal(U))
    predicted = predict_slopes(wc, N // 2).total
    cutoff, comp_stable = stable_prefix(wc, None, N, computed)
    blk_stable = from_blocks.below(cutoff)
    pred_stable = predicted.below(cutoff)

    failures = []
    membership = class_membership(U, wc)
    failures.extend(("class", v) for v in membership.violations)
    order = U.ordered
    for r, i in enumerate(order):
        for c, j in enumerate(order):
            if val2(U.entries[r][c]) < entry_bound(wc, i, j):
                failures.append(("bound", (r, c)))
    match = comp_stable == pred_stable and blk_stable == pred_stable
    return VerificationReport(wc, N, cutoff, comp_stable, blk_stable, pred_stable, match, failures)


def stable_slopes(wc: WeightCharacter, N: int) -> SlopeMultiset:
    U = build_truncation(wc, N)
    return stable_prefix(wc, None, N, newton_polygon(char_series(U)).slopes).stable


def weight_independence_check(weights, N: int) -> bool:
    """True when all weights (of one residue class) share a stable slope prefix."""
    weights = list(weights)
    classes = {residue_class(w) for w in weights}
    if len(classes) > 1:
        raise ValueError(f"weights span residue classes {sorted(classes)}")
    prefixes = [stable_slopes(w, N) for w in weights]
    return all(p == prefixes[0] for p in prefixes)
