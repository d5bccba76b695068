"""Published reference values for weight [1,1]chi and their reproduction."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from .basis import WeightCharacter
from .exactfield import INF, ExtendedInt
from .newton import SlopeMultiset, char_series, newton_polygon, np_of_blocks
from .recipe import ClassicalSlopeTable
from .upmatrix import (
    CANONICAL,
    GeneratorConstants,
    block_diagonal,
    build_truncation,
    valuation_matrix,
)

__all__ = ["EmbeddedReferenceData", "load_reference", "reproduce_example", "EXAMPLE_SHA256"]

EXAMPLE_FILE = "example_u4_n10.json"
EXAMPLE_SHA256 = "3c9a77f9c7e7e276db351f7a43e68d45391a8a4048aece18d54dab26e374e01c"


@dataclass(frozen=True)
class EmbeddedReferenceData:
    weight: WeightCharacter
    valuations: tuple[tuple[ExtendedInt, ...], ...]
    slopes: SlopeMultiset
    table: ClassicalSlopeTable


def _parse_val(s: str) -> ExtendedInt:
    return INF if s == "*" else ExtendedInt(int(s))


def load_reference() -> EmbeddedReferenceData:
    raw = resources.files("slopeforge.data").joinpath(EXAMPLE_FILE).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != EXAMPLE_SHA256:
        raise RuntimeError(f"{EXAMPLE_FILE} checksum mismatch: {digest}")
    data = json.loads(raw)
    table = data["classical_slopes"]
    return EmbeddedReferenceData(
        weight=WeightCharacter(*data["weight"]),
        valuations=tuple(tuple(_parse_val(s) for s in row) for row in data["valuations"]),
        slopes=SlopeMultiset.from_pairs(data["slopes"]),
        table=ClassicalSlopeTable(
            chi=SlopeMultiset.from_pairs(table["chi"]),
            chi_tau3=SlopeMultiset.from_pairs(table["chi_tau3"]),
        ),
    )


def reproduce_example(gc: GeneratorConstants = CANONICAL, fault=None) -> tuple[int, list[str]]:
    """Rebuild the 10 x 10 example and diff it against the reference table.

    ``fault`` is an optional ``(row, col)`` (1-based) whose computed
    valuation is bumped by one before comparison; it lets tests exercise
    the mismatch path.  Returns ``(exit_code, report_lines)``.
    """
    ref = load_reference()
    U = build_truncation(ref.weight, 10, gc)
    vals = valuation_matrix(U)
    if fault is not None:
        r, c = fault
        vals[r - 1][c - 1] = vals[r - 1][c - 1] + 1
    lines = []
    mismatches = [
        (r + 1, c + 1, ref.valuations[r][c], vals[r][c])
        for r in range(10)
        for c in range(10)
        if vals[r][c] != ref.valuations[r][c]
    ]
    matched = 100 - len(mismatches)
    for r, c, want, got in mismatches:
        lines.append(f"cell ({r},{c}): expected {want}, got {got}")
    full = newton_polygon(char_series(U)).slopes
    blk = np_of_blocks(block_diagonal(U))
    slopes_ok = full == ref.slopes and blk == ref.slopes
    if full != ref.slopes:
        lines.append(f"U(10) slopes {full.pretty()} != {ref.slopes.pretty()}")
    if blk != ref.slopes:
        lines.append(f"D(10) slopes {blk.pretty()} != {ref.slopes.pretty()}")
    summary = f"{matched}/100 cells match, slopes {'match' if slopes_ok else 'differ'}"
    if slopes_ok:
        summary += f": {full.pretty()}"
    lines.append(summary)
    return (0 if not mismatches and slopes_ok else 1), lines
