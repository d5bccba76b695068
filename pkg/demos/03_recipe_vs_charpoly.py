"""Predicted slopes from the classical weight-3 table against exact charpolys.

Only the part of the Newton polygon below the stable cutoff is compared:
slopes at or above it can still move when the truncation grows.
"""
import sys

from slopeforge import WeightCharacter
from slopeforge.recipe import predict_slopes, verify_theorem

N = int(sys.argv[1]) if len(sys.argv) > 1 else 20

pred = predict_slopes(WeightCharacter(1, 1), 4)
for lead, part, sm in pred.per_pair:
    print(f"leader {tuple(lead)} uses {part.value:9} -> {sm.pretty()}")
print()

for w in [(1, 1), (7, 7), (3, 5), (5, 3), (43, 1)]:
    report = verify_theorem(WeightCharacter(*w), N)
    status = "match" if report.ok else "MISMATCH"
    print(f"{str(report.weight):10} N={N} below {report.cutoff:2}: {report.computed_stable.pretty():40} {status}")
