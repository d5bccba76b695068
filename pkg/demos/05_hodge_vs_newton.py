"""Hodge polygons sit below the Newton polygon and meet it only at the ends.

Two Hodge conventions are shown. The row-minimum one is cheap but loose on
the right. The elementary-divisor one ends at val2(det U), where it meets
the Newton polygon again.
"""
from slopeforge import WeightCharacter, build_truncation, char_series, newton_polygon
from slopeforge.newton import hodge_polygon

N = 20
U = build_truncation(WeightCharacter(1, 1), N)
npoly = newton_polygon(char_series(U))
rowmin = hodge_polygon(U, "rowmin")
smith = hodge_polygon(U, "smith")

print(f"{'x':>3} {'rowmin':>7} {'smith':>7} {'newton':>7}")
for x in range(N + 1):
    print(f"{x:3d} {str(rowmin.ordinate(x)):>7} {str(smith.ordinate(x)):>7} {str(npoly.ordinate(x)):>7}")
