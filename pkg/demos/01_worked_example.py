"""The 10 x 10 corner of U for weight [1,1] with the trivial character.

Builds the truncation, prints its 2-adic valuations ('*' marks a zero
entry) and the Newton polygon slopes of both U(10) and its 2 x 2 block
diagonal part D(10).
"""
from slopeforge import WeightCharacter, build_truncation, char_series, newton_polygon
from slopeforge.newton import np_of_blocks
from slopeforge.upmatrix import block_diagonal, valuation_matrix

wc = WeightCharacter(1, 1)
U = build_truncation(wc, 10)

print("basis order:", " ".join(f"({a},{b})" for a, b in U.ordered))
print()
for row in valuation_matrix(U):
    print(" ".join(f"{str(v):>3}" for v in row))

cs = char_series(U)
print()
print("val2 of det(1 - T U) coefficients:", [str(v) for v in cs.valuations()])
print("slopes of U(10):", newton_polygon(cs).slopes.pretty())
print("slopes of D(10):", np_of_blocks(block_diagonal(U)).pretty())
