"""Random matrices with the same valuation pattern have the same slopes.

sample_class_member draws matrices that satisfy the block conditions and
the off-block lower bounds of U. Their stable slope prefix agrees with the
one of U itself, even though the entries are unrelated.
"""
from slopeforge import WeightCharacter, build_truncation
from slopeforge.newton import slopes, stable_prefix
from slopeforge.upmatrix import class_membership, sample_class_member, valuation_matrix

wc, N = WeightCharacter(1, 1), 16
cutoff, target = stable_prefix(wc, None, N, slopes(build_truncation(wc, N)))
print(f"U({N}) stable prefix below {cutoff}: {target.pretty()}")

for seed in range(8):
    M = sample_class_member(wc, N, seed)
    assert class_membership(M, wc).ok
    got = stable_prefix(wc, None, N, slopes(M)).stable
    first = " ".join(str(v) for v in valuation_matrix(M)[1][:6])
    print(f"seed {seed}: row 2 starts {first:18} prefix {got.pretty()} {'ok' if got == target else 'differs'}")
