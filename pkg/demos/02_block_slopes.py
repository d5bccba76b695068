"""Each 2 x 2 block of the paired basis has slopes fixed by its leader.

For a leader (a, b) with exactly one odd coordinate the block slopes are
a+b+1 and a+b+3. When both are even the block has a double slope a+b+2.
"""
from slopeforge import WeightCharacter
from slopeforge.basis import pairing_through_degree
from slopeforge.exactfield import val2
from slopeforge.upmatrix import block_entries, block_slopes

for wc in (WeightCharacter(1, 1), WeightCharacter(3, 5)):
    print(f"weight {wc}")
    for lead in pairing_through_degree(wc, 8).leaders:
        be = block_entries(wc, lead)
        vals = [str(val2(x)) for x in (be.t_ab, be.r_ab, be.s_ab, be.t_a1b1)]
        kind = "mixed" if be.mixed_parity else "even "
        print(f"  leader {tuple(lead)!s:8} {kind} valuations {vals}  slopes {block_slopes(be).pretty()}")
    print()
