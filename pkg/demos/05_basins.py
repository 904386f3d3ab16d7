#!/usr/bin/env python3
"""Basins of attraction above the bifurcation band, drawn in ASCII.

At alpha - beta = 2.9 the all-bilingual vertex and the bilingual-free
segment are both locally stable; which one wins depends on the starting
mix, and raising the bilingual status grows the all-bilingual domain.
"""

from langcomp import ModelParams
from langcomp.analysis import basin_map

REF = dict(s_m1=0.3, s_m2=0.7, lam=400.0)
GLYPH = {"E3": "#", "E4": ".", "E6": "6", "E7": "*", "none": "?"}

for s_b in (0.1, 0.9):
    p = ModelParams(s_b=s_b, alpha=4.0, beta=1.1, **REF)
    bm = basin_map(p, grid_n=9)
    cells = {(round(m1, 6), round(m2, 6)): lab for m1, m2, lab in bm.cells}
    values = sorted({m1 for m1, _, _ in bm.cells})
    print(f"\ns_b = {s_b}:  # -> all-bilingual, . -> bilingual-free"
          f"  (m1 rightward, m2 upward)")
    for m2 in reversed(values):
        row = []
        for m1 in values:
            lab = cells.get((round(m1, 6), round(m2, 6)))
            row.append(GLYPH[lab] if lab else " ")
        print("   " + "".join(row))
    print(f"   counts: {bm.count('E3')} all-bilingual, {bm.count('E4')} bilingual-free")
