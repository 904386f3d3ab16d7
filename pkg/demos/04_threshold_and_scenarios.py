#!/usr/bin/env python3
"""Estimating the coexistence threshold d and reading the regime table.

d(s_b) is where the interior point stops being attained from a standard
initial condition within a fixed budget; it rises with the bilingual
status until the near-degenerate geometry caps it.  The case table then
classifies any parameter point against the estimate.
"""

from langcomp import ModelParams
from langcomp.analysis import scenario_classify, threshold_d

REF = dict(s_m1=0.3, s_m2=0.7, lam=400.0)

print("s_b    d estimate   bracket")
estimates = {}
for k in range(1, 11):
    s_b = round(0.1 * k, 1)
    est = threshold_d(0.3, 0.7, 400.0, s_b)
    estimates[s_b] = est.d
    print(f"{s_b:.1f}    {est.d:.3f}       ({est.bracket_low:.3f}, {est.bracket_high:.3f})")

print("\nregime classification:")
cases = [
    (-2.5, 0.1, 3.6), (0.9, 0.6, 1.1), (0.9, 0.1, 1.1),
    (0.9999, 0.5, 1.1), (0.9999, 0.9, 1.1), (2.9, 0.9, 1.1),
]
for ab, s_b, beta in cases:
    p = ModelParams(s_b=s_b, alpha=beta + ab, beta=beta, **REF)
    tag = scenario_classify(p, estimates[s_b])
    print(f"  alpha-beta={ab:+.4f}, s_b={s_b}: {tag.value}")
