#!/usr/bin/env python3
"""The seven stationary points and how the exponent gap moves them.

With the reference statuses (0.3, 0.7) and a low bilingual status, the
sign and size of alpha - beta decides whether the interior coexistence
point attracts, the bilingual pool collapses, or everyone ends up
bilingual.
"""

from langcomp import ModelParams, boundary_conditions, e7_trace_condition, equilibria_all

REF = dict(s_m1=0.3, s_m2=0.7, lam=400.0)


def show(p, title):
    print(f"\n{title}  (alpha-beta = {p.alpha - p.beta:+.2f}, s_b = {p.s_b})")
    for e in equilibria_all(p):
        c = e.coords
        eigs = ", ".join(f"{z.real:+.3g}" for z in e.eigenvalues)
        print(f"  {e.kind.value}  ({c.m1:.5f}, {c.m2:.5f}, {c.b:.5f})"
              f"  eig re: [{eigs}]  {e.stability.value}")


show(ModelParams(s_b=0.1, alpha=1.1, beta=3.6, **REF), "coexistence regime")
show(ModelParams(s_b=0.6, alpha=2.0, beta=1.1, **REF), "bifurcation band")
show(ModelParams(s_b=0.5, alpha=4.0, beta=1.1, **REF), "bistable regime")

p = ModelParams(s_b=0.1, alpha=1.1, beta=3.6, **REF)
tc = e7_trace_condition(p)
print(f"\ninterior trace condition: satisfied={tc.satisfied}"
      f" (leading factor {tc.leading:+.3f}, sum term {tc.sum_term:.3f})")
bc = boundary_conditions(p, "E6")
print(f"E6 face condition: trace_negative={bc.trace_negative}"
      f" (expression {bc.trace_expression:+.3e})")
