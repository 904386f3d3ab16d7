#!/usr/bin/env python3
"""Integrating the three regimes from the captioned initial conditions.

Each run reports where the trajectory settles and which equilibrium it
matched.  Note the collapse regimes move like power laws, so they get a
far longer horizon than the exponentially convergent coexistence run.
"""

from langcomp import IntegratorOptions, ModelParams, PopulationState, converge

REF = dict(s_m1=0.3, s_m2=0.7, lam=400.0)

runs = [
    ("coexistence", ModelParams(s_b=0.1, alpha=1.1, beta=3.6, **REF),
     PopulationState(0.5, 0.3, 0.2), IntegratorOptions()),
    ("bilingual collapse", ModelParams(s_b=0.1, alpha=2.0, beta=1.1, **REF),
     PopulationState(0.5, 0.1, 0.4),
     IntegratorOptions(max_time=50000.0, convergence_epsilon=1e-9)),
    ("bilingual takeover", ModelParams(s_b=0.9, alpha=2.0999, beta=1.1, **REF),
     PopulationState(0.45, 0.45, 0.1),
     IntegratorOptions(max_time=50000.0, convergence_epsilon=1e-9)),
]

for title, p, ic, opts in runs:
    res = converge(p, ic, opts)
    f = res.final
    label = res.matched.kind.value if res.matched else "none"
    print(f"{title:20s} ic=({ic.m1}, {ic.m2}, {ic.b})"
          f" -> ({f.m1:.6f}, {f.m2:.6f}, {f.b:.6f})"
          f"  matched {label} at t={res.time:.0f}")
