#!/usr/bin/env python3
"""The three comparison models, run from the same mixed start.

Wang-Minett always ends monolingual; Mira-Paredes routes flow through
bilinguals in proportion to language similarity; the volatility
exponent decides coexistence in the Vazquez mean field.
"""

from langcomp.baselines import MPParams, MWParams, VazParams, integrate_baseline
from langcomp.dynamics import IntegratorOptions

IC = (0.45, 0.35, 0.2)
LONG = IntegratorOptions(max_time=5000.0)


def show(name, model, params, opts=LONG):
    _, states = integrate_baseline(model, params, IC, opts)
    x, y, z = states[-1]
    print(f"{name:34s} -> ({x:.4f}, {y:.4f}, {z:.4f})")


print(f"shared initial condition {IC}:")
show("Wang-Minett, X favored", "mw",
     MWParams(s_x=0.6, c_zx=1, c_zy=1, c_xz=1, c_yz=1, a=1.31, mu=0.05))
show("Wang-Minett, Y favored", "mw",
     MWParams(s_x=0.4, c_zx=1, c_zy=1, c_xz=1, c_yz=1, a=1.31, mu=0.05))
show("Mira-Paredes, similarity 0.9", "mp", MPParams(s_x=0.6, c=1.0, k=0.9, a=1.31))
show("Mira-Paredes, similarity 0.1", "mp", MPParams(s_x=0.6, c=1.0, k=0.1, a=1.31))
show("Vazquez, volatile (a = 0.5)", "vaz", VazParams(S=0.5, a=0.5),
     IntegratorOptions(max_time=500.0))
show("Vazquez, rigid (a = 3)", "vaz", VazParams(S=0.5, a=3.0),
     IntegratorOptions(max_time=500.0))
