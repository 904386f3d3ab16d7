"""Mean-field forms of three classic two-language competition models.

All three live on the same simplex as the main model (two monolingual
pools plus a bilingual pool) and are exposed as plain vector fields for
side-by-side trajectory runs:

* Wang-Minett: the bilingual pool is a pure bridge with no status of
  its own; children of bilinguals become monolingual (vertical), adults
  become bilingual under pressure of the *other* monolingual pool
  (horizontal), mixed by a mortality rate mu.  Generic asymmetric
  parameters drive one language to take every speaker.
* Mira-Paredes: adds an interlinguistic similarity k; a fraction k of
  every attraction flow lands in the bilingual pool, the remaining
  1 - k passes directly between the monolingual pools.  The source
  gives no exit rates for bilinguals, so they abandon a language at
  the same rate monolinguals do (the minimal symmetric completion).
* Vazquez et al.: agent-based in the source; here the transition
  probabilities are read as rates with neighborhood densities replaced
  by global fractions.  Direct monolingual-to-monolingual moves do not
  exist.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import IntegratorOptions, _run

__all__ = [
    "MWParams",
    "MPParams",
    "VazParams",
    "mw_rhs",
    "mp_rhs",
    "vaz_meanfield_rhs",
    "baseline_field",
    "integrate_baseline",
]


def _unit(name, value, closed_low=False):
    lo_ok = value >= 0.0 if closed_low else value > 0.0
    if not (lo_ok and value < 1.0):
        rng = "[0, 1)" if closed_low else "(0, 1)"
        raise ValueError(f"{name} must lie in {rng}, got {value!r}")


@dataclass(frozen=True)
class MWParams:
    """Wang-Minett rates; s_y = 1 - s_x."""

    s_x: float
    c_zx: float
    c_zy: float
    c_xz: float
    c_yz: float
    a: float
    mu: float

    def __post_init__(self):
        _unit("s_x", self.s_x)
        _unit("mu", self.mu)
        for name in ("c_zx", "c_zy", "c_xz", "c_yz"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")
        if self.a <= 0.0:
            raise ValueError("a must be positive")


@dataclass(frozen=True)
class MPParams:
    """Mira-Paredes constants; k is the interlinguistic similarity."""

    s_x: float
    c: float
    k: float
    a: float

    def __post_init__(self):
        _unit("s_x", self.s_x)
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must lie in [0, 1], got {self.k!r}")
        if self.a <= 0.0:
            raise ValueError("a must be positive")


@dataclass(frozen=True)
class VazParams:
    """Volatility exponent a and prestige S of language X."""

    S: float
    a: float

    def __post_init__(self):
        _unit("S", self.S)
        if self.a <= 0.0:
            raise ValueError("a must be positive")


def _clamped(state):
    return tuple(min(max(v, 0.0), 1.0) for v in state)


def mw_rhs(p: MWParams, state) -> tuple[float, float, float]:
    """Wang-Minett field on (x, y, z); z is the bilingual fraction."""
    x, y, z = _clamped(state)
    s_y = 1.0 - p.s_x
    dx = p.mu * z * p.c_zx * p.s_x * x**p.a - (1.0 - p.mu) * x * p.c_xz * s_y * y**p.a
    dy = p.mu * z * p.c_zy * s_y * y**p.a - (1.0 - p.mu) * y * p.c_yz * p.s_x * x**p.a
    return (dx, dy, -(dx + dy))


def mp_rhs(p: MPParams, state) -> tuple[float, float, float]:
    """Mira-Paredes field on (x, y, b); b is the bilingual fraction."""
    x, y, b = _clamped(state)
    s_y = 1.0 - p.s_x
    p_yx = p.c * (1.0 - p.k) * p.s_x * (1.0 - y)**p.a
    p_yb = p.c * p.k * p.s_x * (1.0 - y)**p.a
    p_xy = p.c * (1.0 - p.k) * s_y * (1.0 - x)**p.a
    p_xb = p.c * p.k * s_y * (1.0 - x)**p.a
    p_bx = p_yx
    p_by = p_xy
    dx = y * p_yx + b * p_bx - x * (p_xy + p_xb)
    dy = x * p_xy + b * p_by - y * (p_yx + p_yb)
    return (dx, dy, -(dx + dy))


def vaz_meanfield_rhs(p: VazParams, state) -> tuple[float, float, float]:
    """Vazquez field on (x, y, z) with global densities as neighborhoods.

    Monolinguals only ever become bilingual, and bilinguals fall back
    to a monolingual pool at a rate set by how rare the opposite
    language has become; x and y never exchange speakers directly.
    """
    x, y, z = _clamped(state)
    dx = z * p.S * (1.0 - y)**p.a - x * (1.0 - p.S) * y**p.a
    dy = z * (1.0 - p.S) * (1.0 - x)**p.a - y * p.S * x**p.a
    return (dx, dy, -(dx + dy))


_FIELDS = {"mw": mw_rhs, "mp": mp_rhs, "vaz": vaz_meanfield_rhs}


def baseline_field(model: str, params):
    """Closure y -> dy/dt for one of the baseline models."""
    try:
        rhs = _FIELDS[model]
    except KeyError:
        raise ValueError(f"unknown baseline model {model!r}") from None

    def f(y):
        return rhs(params, y)

    return f


def integrate_baseline(model: str, params, ic,
                       opts: IntegratorOptions | None = None):
    """Trajectory (times, states) of a baseline model from a simplex IC."""
    opts = opts or IntegratorOptions()
    total = sum(ic)
    if abs(total - 1.0) > 1e-9 or min(ic) < 0.0:
        raise ValueError(f"initial condition must lie on the simplex, got {ic!r}")
    record = ([], [])
    _run(baseline_field(model, params), tuple(ic), opts, record=record)
    return np.array(record[0]), np.array(record[1])
