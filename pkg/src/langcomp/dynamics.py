"""Numerical integration on the population simplex.

The default stepper is an embedded Dormand-Prince 5(4) pair with
proportional step control; a fixed-step classic RK4 is available for
cross-checking that qualitative outcomes do not depend on the scheme.
The vector field sums to zero componentwise, so exact trajectories stay
on the simplex; numerically, every accepted step is checked for drift
of the component sum (must stay below 1e-9) and then renormalized by
clipping tiny negatives and dividing by the sum.  A component that
reaches exactly zero stays zero: the boundary faces are invariant.

``converge`` integrates until the field's sup norm falls below a
threshold and matches the final state against the closed-form
equilibria: the bilingual-free segment E4 matches whenever b has
collapsed below the tolerance while both monolingual pools remain above
it (the open segment excludes the vertices), every other equilibrium
matches by proximity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .equilibria import (
    DegenerateExponentError,
    EquilibriumKind,
    EquilibriumPoint,
    Stability,
    e4_point,
    equilibria_all,
)
from .model import ModelParams, PopulationState, rhs_full

__all__ = [
    "IntegratorOptions",
    "Trajectory",
    "ConvergenceResult",
    "IntegrationError",
    "integrate",
    "converge",
    "match_equilibrium",
    "project_simplex",
]

DRIFT_TOL = 1e-9
MATCH_TOL = 1e-4


class IntegrationError(RuntimeError):
    """Integration failed; any partial trajectory rides along."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass(frozen=True)
class IntegratorOptions:
    method: str = "rk45-adaptive"
    rtol: float = 1e-10
    atol: float = 1e-12
    step: float = 1e-3
    max_time: float = 50.0
    convergence_epsilon: float = 1e-10

    def __post_init__(self):
        if self.method not in ("rk45-adaptive", "rk4-fixed"):
            raise ValueError(f"unknown method {self.method!r}")
        for name in ("rtol", "atol", "step", "max_time", "convergence_epsilon"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    params: ModelParams
    initial_condition: PopulationState

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if len(self.times) == 0 or self.times[0] != 0.0:
            raise ValueError("trajectories start at time 0")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    @property
    def final_state(self) -> PopulationState:
        m1, m2, b = self.states[-1]
        return PopulationState(m1, m2, b)


@dataclass(frozen=True)
class ConvergenceResult:
    final: PopulationState
    matched: EquilibriumPoint | None
    time: float
    converged: bool


def project_simplex(raw) -> PopulationState:
    """Clip negligible negatives and renormalize a near-simplex triple."""
    m1, m2, b = (float(v) for v in raw)
    if min(m1, m2, b) < -1e-9 or abs(m1 + m2 + b - 1.0) > 1e-6:
        raise ValueError(f"grossly off-simplex input {raw!r}")
    m1, m2, b = max(m1, 0.0), max(m2, 0.0), max(b, 0.0)
    total = m1 + m2 + b
    return PopulationState(m1 / total, m2 / total, b / total)


def _field(p: ModelParams):
    """Scalar-math RHS closure; trial states may dip slightly negative
    during a step, so components are clipped before the powers."""
    s1, s2, sb, lam = p.s_m1, p.s_m2, p.s_b, p.lam
    al, be1 = p.alpha, p.beta + 1.0

    def f(y):
        m1, m2, b = y
        if m1 < 0.0: m1 = 0.0
        if m2 < 0.0: m2 = 0.0
        if b < 0.0: b = 0.0
        b_in = b**be1
        b_out = b**al
        dm1 = lam * (s1 * m1**al * b_in - sb * b_out * m1**be1)
        dm2 = lam * (s2 * m2**al * b_in - sb * b_out * m2**be1)
        return (dm1, dm2, -(dm1 + dm2))

    return f


def _renorm(y):
    """Per-step simplex projection with a drift guard."""
    total = y[0] + y[1] + y[2]
    if abs(total - 1.0) > DRIFT_TOL:
        raise IntegrationError(f"simplex drift {total - 1.0:.3e} exceeds {DRIFT_TOL}")
    m1 = y[0] if y[0] > 0.0 else 0.0
    m2 = y[1] if y[1] > 0.0 else 0.0
    b = y[2] if y[2] > 0.0 else 0.0
    total = m1 + m2 + b
    return (m1 / total, m2 / total, b / total)


# Dormand-Prince 5(4) tableau.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = (
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_MAX_STEPS = 5_000_000


def _error_norm(err, y_old, y_new, rtol, atol):
    acc = 0.0
    for e, a, b in zip(err, y_old, y_new):
        sc = atol + rtol * max(abs(a), abs(b))
        r = e / sc
        acc += r * r
    return sqrt(acc / len(err))


def _initial_step(f, y0, f0, t_end, rtol, atol):
    sc = [atol + rtol * abs(v) for v in y0]
    d0 = sqrt(sum((v / s) ** 2 for v, s in zip(y0, sc)) / len(y0))
    d1 = sqrt(sum((v / s) ** 2 for v, s in zip(f0, sc)) / len(y0))
    h0 = 1e-6 if d1 <= 1e-15 else 0.01 * d0 / d1
    y1 = tuple(y + h0 * d for y, d in zip(y0, f0))
    f1 = f(y1)
    d2 = sqrt(sum(((a - b) / s) ** 2 for a, b, s in zip(f1, f0, sc)) / len(y0)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, t_end)


def _run_dp45(f, y0, t_end, rtol, atol, stop_inf=None, record=None):
    """Advance y' = f(y) to t_end, renormalizing each accepted step.

    Returns (t, y, stopped_early).  ``stop_inf`` halts once the field's
    sup norm at an accepted state falls below it; ``record`` is an
    optional (times, states) pair of lists filled per accepted step.
    """
    t = 0.0
    y = _renorm(y0)
    k1 = f(y)
    if record is not None:
        record[0].append(t)
        record[1].append(y)
    h = _initial_step(f, y, k1, t_end, rtol, atol)
    n = len(y)
    steps = 0
    while t < t_end:
        if steps > _MAX_STEPS:
            raise IntegrationError("step budget exhausted")
        h = min(h, t_end - t)
        ks = [k1]
        for row, c in zip(_A, _C[1:]):
            stage = tuple(
                y[i] + h * sum(a * ks[j][i] for j, a in enumerate(row))
                for i in range(n)
            )
            ks.append(f(stage))
        y5 = tuple(
            y[i] + h * sum(b * ks[j][i] for j, b in enumerate(_B))
            for i in range(n)
        )
        k7 = f(y5)
        err = tuple(
            h * (sum(e * ks[j][i] for j, e in enumerate(_E[:6])) + _E[6] * k7[i])
            for i in range(n)
        )
        norm = _error_norm(err, y, y5, rtol, atol)
        steps += 1
        if norm <= 1.0:
            t += h
            y = _renorm(y5)
            k1 = f(y)
            if record is not None:
                record[0].append(t)
                record[1].append(y)
            if stop_inf is not None and max(abs(v) for v in k1) < stop_inf:
                return t, y, True
            factor = 5.0 if norm == 0.0 else min(5.0, max(0.2, 0.9 * norm**-0.2))
            h *= factor
        else:
            h *= max(0.2, 0.9 * norm**-0.2)
        if h < 1e-14 * max(1.0, t):
            raise IntegrationError(f"step size underflow at t={t!r}")
    return t, y, False


def _run_rk4(f, y0, t_end, step, stop_inf=None, record=None):
    t = 0.0
    y = _renorm(y0)
    if record is not None:
        record[0].append(t)
        record[1].append(y)
    n = len(y)
    while t < t_end - 1e-15:
        h = min(step, t_end - t)
        k1 = f(y)
        k2 = f(tuple(y[i] + 0.5 * h * k1[i] for i in range(n)))
        k3 = f(tuple(y[i] + 0.5 * h * k2[i] for i in range(n)))
        k4 = f(tuple(y[i] + h * k3[i] for i in range(n)))
        y = _renorm(tuple(
            y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(n)
        ))
        t += h
        if record is not None:
            record[0].append(t)
            record[1].append(y)
        if stop_inf is not None:
            fy = f(y)
            if max(abs(v) for v in fy) < stop_inf:
                return t, y, True
    return t, y, False


def _run(f, y0, opts: IntegratorOptions, stop_inf=None, record=None):
    if opts.method == "rk4-fixed":
        return _run_rk4(f, y0, opts.max_time, opts.step, stop_inf, record)
    return _run_dp45(f, y0, opts.max_time, opts.rtol, opts.atol, stop_inf, record)


def integrate(p: ModelParams, ic: PopulationState,
              opts: IntegratorOptions | None = None) -> Trajectory:
    """Trajectory from a strictly positive initial condition."""
    opts = opts or IntegratorOptions()
    if not ic.strictly_positive:
        raise ValueError(f"initial condition must be strictly positive, got {ic}")
    record = ([], [])
    try:
        _run(_field(p), ic.as_tuple(), opts, record=record)
    except IntegrationError as exc:
        if record[0]:
            exc.trajectory = Trajectory(
                np.array(record[0]), np.array(record[1]), p, ic
            )
        raise
    return Trajectory(np.array(record[0]), np.array(record[1]), p, ic)


def match_equilibrium(p: ModelParams, state: PopulationState,
                      tol: float = MATCH_TOL) -> EquilibriumPoint | None:
    """Equilibrium the state has settled on, or None.

    The E4 segment wins whenever the bilingual pool has emptied (b
    below ``tol``) with both monolingual pools still present; otherwise
    the nearest point equilibrium within ``tol`` (Euclidean) matches,
    earlier kinds breaking ties.
    """
    if state.b < tol and state.m1 >= tol and state.m2 >= tol:
        t = state.m1 / (state.m1 + state.m2)
        return EquilibriumPoint(
            EquilibriumKind.E4, e4_point(t),
            (complex(0.0), complex(0.0)), Stability.DEGENERATE_LINE,
        )
    try:
        candidates = [
            e for e in equilibria_all(p) if e.kind != EquilibriumKind.E4
        ]
    except DegenerateExponentError:
        stubs = []
        for kind, coords in (
            (EquilibriumKind.E1, PopulationState(1.0, 0.0, 0.0)),
            (EquilibriumKind.E2, PopulationState(0.0, 1.0, 0.0)),
            (EquilibriumKind.E3, PopulationState(0.0, 0.0, 1.0)),
        ):
            stability = (
                Stability.UNDEFINED_DYNAMICS
                if kind != EquilibriumKind.E3 else Stability.DEGENERATE_LINE
            )
            stubs.append(
                EquilibriumPoint(kind, coords, (complex(0.0), complex(0.0)), stability)
            )
        candidates = stubs
    best = None
    best_d = tol
    for e in candidates:
        d = sqrt(
            (state.m1 - e.coords.m1) ** 2
            + (state.m2 - e.coords.m2) ** 2
            + (state.b - e.coords.b) ** 2
        )
        if d < best_d:
            best, best_d = e, d
    return best


def converge(p: ModelParams, ic: PopulationState,
             opts: IntegratorOptions | None = None,
             match_tol: float = MATCH_TOL) -> ConvergenceResult:
    """Integrate until the field's sup norm drops below the threshold.

    Initial conditions that are already stationary (including boundary
    points like the E4 segment) return immediately at time 0; anything
    else must be strictly positive.  ``matched`` is None when max_time
    runs out first.
    """
    opts = opts or IntegratorOptions()
    if rhs_full(p, ic).inf_norm < opts.convergence_epsilon:
        return ConvergenceResult(
            final=ic, matched=match_equilibrium(p, ic, match_tol),
            time=0.0, converged=True,
        )
    if not ic.strictly_positive:
        raise ValueError(f"initial condition must be strictly positive, got {ic}")
    t, y, stopped = _run(
        _field(p), ic.as_tuple(), opts, stop_inf=opts.convergence_epsilon
    )
    final = PopulationState(*y)
    return ConvergenceResult(
        final=final,
        matched=match_equilibrium(p, final, match_tol) if stopped else None,
        time=t,
        converged=stopped,
    )
