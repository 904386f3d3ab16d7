"""Parameter sweeps, threshold estimation, basins, and regime classification.

The exponent difference alpha - beta acts as a single bifurcation axis:
below a status-dependent threshold d the interior equilibrium E7
attracts every positive initial condition, above 1 the all-bilingual
state E3 and the bilingual-free segment E4 are locally stable at the
same time, and inside the band (d, 1) the outcome is decided by how the
bilingual status compares with the two monolingual statuses.

The threshold d has no closed form.  The linear spectrum of E7 is
useless for locating it: the exact eigenvalue sign flip sits at
alpha - beta above 0.9 for every bilingual status, while long before
that E7 has drifted so close to the simplex boundary that convergence
toward it stalls beyond any practical horizon.  ``threshold_d``
therefore estimates d operationally, as the point where E7 stops being
*attained*: a standard interior initial condition must come within an
attainment tolerance of E7 inside a fixed integration budget, and E7
must still be separated from every other equilibrium by twice that
tolerance to count as a distinct attractor.  Bisection on alpha - beta
(beta held fixed, alpha varied) brackets the flip deterministically.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .dynamics import IntegratorOptions, converge, _field, _run
from .equilibria import (
    DegenerateExponentError,
    EquilibriumKind,
    classify_stability,
    delta_exponent,
    e7_coords,
    equilibria_all,
)
from .model import ModelParams, PopulationState

__all__ = [
    "ScenarioTag",
    "ThresholdEstimate",
    "SweepRecord",
    "BasinMap",
    "threshold_d",
    "scenario_classify",
    "basin_map",
    "e7_locus",
    "sweep",
    "standard_ic_grid",
]

NEAR_ONE_GAP = 1e-3   # alpha - beta >= 1 - NEAR_ONE_GAP counts as the limit case

PROBE_IC = (0.4, 0.3, 0.3)
PROBE_MAX_TIME = 500.0
PROBE_TOL = 1e-3


class ScenarioTag(enum.Enum):
    COEXISTENCE_E7 = "coexistence-E7"
    LOWER_STATUS_DIES_E6 = "lower-status-dies-E6"
    MONOLINGUALS_DIE_E3 = "monolinguals-die-E3"
    BILINGUALS_DIE_E4 = "bilinguals-die-E4"
    BISTABLE_E3_E4 = "bistable-E3-E4"
    BAND_UNRESOLVED = "bifurcation-band-unresolved"


@dataclass(frozen=True)
class ThresholdEstimate:
    """Bracketed estimate of the coexistence threshold for one s_b.

    ``found`` is False when the probe saw no attained/not-attained flip
    inside the search bracket; otherwise d is the bracket midpoint, the
    lower endpoint attained E7 and the upper did not, and the bracket
    width is at most the requested resolution.
    """

    s_b: float
    d: float | None
    bracket_low: float
    bracket_high: float
    found: bool

    @property
    def width(self) -> float:
        return self.bracket_high - self.bracket_low


def _separation(p: ModelParams) -> float:
    """Distance from E7 to the nearest other equilibrium (E4 as a segment)."""
    e7 = e7_coords(p)
    pts = [
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, 0.0, 1.0),
    ]
    delta = delta_exponent(p.alpha, p.beta).require()
    l1 = delta * math.log(p.s_m1 / p.s_b)
    l2 = delta * math.log(p.s_m2 / p.s_b)
    for logs, slot in (([l1, 0.0], 0), ([l2, 0.0], 1)):
        top = max(logs)
        ws = [math.exp(v - top) for v in logs]
        tot = sum(ws)
        coords = [0.0, 0.0, ws[1] / tot]
        coords[slot] = ws[0] / tot
        pts.append(tuple(coords))
    best = min(
        math.dist(e7.as_tuple(), q) for q in pts
    )
    line = math.sqrt(1.5) * e7.b   # distance to the b = 0 segment
    return min(best, line)


def _e7_attained(p: ModelParams, ic, max_time, tol) -> bool:
    if _separation(p) <= 2.0 * tol:
        return False
    target = e7_coords(p)
    opts = IntegratorOptions(max_time=max_time)
    _, y, _ = _run(_field(p), ic, opts, stop_inf=opts.convergence_epsilon)
    return math.dist(y, target.as_tuple()) < tol


def threshold_d(
    s_m1: float,
    s_m2: float,
    lam: float,
    s_b: float,
    resolution: float = 0.02,
    beta: float = 1.1,
    bracket: tuple[float, float] = (0.02, 0.98),
    probe_ic: tuple[float, float, float] = PROBE_IC,
    probe_max_time: float = PROBE_MAX_TIME,
    probe_tol: float = PROBE_TOL,
) -> ThresholdEstimate:
    """Bisect alpha - beta for the loss of attained E7 coexistence.

    beta stays fixed and alpha = beta + (alpha - beta) varies; the
    degenerate line alpha - beta = 1 lies outside the admissible
    bracket.  Deterministic: same inputs, same bracket.
    """
    lo, hi = bracket
    if not 0.0 < lo < hi < 1.0:
        raise ValueError(f"bracket must satisfy 0 < lo < hi < 1, got {bracket!r}")

    def attained(ab: float) -> bool:
        p = ModelParams(s_m1, s_m2, s_b, lam, beta + ab, beta)
        return _e7_attained(p, probe_ic, probe_max_time, probe_tol)

    at_lo, at_hi = attained(lo), attained(hi)
    if at_lo == at_hi:
        return ThresholdEstimate(s_b=s_b, d=None, bracket_low=lo,
                                 bracket_high=hi, found=False)
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if attained(mid) == at_lo:
            lo = mid
        else:
            hi = mid
    return ThresholdEstimate(s_b=s_b, d=0.5 * (lo + hi), bracket_low=lo,
                             bracket_high=hi, found=True)


def scenario_classify(p: ModelParams, d_estimate: float,
                      resolution: float = 0.02) -> ScenarioTag:
    """Regime tag from the conclusion case table on (alpha - beta, s_b).

    Assumes the M1 group carries the lower status (s_m1 < s_m2).
    Within ``resolution`` of the threshold estimate, and exactly on the
    degenerate line, the band is reported unresolved.
    """
    if not p.s_m1 < p.s_m2:
        raise ValueError("scenario table assumes s_m1 < s_m2 (M1 is lower status)")
    ab = p.alpha_beta
    if ab > 1.0:
        return ScenarioTag.BISTABLE_E3_E4
    if ab == 1.0 or abs(ab - d_estimate) <= resolution:
        return ScenarioTag.BAND_UNRESOLVED
    if ab < d_estimate:
        return ScenarioTag.COEXISTENCE_E7
    if ab >= 1.0 - NEAR_ONE_GAP:
        if p.s_b > p.s_m2:
            return ScenarioTag.MONOLINGUALS_DIE_E3
        if p.s_b == p.s_m2:
            return ScenarioTag.LOWER_STATUS_DIES_E6
        return ScenarioTag.BILINGUALS_DIE_E4
    if p.s_b <= p.s_m1:
        return ScenarioTag.BILINGUALS_DIE_E4
    return ScenarioTag.LOWER_STATUS_DIES_E6


@dataclass(frozen=True)
class BasinMap:
    """Attractor label per initial-condition cell on an interior lattice."""

    grid_n: int
    margin: float
    cells: tuple[tuple[float, float, str], ...]

    def labels(self) -> set[str]:
        return {label for _, _, label in self.cells}

    def count(self, label: str) -> int:
        return sum(1 for _, _, lab in self.cells if lab == label)


def _interior_lattice(grid_n: int, margin: float):
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    step = (1.0 - 2.0 * margin) / (grid_n - 1)
    values = [margin + k * step for k in range(grid_n)]
    return [
        (m1, m2)
        for m1 in values
        for m2 in values
        if m1 + m2 <= 1.0 - margin + 1e-12
    ]


def standard_ic_grid(grid_n: int, margin: float = 0.05) -> list[PopulationState]:
    """Strictly interior lattice of initial conditions (all pools >= margin)."""
    return [
        PopulationState(m1, m2, 1.0 - m1 - m2)
        for m1, m2 in _interior_lattice(grid_n, margin)
    ]


# Basins involve the slow power-law approach to the boundary faces, so the
# default budget is far above the plain-integration default.
BASIN_OPTS = IntegratorOptions(max_time=200000.0)


def _map_cells(fn, cells, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def basin_map(p: ModelParams, grid_n: int, margin: float = 0.05,
              opts: IntegratorOptions | None = None,
              match_tol: float = 1e-4,
              workers: int | None = None) -> BasinMap:
    """Label every lattice cell with the equilibrium its trajectory reaches.

    Cells that fail to converge inside the budget are labeled "none".
    Cells are independent work items; ``workers`` > 1 evaluates them in
    a thread pool with the result order fixed by the lattice.
    """
    opts = opts or BASIN_OPTS
    lattice = _interior_lattice(grid_n, margin)

    def label(cell):
        m1, m2 = cell
        res = converge(p, PopulationState(m1, m2, 1.0 - m1 - m2), opts,
                       match_tol=match_tol)
        return (m1, m2, res.matched.kind.value if res.matched else "none")

    return BasinMap(grid_n=grid_n, margin=margin,
                    cells=tuple(_map_cells(label, lattice, workers)))


def e7_locus(p: ModelParams, s_b_values: Sequence[float]) -> list[tuple[float, PopulationState]]:
    """Interior equilibrium as a function of the bilingual status.

    Defined for delta > 0 (alpha - beta < 1), where raising s_b
    strictly raises the bilingual share b*.
    """
    delta = delta_exponent(p.alpha, p.beta).require()
    if delta <= 0.0:
        raise ValueError("locus requires delta > 0 (alpha - beta < 1)")
    return [(s_b, e7_coords(p.replace(s_b=s_b))) for s_b in s_b_values]


@dataclass(frozen=True)
class SweepRecord:
    """Stability classes (and optional IC-grid attractors) at one grid point."""

    params: ModelParams
    stability: dict
    attractors: dict | None


def _sweep_point(p: ModelParams, ic_grid_n: int, opts, match_tol):
    try:
        stability = {
            e.kind.value: e.stability.value for e in equilibria_all(p)
        }
    except DegenerateExponentError:
        stability = {}
    attractors = None
    if ic_grid_n:
        attractors = {}
        for ic in standard_ic_grid(ic_grid_n):
            res = converge(p, ic, opts)
            attractors[(ic.m1, ic.m2)] = (
                res.matched.kind.value if res.matched else "none"
            )
    return SweepRecord(params=p, stability=stability, attractors=attractors)


def sweep(axes: dict[str, Sequence[float]], base: ModelParams,
          ic_grid_n: int = 0, opts: IntegratorOptions | None = None,
          match_tol: float = 1e-4,
          workers: int | None = None) -> list[SweepRecord]:
    """Cartesian-product evaluation over parameter axes.

    Axis keys are ModelParams field names plus "alpha_beta", which sets
    alpha = base.beta + value.  Records come back in the deterministic
    product order of the axes as given (last axis fastest), regardless
    of how many workers evaluate them.
    """
    if not axes:
        return []
    names = list(axes)
    grids = [list(axes[k]) for k in names]
    if any(len(g) == 0 for g in grids):
        return []
    combos = list(product(*grids))

    def build(combo) -> ModelParams:
        changes = {}
        for name, value in zip(names, combo):
            if name == "alpha_beta":
                changes["alpha"] = base.beta + value
            else:
                changes[name] = value
        return base.replace(**changes)

    run_opts = opts or BASIN_OPTS

    def evaluate(combo):
        return _sweep_point(build(combo), ic_grid_n, run_opts, match_tol)

    return _map_cells(evaluate, combos, workers)
