"""Closed-form equilibria of the three-group model and their stability.

Writing delta = 1/(beta + 1 - alpha) and r_i = (s_mi / s_b)**delta, the
stationary points of the vector field are

    E1 = (1, 0, 0)   E2 = (0, 1, 0)   E3 = (0, 0, 1)
    E4 = the boundary segment {(t, 1-t, 0) : 0 < t < 1}
    E5 = (r1, 0, 1) / (1 + r1)
    E6 = (0, r2, 1) / (1 + r2)
    E7 = (r1, r2, 1) / (1 + r1 + r2)

delta is undefined on the line alpha - beta = 1, where the balance
between the attraction exponent alpha and the withdrawal exponent
beta + 1 degenerates.  Only status *ratios* enter the formulas, so
scaling all three statuses by a common factor moves nothing.

Stability is read off the 2x2 Jacobian of the simplex-reduced system;
the full 3x3 Jacobian always carries one extra zero eigenvalue from the
conservation constraint (its characteristic polynomial factors as
lambda times the reduced one), so the reduced spectrum is the whole
story.  Two structural degeneracies need care with exponents above 1:

* the Jacobian is identically zero along E4, and also at E3, because
  every matrix entry keeps a positive power of a vanishing fraction;
* at E5/E6 the direction transverse to the boundary face has an exact
  zero eigenvalue for the same reason.

Those flat directions are classified by the leading nonlinear term: a
vanishing pool regrows (repelling) when delta > 0, i.e. when the
attraction exponent alpha lies below the withdrawal exponent beta + 1,
and decays (attracting) when delta < 0.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, PopulationState

__all__ = [
    "DegenerateExponentError",
    "DeltaExponent",
    "EquilibriumKind",
    "Stability",
    "EquilibriumPoint",
    "delta_exponent",
    "e4_point",
    "e7_coords",
    "equilibria_all",
    "jacobian_full",
    "jacobian_reduced",
    "char_poly_full",
    "char_poly_reduced",
    "eigvals_reduced",
    "classify_stability",
    "TraceConditionReport",
    "e7_trace_condition",
    "BoundaryConditionReport",
    "boundary_conditions",
    "e3_limit",
]

ZERO_EIG_TOL = 1e-9


class DegenerateExponentError(ValueError):
    """alpha - beta = 1: the equilibrium exponent delta is undefined."""


class EquilibriumKind(enum.Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E7 = "E7"


class Stability(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    SADDLE = "saddle"
    DEGENERATE_LINE = "degenerate-line"
    UNDEFINED_DYNAMICS = "undefined-dynamics"


@dataclass(frozen=True)
class DeltaExponent:
    value: float | None
    degenerate: bool

    def require(self) -> float:
        if self.degenerate:
            raise DegenerateExponentError(
                "alpha - beta = 1 makes the equilibrium exponent undefined"
            )
        return self.value


def delta_exponent(alpha: float, beta: float) -> DeltaExponent:
    """delta = 1/(beta + 1 - alpha); degenerate exactly at alpha - beta = 1."""
    denom = beta + 1.0 - alpha
    if denom == 0.0:
        return DeltaExponent(value=None, degenerate=True)
    return DeltaExponent(value=1.0 / denom, degenerate=False)


@dataclass(frozen=True)
class EquilibriumPoint:
    kind: EquilibriumKind
    coords: PopulationState
    eigenvalues: tuple[complex, complex]
    stability: Stability


def _normalized_weights(logs):
    """exp(logs) normalized to sum 1, computed stably for extreme logs."""
    top = max(logs)
    ws = [math.exp(L - top) for L in logs]
    total = sum(ws)
    return [w / total for w in ws]


def _ratio_logs(p: ModelParams, delta: float) -> tuple[float, float]:
    return (
        delta * math.log(p.s_m1 / p.s_b),
        delta * math.log(p.s_m2 / p.s_b),
    )


def e4_point(t: float) -> PopulationState:
    """One member of the bilingual-free equilibrium segment, 0 < t < 1."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie strictly inside (0, 1), got {t!r}")
    return PopulationState(t, 1.0 - t, 0.0)


def e7_coords(p: ModelParams) -> PopulationState:
    """Coordinates of the interior (full-coexistence) equilibrium."""
    return _coords(p, EquilibriumKind.E7)


def _coords(p: ModelParams, kind: EquilibriumKind) -> PopulationState:
    if kind == EquilibriumKind.E1:
        return PopulationState(1.0, 0.0, 0.0)
    if kind == EquilibriumKind.E2:
        return PopulationState(0.0, 1.0, 0.0)
    if kind == EquilibriumKind.E3:
        return PopulationState(0.0, 0.0, 1.0)
    if kind == EquilibriumKind.E4:
        return e4_point(0.5)
    delta = delta_exponent(p.alpha, p.beta).require()
    l1, l2 = _ratio_logs(p, delta)
    if kind == EquilibriumKind.E5:
        m1, b = _normalized_weights([l1, 0.0])
        return PopulationState(m1, 0.0, b)
    if kind == EquilibriumKind.E6:
        m2, b = _normalized_weights([l2, 0.0])
        return PopulationState(0.0, m2, b)
    m1, m2, b = _normalized_weights([l1, l2, 0.0])
    return PopulationState(m1, m2, b)


# --- Jacobians --------------------------------------------------------------

def _partials(p: ModelParams, m1: float, m2: float, b: float):
    """Nonzero partial derivatives of (dm1, dm2) at (m1, m2, b).

    Exponents alpha-1, beta, beta+1 are all nonnegative for valid
    parameters, and 0.0**0.0 evaluates to 1.0, which is the correct
    one-sided derivative limit at alpha = 1.
    """
    al, be, lam = p.alpha, p.beta, p.lam
    f_m1 = lam * (p.s_m1 * al * m1**(al - 1.0) * b**(be + 1.0)
                  - p.s_b * (be + 1.0) * m1**be * b**al)
    f_b = lam * (p.s_m1 * (be + 1.0) * m1**al * b**be
                 - p.s_b * al * b**(al - 1.0) * m1**(be + 1.0))
    g_m2 = lam * (p.s_m2 * al * m2**(al - 1.0) * b**(be + 1.0)
                  - p.s_b * (be + 1.0) * m2**be * b**al)
    g_b = lam * (p.s_m2 * (be + 1.0) * m2**al * b**be
                 - p.s_b * al * b**(al - 1.0) * m2**(be + 1.0))
    return f_m1, f_b, g_m2, g_b


def jacobian_full(p: ModelParams, s: PopulationState) -> np.ndarray:
    """3x3 Jacobian of the full field; column sums vanish identically."""
    f_m1, f_b, g_m2, g_b = _partials(p, s.m1, s.m2, s.b)
    return np.array([
        [f_m1, 0.0, f_b],
        [0.0, g_m2, g_b],
        [-f_m1, -g_m2, -f_b - g_b],
    ])


def jacobian_reduced(p: ModelParams, m1: float, m2: float) -> np.ndarray:
    """2x2 Jacobian of the reduced field, with b = 1 - m1 - m2.

    Equals [[f_m1 - f_b, f_m2 - f_b], [g_m1 - g_b, g_m2 - g_b]] where f
    and g are the full-field components (f_m2 and g_m1 vanish
    identically because dm1 never involves m2 and vice versa).
    """
    if m1 < 0.0 or m2 < 0.0 or m1 + m2 > 1.0 + 1e-12:
        raise ValueError(f"({m1!r}, {m2!r}) outside the reduced simplex")
    b = max(1.0 - m1 - m2, 0.0)
    f_m1, f_b, g_m2, g_b = _partials(p, m1, m2, b)
    return np.array([
        [f_m1 - f_b, -f_b],
        [-g_b, g_m2 - g_b],
    ])


def char_poly_full(j: np.ndarray) -> tuple[float, float, float, float]:
    """Monic coefficients (1, c2, c1, c0) of det(x*I - J) for a 3x3 J."""
    a, b, c = j[0]
    d, e, f = j[1]
    g, h, i = j[2]
    tr = a + e + i
    minors = (e * i - f * h) + (a * i - c * g) + (a * e - b * d)
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return (1.0, -tr, minors, -det)


def char_poly_reduced(j: np.ndarray) -> tuple[float, float, float]:
    """Monic coefficients (1, c1, c0) of det(x*I - J) for a 2x2 J."""
    tr = j[0, 0] + j[1, 1]
    det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
    return (1.0, -tr, det)


def eigvals_reduced(p: ModelParams, m1: float, m2: float) -> tuple[complex, complex]:
    """Closed-form eigenvalues of the reduced Jacobian (trace/determinant)."""
    _, neg_tr, det = char_poly_reduced(jacobian_reduced(p, m1, m2))
    tr = -neg_tr
    disc = tr * tr - 4.0 * det
    root = math.sqrt(disc) if disc >= 0.0 else cmath.sqrt(disc)
    return (complex((tr + root) / 2.0), complex((tr - root) / 2.0))


# --- stability --------------------------------------------------------------

_BOUNDARY_KINDS = (EquilibriumKind.E3, EquilibriumKind.E5, EquilibriumKind.E6)


def classify_stability(p: ModelParams, e: EquilibriumPoint,
                       zero_tol: float = ZERO_EIG_TOL) -> Stability:
    """Stability class of an equilibrium from the reduced spectrum.

    Real parts below ``zero_tol`` in magnitude are treated as zero (the
    eigen-solver noise floor, and the structural zeros of the boundary
    faces).  Surviving eigenvalues decide: all negative is stable, all
    positive unstable, mixed is a saddle.  Structural zeros at E3/E5/E6
    are resolved by the sign of delta (see module docstring); a point
    whose spectrum is entirely flat and unresolvable reports
    degenerate-line.  E1 and E2 report undefined-dynamics: with one
    monolingual pool empty and no bilinguals the model has no
    communication channel left.
    """
    if e.kind in (EquilibriumKind.E1, EquilibriumKind.E2):
        return Stability.UNDEFINED_DYNAMICS
    if e.kind == EquilibriumKind.E4:
        return Stability.DEGENERATE_LINE

    ev = eigvals_reduced(p, e.coords.m1, e.coords.m2)
    survivors = [z.real for z in ev if abs(z.real) >= zero_tol]
    has_pos = any(r > 0.0 for r in survivors)
    has_neg = any(r < 0.0 for r in survivors)

    if e.kind in _BOUNDARY_KINDS and len(survivors) < 2:
        delta = delta_exponent(p.alpha, p.beta)
        if delta.degenerate:
            return Stability.DEGENERATE_LINE
        if delta.value > 0.0:
            has_pos = True   # vanished pools regrow algebraically
        else:
            has_neg = True   # vanished pools keep decaying

    if has_pos and has_neg:
        return Stability.SADDLE
    if has_pos:
        return Stability.UNSTABLE
    if has_neg:
        return Stability.STABLE
    return Stability.DEGENERATE_LINE


def equilibria_all(p: ModelParams) -> list[EquilibriumPoint]:
    """All seven equilibria with reduced-spectrum eigenvalues and classes.

    E4 is reported through its midpoint representative (use
    ``e4_point`` to sample the full segment).  Raises
    DegenerateExponentError on the line alpha - beta = 1.
    """
    delta_exponent(p.alpha, p.beta).require()
    points = []
    for kind in EquilibriumKind:
        coords = _coords(p, kind)
        if kind == EquilibriumKind.E4:
            ev = (complex(0.0), complex(0.0))
        else:
            ev = eigvals_reduced(p, coords.m1, coords.m2)
        stub = EquilibriumPoint(kind, coords, ev, Stability.DEGENERATE_LINE)
        points.append(
            EquilibriumPoint(kind, coords, ev, classify_stability(p, stub))
        )
    return points


# --- printed stability conditions -------------------------------------------

@dataclass(frozen=True)
class TraceConditionReport:
    """Sign decomposition of the interior-equilibrium trace condition.

    The trace of the reduced Jacobian at E7 factors as
    (1/(-delta)) * (s_m1/s_b)**(-delta) * (s_m2/s_b)**(-delta) * S with
    S a four-term sum of positive powers, so its sign is the sign of
    1/(-delta) alone; ``satisfied`` is True when the product is
    negative.  Individual factors may overflow to inf for extreme
    delta; the verdict is computed from the sign structure.
    """

    satisfied: bool
    leading: float
    factor_m1: float
    factor_m2: float
    sum_term: float
    product: float


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def e7_trace_condition(p: ModelParams) -> TraceConditionReport:
    delta = delta_exponent(p.alpha, p.beta).require()
    al, be = p.alpha, p.beta
    ls1, ls2, lsb = math.log(p.s_m1), math.log(p.s_m2), math.log(p.s_b)
    leading = -1.0 / delta
    factor_m1 = _safe_exp(-delta * (ls1 - lsb))
    factor_m2 = _safe_exp(-delta * (ls2 - lsb))
    sum_term = (
        _safe_exp((be + 1.0) * delta * ls1 - al * delta * lsb)
        + _safe_exp((be + 1.0) * delta * ls2 - al * delta * lsb)
        + _safe_exp(be * delta * ls1 - (al - 1.0) * delta * lsb)
        + _safe_exp(be * delta * ls2 - (al - 1.0) * delta * lsb)
    )
    product = leading * factor_m1 * factor_m2 * sum_term
    return TraceConditionReport(
        satisfied=leading < 0.0,   # the other three factors are positive
        leading=leading,
        factor_m1=factor_m1,
        factor_m2=factor_m2,
        sum_term=sum_term,
        product=product,
    )


@dataclass(frozen=True)
class BoundaryConditionReport:
    """Trace-negativity and positivity checks for a boundary equilibrium."""

    kind: EquilibriumKind
    trace_expression: float
    trace_negative: bool
    factor_positive: bool
    sum_positive: bool


def boundary_conditions(p: ModelParams, which) -> BoundaryConditionReport:
    """In-face trace condition for E5 or E6.

    The E6 expression is (1/(-delta)) * (s_m2/s_b)**(-delta) * S with
    S = s_m2**((beta+2)*delta)/s_b**((alpha+1)*delta)
      + s_m2**((beta+1)*delta)/s_b**(alpha*delta);
    E5 mirrors it with s_m1 in place of s_m2.
    """
    kind = EquilibriumKind(which) if not isinstance(which, EquilibriumKind) else which
    if kind not in (EquilibriumKind.E5, EquilibriumKind.E6):
        raise ValueError(f"boundary conditions are defined for E5/E6, got {kind}")
    delta = delta_exponent(p.alpha, p.beta).require()
    al, be = p.alpha, p.beta
    s = p.s_m1 if kind == EquilibriumKind.E5 else p.s_m2
    ls, lsb = math.log(s), math.log(p.s_b)
    leading = -1.0 / delta
    factor = _safe_exp(-delta * (ls - lsb))
    sum_term = (
        _safe_exp((be + 2.0) * delta * ls - (al + 1.0) * delta * lsb)
        + _safe_exp((be + 1.0) * delta * ls - al * delta * lsb)
    )
    expr = leading * factor * sum_term
    return BoundaryConditionReport(
        kind=kind,
        trace_expression=expr,
        trace_negative=leading < 0.0,
        factor_positive=factor > 0.0,
        sum_positive=sum_term > 0.0,
    )


def e3_limit(p: ModelParams, alpha_beta: float | None = None) -> PopulationState:
    """Bilingual-takeover limit of the interior equilibrium.

    With no argument, returns the alpha - beta -> 1 limit (0, 0, 1).
    Given a finite ``alpha_beta``, returns the interior equilibrium for
    ``p`` with alpha replaced by beta + alpha_beta, so the monotone
    climb of the bilingual share toward 1 can be traced along the
    approach.
    """
    if alpha_beta is None:
        return PopulationState(0.0, 0.0, 1.0)
    q = p.replace(alpha=p.beta + alpha_beta)
    return _coords(q, EquilibriumKind.E7)
