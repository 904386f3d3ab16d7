"""Three-group language-competition model: parameters, states, vector field.

A well-mixed society holds two monolingual pools M1 and M2 and one
bilingual pool B, with population fractions (m1, m2, b) on the unit
simplex.  Speakers never jump directly between the monolingual pools;
every transition passes through B.  The flow rate from group i to group
j is

    P_ij = lambda * s_j * (fraction of j)**alpha * (fraction of i)**beta

where s_j is the destination group's social status, alpha >= 1 weights
the pull of the destination's population share (ease of attraction) and
beta >= 1 weights the retention of the origin pool (ease of survival).
Multiplying each rate by the origin fraction and collecting both flows
for each monolingual pool gives the vector field

    dm_i/dt = lambda*s_mi*m_i**alpha*b**(beta+1) - lambda*s_b*b**alpha*m_i**(beta+1)
    db/dt   = -(dm1/dt + dm2/dt)

which conserves the simplex exactly.  The three vertices are fixed
points of the algebra, but with a monolingual pool at zero the system
has no communication channel left, so derivatives returned there carry
a ``degenerate`` flag.

Parameter files are flat ``key = value`` text with keys s_m1, s_m2,
s_b, lambda, alpha, beta; ``#`` starts a comment.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "Group",
    "ModelParams",
    "PopulationState",
    "StateDerivative",
    "UnsupportedTransitionError",
    "validate_params",
    "transition_rate",
    "rhs_full",
    "rhs_reduced",
    "read_params",
    "write_params",
    "params_text",
]

SIMPLEX_TOL = 1e-12


class UnsupportedTransitionError(ValueError):
    """Direct moves between the two monolingual groups do not exist."""


class Group(enum.Enum):
    M1 = "M1"
    M2 = "M2"
    B = "B"


def validate_params(s_m1, s_m2, s_b, lam, alpha, beta) -> list[str]:
    """Return every violated range constraint (empty list means valid)."""
    errors = []
    if not 0.0 < s_m1 < 1.0:
        errors.append(f"s_m1 must lie in (0, 1), got {s_m1!r}")
    if not 0.0 < s_m2 < 1.0:
        errors.append(f"s_m2 must lie in (0, 1), got {s_m2!r}")
    if not 0.0 < s_b <= 1.0:
        errors.append(f"s_b must lie in (0, 1], got {s_b!r}")
    if not lam > 0.0:
        errors.append(f"lambda must be positive, got {lam!r}")
    if not alpha >= 1.0:
        errors.append(f"alpha below 1: got {alpha!r}")
    if not beta >= 1.0:
        errors.append(f"beta below 1: got {beta!r}")
    return errors


@dataclass(frozen=True)
class ModelParams:
    """Statuses and transition-law constants.

    ``lam`` is the time-scale factor (the parameter file key is
    ``lambda``); rescaling it only reparameterizes time.
    """

    s_m1: float
    s_m2: float
    s_b: float
    lam: float
    alpha: float
    beta: float

    def __post_init__(self):
        errors = validate_params(
            self.s_m1, self.s_m2, self.s_b, self.lam, self.alpha, self.beta
        )
        if errors:
            raise ValueError("; ".join(errors))

    @property
    def alpha_beta(self) -> float:
        return self.alpha - self.beta

    def status(self, group: Group) -> float:
        return {
            Group.M1: self.s_m1,
            Group.M2: self.s_m2,
            Group.B: self.s_b,
        }[group]

    def replace(self, **changes) -> "ModelParams":
        fields = dict(
            s_m1=self.s_m1, s_m2=self.s_m2, s_b=self.s_b,
            lam=self.lam, alpha=self.alpha, beta=self.beta,
        )
        fields.update(changes)
        return ModelParams(**fields)


@dataclass(frozen=True)
class PopulationState:
    """Point on the population simplex m1 + m2 + b = 1.

    Construction accepts components whose sum deviates from 1 by at most
    1e-12 and then renormalizes exactly, so integrator roundoff cannot
    accumulate into validation failures.
    """

    m1: float
    m2: float
    b: float

    def __post_init__(self):
        for name, v in (("m1", self.m1), ("m2", self.m2), ("b", self.b)):
            if v < 0.0 or math.isnan(v):
                raise ValueError(f"{name} must be nonnegative, got {v!r}")
        total = self.m1 + self.m2 + self.b
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValueError(
                f"components must sum to 1 within {SIMPLEX_TOL}, got {total!r}"
            )
        if total != 1.0:
            object.__setattr__(self, "m1", self.m1 / total)
            object.__setattr__(self, "m2", self.m2 / total)
            object.__setattr__(self, "b", self.b / total)

    def fraction(self, group: Group) -> float:
        return {Group.M1: self.m1, Group.M2: self.m2, Group.B: self.b}[group]

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.m1, self.m2, self.b)

    @property
    def is_vertex(self) -> bool:
        return 1.0 in (self.m1, self.m2, self.b)

    @property
    def strictly_positive(self) -> bool:
        return self.m1 > 0.0 and self.m2 > 0.0 and self.b > 0.0


@dataclass(frozen=True)
class StateDerivative:
    """Time derivative of a PopulationState; components sum to zero exactly.

    ``degenerate`` marks evaluations at simplex vertices, where the
    algebraic field vanishes but the dynamics are frozen rather than
    genuinely stationary.
    """

    dm1: float
    dm2: float
    db: float
    degenerate: bool = False

    def __post_init__(self):
        if self.db != -(self.dm1 + self.dm2):
            raise ValueError("db must equal -(dm1 + dm2) exactly")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.dm1, self.dm2, self.db)

    @property
    def inf_norm(self) -> float:
        return max(abs(self.dm1), abs(self.dm2), abs(self.db))


def transition_rate(p: ModelParams, frm: Group, to: Group, s: PopulationState) -> float:
    """Per-capita flow rate lambda * s_to * f_to**alpha * f_from**beta.

    Only M1<->B and M2<->B moves exist; requesting M1->M2 or M2->M1
    raises UnsupportedTransitionError.
    """
    if frm == to:
        raise UnsupportedTransitionError("source and destination coincide")
    if Group.B not in (frm, to):
        raise UnsupportedTransitionError(
            f"no direct transition {frm.value}->{to.value}: all moves pass through B"
        )
    f_to = s.fraction(to)
    f_from = s.fraction(frm)
    return p.lam * p.status(to) * f_to**p.alpha * f_from**p.beta


def _rhs_components(p: ModelParams, m1: float, m2: float, b: float):
    b_out = b**p.alpha            # attracts movers into B
    b_in = b**(p.beta + 1.0)      # B population feeding the monolingual pools
    dm1 = p.lam * (p.s_m1 * m1**p.alpha * b_in - p.s_b * b_out * m1**(p.beta + 1.0))
    dm2 = p.lam * (p.s_m2 * m2**p.alpha * b_in - p.s_b * b_out * m2**(p.beta + 1.0))
    return dm1, dm2


def rhs_full(p: ModelParams, s: PopulationState) -> StateDerivative:
    """Full 3-D vector field at ``s``; db is -(dm1 + dm2) by construction."""
    dm1, dm2 = _rhs_components(p, s.m1, s.m2, s.b)
    return StateDerivative(dm1, dm2, -(dm1 + dm2), degenerate=s.is_vertex)


def rhs_reduced(p: ModelParams, m1: float, m2: float) -> tuple[float, float]:
    """First two components of the field with b eliminated as 1 - m1 - m2."""
    if m1 < 0.0 or m2 < 0.0:
        raise ValueError(f"fractions must be nonnegative, got ({m1!r}, {m2!r})")
    if m1 + m2 > 1.0 + SIMPLEX_TOL:
        raise ValueError(f"m1 + m2 must not exceed 1, got {m1 + m2!r}")
    b = max(1.0 - m1 - m2, 0.0)
    return _rhs_components(p, m1, m2, b)


# --- parameter file format ------------------------------------------------

_FILE_KEYS = ("s_m1", "s_m2", "s_b", "lambda", "alpha", "beta")


def params_text(p: ModelParams) -> str:
    values = dict(
        s_m1=p.s_m1, s_m2=p.s_m2, s_b=p.s_b,
        **{"lambda": p.lam}, alpha=p.alpha, beta=p.beta,
    )
    return "".join(f"{k} = {values[k]:.17g}\n" for k in _FILE_KEYS)


def write_params(path, p: ModelParams) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(params_text(p))


def read_params(path) -> ModelParams:
    """Parse a flat key-value parameter file into ModelParams."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key = key.strip()
            if key not in _FILE_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                values[key] = float(value.strip())
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: not a decimal number: {value.strip()!r}"
                ) from None
    missing = [k for k in _FILE_KEYS if k not in values]
    if missing:
        raise ValueError(f"{path}: missing keys: {', '.join(missing)}")
    values["lam"] = values.pop("lambda")
    return ModelParams(**values)
