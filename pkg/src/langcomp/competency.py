"""Pairwise communication capacity between bilingual speakers.

Two speakers can only draw on the part of each language's vocabulary that
both of them command, so a conversation carries a per-language *mutuality*
equal to the smaller of the two competencies.  The social payoff of being
bilingual is then the mutuality-weighted blend of the two monolingual
statuses: a pair of perfect bilinguals (both fully fluent in both
languages) attains the combined status of both language groups, while a
pair with no shared vocabulary cannot converse at all and has no defined
bilingual status.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "CompetencyProfile",
    "MutualityPair",
    "NoCommunicationError",
    "mutuality",
    "bilingual_status",
]


class NoCommunicationError(ValueError):
    """Both mutualities are zero: the pair shares no usable vocabulary."""


def _check_fraction(name, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class CompetencyProfile:
    """One speaker's command of each language, as vocabulary fractions."""

    c_m1: float
    c_m2: float

    def __post_init__(self):
        _check_fraction("c_m1", self.c_m1)
        _check_fraction("c_m2", self.c_m2)


@dataclass(frozen=True)
class MutualityPair:
    """Shared usable vocabulary of a speaker pair, per language."""

    x_m1: float
    x_m2: float

    def __post_init__(self):
        _check_fraction("x_m1", self.x_m1)
        _check_fraction("x_m2", self.x_m2)


def mutuality(p1: CompetencyProfile, p2: CompetencyProfile) -> MutualityPair:
    """Per-language minimum of the two speakers' competencies.

    Symmetric in its arguments and monotone: raising any single
    competency never lowers either component.
    """
    return MutualityPair(min(p1.c_m1, p2.c_m1), min(p1.c_m2, p2.c_m2))


def bilingual_status(m: MutualityPair, s_m1: float, s_m2: float) -> float:
    """Status of a bilingual pair: s_m1*x_m1 + s_m2*x_m2.

    The monolingual statuses must lie in (0, 1) and sum to at most 1 so
    the result stays in (0, 1]; equality with 1 needs full mutuality in
    both languages and statuses summing to exactly 1.  A pair with zero
    mutuality in both languages raises NoCommunicationError, since a
    bilingual status of 0 is not meaningful.
    """
    for name, s in (("s_m1", s_m1), ("s_m2", s_m2)):
        if not 0.0 < s < 1.0:
            raise ValueError(f"{name} must lie in (0, 1), got {s!r}")
    if s_m1 + s_m2 > 1.0:
        raise ValueError(
            f"monolingual statuses must sum to at most 1, got {s_m1 + s_m2!r}"
        )
    if m.x_m1 == 0.0 and m.x_m2 == 0.0:
        raise NoCommunicationError(
            "no communication possible: zero mutuality in both languages"
        )
    return s_m1 * m.x_m1 + s_m2 * m.x_m2
