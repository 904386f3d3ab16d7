import pytest
from hypothesis import given, strategies as st

from langcomp.competency import (
    CompetencyProfile,
    MutualityPair,
    NoCommunicationError,
    bilingual_status,
    mutuality,
)

fractions = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
profiles = st.builds(CompetencyProfile, fractions, fractions)


def test_mutuality_worked_example():
    # speakers at 80/50 and 60/70 percent share 60% of M1 and 50% of M2
    m = mutuality(CompetencyProfile(0.80, 0.50), CompetencyProfile(0.60, 0.70))
    assert m == MutualityPair(0.60, 0.50)


def test_mutuality_perfect_bilinguals():
    m = mutuality(CompetencyProfile(1.0, 1.0), CompetencyProfile(1.0, 1.0))
    assert m == MutualityPair(1.0, 1.0)


def test_mutuality_zero_component():
    m = mutuality(CompetencyProfile(0.0, 0.9), CompetencyProfile(0.7, 0.3))
    assert m == MutualityPair(0.0, 0.3)


@pytest.mark.parametrize("bad", [-0.1, 1.5])
def test_competency_out_of_range(bad):
    with pytest.raises(ValueError):
        CompetencyProfile(bad, 0.5)


@given(profiles, profiles)
def test_mutuality_symmetric(p, q):
    assert mutuality(p, q) == mutuality(q, p)


@given(profiles, profiles, fractions)
def test_mutuality_monotone(p, q, bumped):
    base = mutuality(p, q)
    raised = mutuality(CompetencyProfile(max(p.c_m1, bumped), p.c_m2), q)
    assert raised.x_m1 >= base.x_m1
    assert raised.x_m2 == base.x_m2


def test_status_worked_example():
    # 0.3*0.6 + 0.7*0.5 by hand
    assert bilingual_status(MutualityPair(0.60, 0.50), 0.3, 0.7) == pytest.approx(0.53)


def test_status_perfect_pair_tops_out():
    assert bilingual_status(MutualityPair(1.0, 1.0), 0.3, 0.7) == pytest.approx(1.0)


def test_status_no_communication():
    with pytest.raises(NoCommunicationError):
        bilingual_status(MutualityPair(0.0, 0.0), 0.3, 0.7)


def test_status_validation():
    with pytest.raises(ValueError):
        bilingual_status(MutualityPair(0.5, 0.5), 0.0, 0.7)
    with pytest.raises(ValueError):
        bilingual_status(MutualityPair(0.5, 0.5), 1.0, 0.7)
    with pytest.raises(ValueError):
        bilingual_status(MutualityPair(0.5, 0.5), 0.6, 0.7)  # sums above 1


statuses = st.floats(min_value=0.05, max_value=0.9, allow_nan=False)


@given(fractions, fractions, statuses)
def test_status_bounds_and_monotonicity(x1, x2, s1):
    s2 = min(0.95 - s1, 0.9)
    pair = MutualityPair(x1, x2)
    if x1 == 0.0 and x2 == 0.0:
        with pytest.raises(NoCommunicationError):
            bilingual_status(pair, s1, s2)
        return
    value = bilingual_status(pair, s1, s2)
    assert 0.0 < value <= s1 + s2
    bigger = bilingual_status(MutualityPair(min(x1 + 0.1, 1.0), x2), s1, s2)
    assert bigger >= value
