import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from langcomp.model import (
    Group,
    ModelParams,
    PopulationState,
    UnsupportedTransitionError,
    read_params,
    rhs_full,
    rhs_reduced,
    transition_rate,
    validate_params,
    write_params,
)
from langcomp.equilibria import e7_coords
from langcomp.dynamics import IntegratorOptions, integrate

from conftest import REF


def test_transition_rate_direct_formula(coexistence_params):
    state = PopulationState(0.5, 0.3, 0.2)
    rate = transition_rate(coexistence_params, Group.M1, Group.B, state)
    assert rate == pytest.approx(400.0 * 0.1 * 0.2**1.1 * 0.5**3.6, rel=1e-15)


def test_transition_rate_vanishes_with_empty_pools(coexistence_params):
    no_b = PopulationState(0.6, 0.4, 0.0)
    assert transition_rate(coexistence_params, Group.B, Group.M1, no_b) == 0.0
    no_m1 = PopulationState(0.0, 0.6, 0.4)
    assert transition_rate(coexistence_params, Group.M1, Group.B, no_m1) == 0.0


def test_direct_monolingual_transition_rejected(coexistence_params):
    state = PopulationState(0.5, 0.3, 0.2)
    with pytest.raises(UnsupportedTransitionError):
        transition_rate(coexistence_params, Group.M1, Group.M2, state)
    with pytest.raises(UnsupportedTransitionError):
        transition_rate(coexistence_params, Group.M2, Group.M1, state)


def test_rhs_vanishes_at_interior_equilibrium(coexistence_params):
    e7 = e7_coords(coexistence_params)
    assert rhs_full(coexistence_params, e7).inf_norm < 1e-10


def test_rhs_vertex_is_fixed_and_flagged(coexistence_params):
    for vertex in [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]:
        d = rhs_full(coexistence_params, PopulationState(*vertex))
        assert d.as_tuple() == (0.0, 0.0, 0.0)
        assert d.degenerate


def test_rhs_symmetry_between_groups():
    p = ModelParams(s_m1=0.4, s_m2=0.4, s_b=0.2, lam=400.0, alpha=1.5, beta=2.0)
    d = rhs_full(p, PopulationState(0.35, 0.35, 0.3))
    assert d.dm1 == d.dm2


simplex_points = st.tuples(
    st.floats(min_value=0.01, max_value=0.98),
    st.floats(min_value=0.01, max_value=0.98),
).filter(lambda t: t[0] + t[1] <= 0.99)


@given(simplex_points)
def test_rhs_conserves_simplex(pt):
    p = ModelParams(s_b=0.4, alpha=1.7, beta=2.3, **REF)
    m1, m2 = pt
    d = rhs_full(p, PopulationState(m1, m2, 1.0 - m1 - m2))
    assert d.dm1 + d.dm2 + d.db == 0.0


@given(simplex_points, st.floats(min_value=0.1, max_value=10.0))
def test_rhs_lambda_rescaling(pt, c):
    m1, m2 = pt
    s = PopulationState(m1, m2, 1.0 - m1 - m2)
    p = ModelParams(s_b=0.4, alpha=1.7, beta=2.3, **REF)
    q = p.replace(lam=c * p.lam)
    d, e = rhs_full(p, s), rhs_full(q, s)
    assert e.dm1 == pytest.approx(c * d.dm1, rel=1e-12)
    assert e.dm2 == pytest.approx(c * d.dm2, rel=1e-12)


@given(simplex_points)
def test_reduced_matches_full(pt):
    p = ModelParams(s_b=0.25, alpha=2.1, beta=1.4, **REF)
    m1, m2 = pt
    full = rhs_full(p, PopulationState(m1, m2, 1.0 - m1 - m2))
    red = rhs_reduced(p, m1, m2)
    assert red[0] == pytest.approx(full.dm1, rel=1e-12, abs=1e-300)
    assert red[1] == pytest.approx(full.dm2, rel=1e-12, abs=1e-300)


def test_reduced_edge_and_domain(coexistence_params):
    assert rhs_reduced(coexistence_params, 0.4, 0.6) == (0.0, 0.0)
    with pytest.raises(ValueError):
        rhs_reduced(coexistence_params, 0.7, 0.5)


def test_reduced_direction_agrees_with_flow(coexistence_params):
    # the instantaneous field at (0.5, 0.3) must point the way the
    # trajectory actually moves over a short horizon
    dm1, dm2 = rhs_reduced(coexistence_params, 0.5, 0.3)
    traj = integrate(coexistence_params, PopulationState(0.5, 0.3, 0.2),
                     IntegratorOptions(max_time=1e-3))
    disp = traj.states[-1] - traj.states[0]
    assert math.copysign(1, dm1) == math.copysign(1, disp[0])
    assert math.copysign(1, dm2) == math.copysign(1, disp[1])
    assert (dm1, dm2) != (0.0, 0.0)


def test_validate_params_reference_values():
    assert validate_params(s_b=0.1, alpha=1.1, beta=3.6, **REF) == []


def test_validate_params_reports_violations():
    errs = validate_params(0.3, 0.7, 0.1, 400.0, 0.5, 3.6)
    assert any("alpha below 1" in e for e in errs)
    errs = validate_params(0.3, 0.7, 0.1, 0.0, 1.1, 3.6)
    assert any("lambda must be positive" in e for e in errs)
    with pytest.raises(ValueError):
        ModelParams(0.3, 0.7, 0.1, 400.0, 0.5, 3.6)


def test_population_state_renormalizes():
    s = PopulationState(0.5, 0.3, 0.2 + 5e-13)
    assert s.m1 + s.m2 + s.b == pytest.approx(1.0, abs=1e-15)
    assert s.b == pytest.approx(0.2, abs=1e-12)
    with pytest.raises(ValueError):
        PopulationState(0.5, 0.3, 0.3)
    with pytest.raises(ValueError):
        PopulationState(-0.1, 0.6, 0.5)


def test_params_file_roundtrip(tmp_path, coexistence_params):
    path = tmp_path / "params.txt"
    write_params(path, coexistence_params)
    again = read_params(path)
    assert again == coexistence_params


def test_params_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("s_m1 = 0.3\nwhatever = 1\n")
    with pytest.raises(ValueError, match="unknown key"):
        read_params(bad)
    bad.write_text("s_m1 = 0.3\n")
    with pytest.raises(ValueError, match="missing keys"):
        read_params(bad)
    bad.write_text("s_m1 = abc\n")
    with pytest.raises(ValueError, match="decimal"):
        read_params(bad)


def test_params_file_comments_and_spacing(tmp_path):
    path = tmp_path / "ok.txt"
    path.write_text(
        "# reference set\ns_m1 = 0.3\ns_m2=0.7\n\ns_b = 0.1  # bilinguals\n"
        "lambda = 400\nalpha = 1.1\nbeta = 3.6\n"
    )
    p = read_params(path)
    assert p == ModelParams(0.3, 0.7, 0.1, 400.0, 1.1, 3.6)
