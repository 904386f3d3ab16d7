import math

import numpy as np
import pytest

from langcomp.model import ModelParams, PopulationState, rhs_full, rhs_reduced
from langcomp.equilibria import (
    DegenerateExponentError,
    EquilibriumKind,
    Stability,
    boundary_conditions,
    char_poly_full,
    char_poly_reduced,
    classify_stability,
    delta_exponent,
    e3_limit,
    e4_point,
    e7_coords,
    e7_trace_condition,
    equilibria_all,
    eigvals_reduced,
    jacobian_full,
    jacobian_reduced,
)

from conftest import REF, bistable_params


def by_kind(params):
    return {e.kind: e for e in equilibria_all(params)}


def rng():
    return np.random.default_rng(20240817)


def random_params(gen):
    s_m1 = gen.uniform(0.05, 0.9)
    s_m2 = gen.uniform(0.05, 0.9)
    s_b = gen.uniform(0.05, 1.0)
    lam = gen.uniform(1.0, 400.0)
    alpha = gen.uniform(1.0, 4.0)
    beta = gen.uniform(1.0, 4.0)
    if abs(alpha - beta - 1.0) < 0.05:
        alpha += 0.1
    return ModelParams(s_m1, s_m2, s_b, lam, alpha, beta)


def random_interior(gen, margin=0.05):
    while True:
        m1 = gen.uniform(margin, 1.0 - 2.0 * margin)
        m2 = gen.uniform(margin, 1.0 - 2.0 * margin)
        if m1 + m2 <= 1.0 - margin:
            return m1, m2


# --- delta -------------------------------------------------------------------

def test_delta_reference_exponents():
    assert delta_exponent(1.1, 3.6).value == pytest.approx(1.0 / 3.5)
    assert delta_exponent(2.0, 1.1).value == pytest.approx(10.0)


def test_delta_degenerate_line():
    d = delta_exponent(2.1, 1.1)
    assert d.degenerate
    with pytest.raises(DegenerateExponentError):
        d.require()


# --- coordinates -------------------------------------------------------------

def test_coexistence_coordinates(coexistence_params):
    e7 = by_kind(coexistence_params)[EquilibriumKind.E7].coords
    assert e7.m1 == pytest.approx(0.33283, abs=5e-6)
    assert e7.m2 == pytest.approx(0.42400, abs=5e-6)
    assert e7.b == pytest.approx(0.24317, abs=5e-6)


def test_band_e6_coordinates(band_e6_params):
    # exact arithmetic: r2 = (0.7/0.6)**10 = 4.6716526, m2* = r2/(1+r2)
    e6 = by_kind(band_e6_params)[EquilibriumKind.E6].coords
    assert e6.m1 == 0.0
    assert e6.m2 == pytest.approx((7 / 6) ** 10 / (1 + (7 / 6) ** 10), rel=1e-12)
    assert e6.m2 == pytest.approx(0.823684, abs=5e-6)
    assert e6.b == pytest.approx(0.176316, abs=5e-6)


def test_equal_statuses_put_e7_at_center():
    p = ModelParams(0.3, 0.3, 0.3, 400.0, 1.5, 2.5)
    e7 = e7_coords(p)
    assert e7.as_tuple() == pytest.approx((1 / 3, 1 / 3, 1 / 3))


def test_all_points_annihilate_rhs():
    gen = rng()
    for _ in range(12):
        p = random_params(gen)
        for e in equilibria_all(p):
            assert rhs_full(p, e.coords).inf_norm < 1e-10, e.kind


def test_status_scaling_leaves_coordinates_fixed(coexistence_params):
    p = coexistence_params
    scaled = ModelParams(p.s_m1 * 0.5, p.s_m2 * 0.5, p.s_b * 0.5,
                         p.lam, p.alpha, p.beta)
    for a, b in zip(equilibria_all(p), equilibria_all(scaled)):
        assert a.coords.as_tuple() == pytest.approx(b.coords.as_tuple(), abs=1e-14)


def test_e4_point_validation():
    assert e4_point(0.25).as_tuple() == (0.25, 0.75, 0.0)
    with pytest.raises(ValueError):
        e4_point(0.0)
    with pytest.raises(ValueError):
        e4_point(1.0)


# --- Jacobians ---------------------------------------------------------------

def fd_jacobian(fn, x, h=1e-6):
    """Central differences of a vector function, one column per input."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(len(x)):
        hi = np.zeros_like(x)
        hi[i] = h
        cols.append((np.asarray(fn(x + hi)) - np.asarray(fn(x - hi))) / (2 * h))
    return np.stack(cols, axis=1)


def test_jacobian_reduced_finite_differences():
    gen = rng()
    for _ in range(20):
        p = random_params(gen)
        m1, m2 = random_interior(gen)
        analytic = jacobian_reduced(p, m1, m2)
        numeric = fd_jacobian(lambda x: rhs_reduced(p, x[0], x[1]), (m1, m2))
        scale = max(1.0, np.abs(analytic).max())
        assert np.abs(analytic - numeric).max() / scale < 1e-6


def test_jacobian_full_finite_differences():
    gen = rng()
    for _ in range(20):
        p = random_params(gen)
        m1, m2 = random_interior(gen)
        x = np.array([m1, m2, 1.0 - m1 - m2])

        def raw(y, p=p):
            b_in = y[2] ** (p.beta + 1.0)
            b_out = y[2] ** p.alpha
            dm1 = p.lam * (p.s_m1 * y[0] ** p.alpha * b_in
                           - p.s_b * b_out * y[0] ** (p.beta + 1.0))
            dm2 = p.lam * (p.s_m2 * y[1] ** p.alpha * b_in
                           - p.s_b * b_out * y[1] ** (p.beta + 1.0))
            return (dm1, dm2, -(dm1 + dm2))

        analytic = jacobian_full(p, PopulationState(*x))
        numeric = fd_jacobian(raw, x)
        scale = max(1.0, np.abs(analytic).max())
        assert np.abs(analytic - numeric).max() / scale < 1e-6


def test_jacobian_zero_on_bilingual_free_segment(band_e4_params):
    for t in (0.2, 0.5, 0.8):
        j = jacobian_reduced(band_e4_params, t, 1.0 - t)
        assert np.all(j == 0.0)


def test_characteristic_polynomial_factorization():
    # the 3-D spectrum is the reduced spectrum plus the constraint zero
    gen = rng()
    for _ in range(40):
        p = random_params(gen)
        m1, m2 = random_interior(gen)
        c3 = char_poly_full(jacobian_full(p, PopulationState(m1, m2, 1 - m1 - m2)))
        c2 = char_poly_reduced(jacobian_reduced(p, m1, m2))
        lifted = (c2[0], c2[1], c2[2], 0.0)
        scale = max(1.0, *(abs(v) for v in c3), *(abs(v) for v in lifted))
        for a, b in zip(c3, lifted):
            assert abs(a - b) / scale < 1e-8


def printed_boundary_jacobian(p, m1, m2, b, absent):
    """The 2x2 face matrix for a boundary equilibrium, assembled from the
    surviving pool's partials exactly as the closed-form analysis writes
    them: rows (surviving monolingual pool, bilingual pool)."""
    al, be, lam = p.alpha, p.beta, p.lam
    if absent == "m1":
        s, m = p.s_m2, m2
    else:
        s, m = p.s_m1, m1
    g_m = lam * (al * s * m ** (al - 1) * b ** (be + 1)
                 - p.s_b * (be + 1) * m ** be * b ** al)
    g_b = lam * (-al * p.s_b * m ** (be + 1) * b ** (al - 1)
                 + (be + 1) * s * m ** al * b ** be)
    h_b = lam * (al * p.s_b * b ** (al - 1) * (m1 ** (be + 1) + m2 ** (be + 1))
                 - (be + 1) * b ** be * (p.s_m1 * m1 ** al + p.s_m2 * m2 ** al))
    return np.array([[g_m, g_b], [-g_m, h_b]])


def test_boundary_face_matrix_matches_reduced_spectrum(band_e6_params):
    e6 = by_kind(band_e6_params)[EquilibriumKind.E6].coords
    face = printed_boundary_jacobian(band_e6_params, e6.m1, e6.m2, e6.b, "m1")
    ev_face = sorted(np.linalg.eigvals(face).real)
    ev_reduced = sorted(
        z.real for z in eigvals_reduced(band_e6_params, e6.m1, e6.m2)
    )
    assert ev_face == pytest.approx(ev_reduced, rel=1e-9, abs=1e-9)


# --- stability ---------------------------------------------------------------

def test_interior_stable_in_coexistence_regime(coexistence_params):
    e7 = by_kind(coexistence_params)[EquilibriumKind.E7]
    assert e7.stability is Stability.STABLE
    assert all(z.real < 0 for z in e7.eigenvalues)


def test_vertices_and_segment_classes(coexistence_params):
    eqs = by_kind(coexistence_params)
    assert eqs[EquilibriumKind.E1].stability is Stability.UNDEFINED_DYNAMICS
    assert eqs[EquilibriumKind.E2].stability is Stability.UNDEFINED_DYNAMICS
    assert eqs[EquilibriumKind.E4].stability is Stability.DEGENERATE_LINE


def test_lower_status_extinction_point_never_stable():
    # E5 would need M1's status to be the smallest of all three, which the
    # status ordering rules out; sweep both below and above the degenerate line
    for s_b in [round(0.1 * k, 1) for k in range(1, 11)]:
        for ab in (0.55, 0.7, 0.9, -2.5, 2.9):
            beta = 1.1 if ab > -1 else 3.6
            p = ModelParams(s_b=s_b, alpha=beta + ab, beta=beta, **REF)
            e5 = by_kind(p)[EquilibriumKind.E5]
            assert e5.stability is not Stability.STABLE, (s_b, ab)


def test_all_bilingual_state_stable_only_above_band():
    assert (
        by_kind(bistable_params(0.5))[EquilibriumKind.E3].stability
        is Stability.STABLE
    )
    p = ModelParams(s_b=0.5, alpha=2.0, beta=1.1, **REF)
    assert by_kind(p)[EquilibriumKind.E3].stability is Stability.UNSTABLE


def test_trace_condition_sign(coexistence_params):
    report = e7_trace_condition(coexistence_params)
    assert report.satisfied
    assert report.leading < 0
    assert report.factor_m1 > 0 and report.factor_m2 > 0 and report.sum_term > 0
    flipped = e7_trace_condition(bistable_params(0.5))
    assert not flipped.satisfied
    assert flipped.leading > 0


def test_boundary_conditions_against_eigenvalues(band_e6_params):
    report = boundary_conditions(band_e6_params, "E6")
    assert report.trace_negative and report.trace_expression < 0
    assert report.factor_positive and report.sum_positive
    e6 = by_kind(band_e6_params)[EquilibriumKind.E6].coords
    in_face = [z.real for z in eigvals_reduced(band_e6_params, e6.m1, e6.m2)
               if abs(z.real) > 1e-9]
    assert in_face and max(in_face) < 0


def test_boundary_conditions_mirror(band_e6_params):
    mirrored = ModelParams(
        s_m1=band_e6_params.s_m2, s_m2=band_e6_params.s_m1,
        s_b=band_e6_params.s_b, lam=band_e6_params.lam,
        alpha=band_e6_params.alpha, beta=band_e6_params.beta,
    )
    e6 = boundary_conditions(band_e6_params, "E6")
    e5 = boundary_conditions(mirrored, "E5")
    assert e5.trace_expression == pytest.approx(e6.trace_expression, rel=1e-12)


def test_boundary_conditions_degenerate():
    p = ModelParams(s_b=0.5, alpha=2.1, beta=1.1, **REF)
    with pytest.raises(DegenerateExponentError):
        boundary_conditions(p, "E6")


def test_bilingual_takeover_limit(limit_e3_params):
    assert e3_limit(limit_e3_params).as_tuple() == (0.0, 0.0, 1.0)
    near = e3_limit(limit_e3_params, alpha_beta=0.9999)
    far = e3_limit(limit_e3_params, alpha_beta=0.5)
    assert near.b > 0.99
    assert far.b < near.b


def test_e7_bilingual_share_monotone_in_status(coexistence_params):
    shares = [
        e7_coords(coexistence_params.replace(s_b=s_b)).b
        for s_b in [round(0.1 * k, 1) for k in range(1, 11)]
    ]
    assert all(a < b for a, b in zip(shares, shares[1:]))


def test_equilibria_all_rejects_degenerate_exponent():
    p = ModelParams(s_b=0.5, alpha=2.1, beta=1.1, **REF)
    with pytest.raises(DegenerateExponentError):
        equilibria_all(p)
