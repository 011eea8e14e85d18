import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.spaceforms import (
    AmbientSpec, FactorPoint, LightVec, ProductPoint, TangentVec, factor_exp, factor_inner, factor_project,
    lorentz_inner, product_inner, product_structure, sample_point, tangent_project,
)


def test_lorentz_inner_basic():
    assert lorentz_inner([1, 0], [1, 0]) == -1.0
    assert lorentz_inner([1, 1], [1, 1]) == 0.0
    with pytest.raises(ValueError):
        lorentz_inner([1, 0], [1, 0, 0])


def test_factor_point_validation():
    FactorPoint([0.0, 1.0], 1)
    FactorPoint([1.0, 0.0, 0.0], -1)
    with pytest.raises(ValueError):
        FactorPoint([1.0, 1.0], 1)
    with pytest.raises(ValueError):
        FactorPoint([-1.0, 0.0], -1)  # lower sheet
    with pytest.raises(ValueError):
        FactorPoint([1.0, 0.0], 0)


def test_lightvec():
    u = LightVec.from_direction([3.0, 4.0])
    assert lorentz_inner(u.u, u.u) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        LightVec(np.array([1.0, 0.5]))


def test_ambient_spec_rejects_bad_input():
    with pytest.raises(ValueError):
        AmbientSpec(0, 1, 2, 1)
    with pytest.raises(ValueError):
        AmbientSpec(1, 2, 2, 1)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(1, 6), m=st.integers(1, 6),
       c1=st.sampled_from([1, -1]), c2=st.sampled_from([1, -1]))
def test_sampled_points_on_quadrics(seed, n, m, c1, c2):
    p = sample_point(AmbientSpec(n, c1, m, c2), seed)
    assert factor_inner(p.x.coords, p.x.coords, c1) == pytest.approx(c1, abs=1e-10 * max(1, p.x.coords[0] ** 2))
    assert factor_inner(p.y.coords, p.y.coords, c2) == pytest.approx(c2, abs=1e-10 * max(1, p.y.coords[0] ** 2))


def test_sample_point_deterministic():
    spec = AmbientSpec(3, 1, 2, -1)
    a, b = sample_point(spec, (42, 7)), sample_point(spec, (42, 7))
    assert np.array_equal(a.x.coords, b.x.coords) and np.array_equal(a.y.coords, b.y.coords)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), c=st.sampled_from([1, -1]), t=st.floats(-2.0, 2.0))
def test_exp_stays_on_factor_and_has_unit_speed(seed, c, t):
    rng = np.random.default_rng(seed)
    p = sample_point(AmbientSpec(3, c, 3, c), seed).x
    v = factor_project(p.coords, rng.standard_normal(4), c)
    nv = math.sqrt(factor_inner(v, v, c))
    if nv < 1e-6:
        return
    v = v / nv
    q = factor_exp(p, v, t)
    # geodesic distance equals |t|
    ip = factor_inner(p.coords, q.coords, c)
    d = math.acos(max(-1.0, min(1.0, ip))) if c == 1 else math.acosh(max(1.0, -ip))
    expected = abs(t) if c == -1 else min(abs(t) % (2 * math.pi), 2 * math.pi - abs(t) % (2 * math.pi))
    assert d == pytest.approx(expected, abs=1e-6)


def test_exp_zero_vector():
    p = FactorPoint([1.0, 0.0, 0.0], -1)
    assert np.array_equal(factor_exp(p, [0.0, 0.0, 0.0], 3.0).coords, p.coords)


def test_product_structure_is_involutive_isometry():
    p = sample_point(AmbientSpec(2, 1, 3, -1), 3)
    rng = np.random.default_rng(0)
    v = tangent_project(p, rng.standard_normal(3), rng.standard_normal(4))
    w = tangent_project(p, rng.standard_normal(3), rng.standard_normal(4))
    Pv, Pw = product_structure(v), product_structure(w)
    assert product_inner(Pv, Pw) == pytest.approx(product_inner(v, w), abs=1e-12)
    PPv = product_structure(Pv)
    assert np.allclose(PPv.as_array(), v.as_array())


def test_tangent_vec_rejects_nontangent():
    p = ProductPoint.from_arrays([1.0, 0.0], [1.0, 0.0, 0.0], 1, -1)
    with pytest.raises(ValueError):
        TangentVec(np.array([1.0, 0.0]), np.zeros(3), p)
