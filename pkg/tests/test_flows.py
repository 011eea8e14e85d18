import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.catalog import MT, MTF, GraphSH, MHat
from isogeo.flows import (
    flow_xy, focal_distances, gen_cos, gen_sin, jacobi_determinant_check, riccati_check, riccati_predict,
    riccati_theta, v_flow_isometry_check,
)


@settings(max_examples=100, deadline=None)
@given(lam=st.floats(-50, 50), t=st.floats(-0.3, 0.3), s=st.floats(-0.3, 0.3))
def test_riccati_semigroup(lam, t, s):
    a = riccati_predict(riccati_predict(lam, t), s)
    b = riccati_predict(lam, t + s)
    if math.isfinite(a) and math.isfinite(b) and abs(b) < 1e3:
        assert a == pytest.approx(b, rel=1e-9, abs=1e-9)


def test_riccati_identity_at_zero_and_ode():
    for lam in (-2.0, 0.0, 0.7, 3.0):
        assert riccati_predict(lam, 0.0) == pytest.approx(lam, abs=1e-12)
        h = 1e-5
        d = (riccati_predict(lam, h) - riccati_predict(lam, -h)) / (2 * h)
        # lambda' = lambda^2 + 1/2 for the cot law with speed 1/sqrt 2
        assert d == pytest.approx(lam * lam + 0.5, rel=1e-6)
    assert 0 < riccati_theta(0.3) < 2 * math.pi


def test_generalized_trig():
    r = np.linspace(0, 2, 7)
    for tau in (-1.5, 0.0, 0.5):
        c, s = gen_cos(tau, r), gen_sin(tau, r)
        # C^2 - tau S^2 = 1
        assert np.allclose(c * c - tau * s * s, 1.0)


@pytest.mark.parametrize("fam", [MT(3, 0.2), MHat.generate(2, 4, 0.4), MTF("C", 1, 0.3)], ids=lambda f: f.label())
def test_riccati_matches_flowed_spectrum(fam):
    x, y = fam.sample_level(np.random.default_rng(7))
    for t in (0.1, 0.3):
        assert riccati_check(fam, x, y, t) < 1e-5


def test_flow_stays_on_product():
    fam = MT(2, 0.1)
    x, y = fam.sample_level(np.random.default_rng(0))
    xt, yt, _, _ = flow_xy(fam, x, y, 0.4)
    assert np.linalg.norm(xt) == pytest.approx(1.0) and np.linalg.norm(yt) == pytest.approx(1.0)


def test_mt_first_focal_distance():
    fam = MT(3, 0.0)
    x, y = fam.sample_level(np.random.default_rng(1))
    fd = focal_distances(fam, x, y, t_max=10.0)
    assert fd[0] == pytest.approx(math.pi / (2 * math.sqrt(2)), abs=1e-6)


@pytest.mark.parametrize("fam", [GraphSH(3, 0.5, t=0.2), GraphSH(2, 2.0, t=-0.3)], ids=lambda f: f.label())
def test_graph_has_no_focal_points(fam):
    x, y = fam.sample_level(np.random.default_rng(2))
    assert focal_distances(fam, x, y, t_max=10.0) == []


@pytest.mark.parametrize("fam", [MT(3, 0.2), MTF("R", 2, 0.3), GraphSH(3, 1.0, t=0.3)], ids=lambda f: f.label())
def test_jacobi_determinant(fam):
    x, y = fam.sample_level(np.random.default_rng(3))
    rep = jacobi_determinant_check(fam, x, y, np.linspace(0.0, 0.5, 6))
    assert rep.residual < 1e-5


@pytest.mark.parametrize("fam", [MT(3, 0.2), MHat.generate(2, 4, 0.4), GraphSH(3, 1.0, t=0.3)],
                         ids=lambda f: f.label())
def test_v_flow_preserves_slice_spectra(fam):
    x, y = fam.sample_level(np.random.default_rng(4))
    rep = v_flow_isometry_check(fam, x, y, 0.5)
    assert rep.residual < 1e-6
    assert rep.level_drift < 1e-9
