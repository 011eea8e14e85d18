import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.catalog import (
    MT, MTF, GraphSH, MHat, NoWitnessError, angle_xy, apply_witness, av_norm_xy, check_isoparametric,
    cluster_values, curvature_xy, family_from_dict, family_to_dict, graph_symmetry_check, mtf_witness,
    normal_xy, pairing_residual, project_to_level, rigidity_xy, spectrum_mismatch, spectrum_xy,
)
from isogeo.catalog.quaternion import conj, qmul

FAMILIES = [MT(3, 0.2), MHat.generate(2, 4, 0.3), GraphSH(1, 1.0, t=0.3), MTF("R", 2, 0.3), MTF("C", 1, 0.3)]


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_gradient_law_and_level(fam):
    rep = check_isoparametric(fam, samples=100, seed=1)
    assert rep.grad_residual < 1e-9
    assert rep.level_residual < 1e-9
    assert rep.fd_residual < 1e-8
    assert rep.derived_lap_residual < 1e-9


def test_mhat_restriction_identities_spec_example():
    rep = check_isoparametric(MHat.generate(2, 4, 0.3), samples=1000, seed=42)
    assert rep.grad_residual < 1e-9 and rep.lap_residual < 1e-9


def test_graph_laplacian_carries_horosphere_term():
    # the closed law -(1 + a^2) F holds for m = 1; for m > 1 the residual is a (m - 1) |cos Theta|
    fam = GraphSH(3, 2.0, t=0.3)
    rep = check_isoparametric(fam, samples=50, seed=0)
    assert rep.derived_lap_residual < 1e-9
    assert rep.lap_residual == pytest.approx(2.0 * 2 * math.sqrt(1 - 0.3 ** 2), rel=1e-6)


@pytest.mark.parametrize("n", [1, 2, 4])
@pytest.mark.parametrize("t", [0.0, 0.3, -0.5])
def test_mt_spectrum_closed_form(n, t):
    fam = MT(n, t)
    x, y = fam.sample_level(np.random.default_rng(5))
    rep = spectrum_xy(fam, x, y)
    diff, mults_ok = spectrum_mismatch(rep.clusters, fam.stated_spectrum(x, y))
    assert diff < 1e-6 and mults_ok
    if n >= 2:
        lam = math.sqrt((1 + t) / (2 * (1 - t)))
        assert any(abs(v - lam) < 1e-6 and k == n - 1 for v, k in rep.clusters)


def test_mt_pairing_and_av():
    fam = MT(3, 0.4)
    x, y = fam.sample_level(np.random.default_rng(2))
    rep = spectrum_xy(fam, x, y)
    assert pairing_residual(rep.clusters) < 1e-6
    assert av_norm_xy(fam, x, y) < 1e-6
    assert rigidity_xy(fam, x, y) < 1e-7


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31), a=st.sampled_from([0.5, 1.0, 2.0]), m=st.integers(1, 4))
def test_graph_angle_constant(seed, a, m):
    fam = GraphSH(m, a, t=0.2)
    x, y = fam.sample_level(np.random.default_rng(seed))
    assert angle_xy(fam, x, y) == pytest.approx((1 - a * a) / (1 + a * a), abs=1e-9)


def test_graph_normal_matches_closed_form():
    fam = GraphSH(2, 0.5, t=-0.4)
    x, y = fam.sample_level(np.random.default_rng(3))
    nx, ny = normal_xy(fam, x, y)
    cx, cy = fam.closed_normal(x, y)
    assert np.allclose(nx, cx, atol=1e-10) and np.allclose(ny, cy, atol=1e-10)


def test_graph_spectrum_sign_convention():
    fam = GraphSH(3, 1.0, t=0.3)
    x, y = fam.sample_level(np.random.default_rng(9))
    rep = spectrum_xy(fam, x, y)
    assert spectrum_mismatch(rep.clusters, fam.derived_spectrum(x, y)) == (pytest.approx(0.0, abs=1e-6), True)
    assert spectrum_mismatch(rep.clusters, fam.stated_spectrum(x, y))[0] > 1e-2


def test_graph_requires_nonzero_slope():
    with pytest.raises(ValueError):
        GraphSH(2, 0.0)
    with pytest.raises(ValueError):
        family_from_dict({"tag": "graph", "m": 2, "a": 0})


@pytest.mark.parametrize("fam", FAMILIES + [GraphSH(2, 2.0, t=0.1, branch=-1)], ids=lambda f: f.label())
def test_family_dict_roundtrip(fam):
    back = family_from_dict(family_to_dict(fam))
    assert back.label() == fam.label()


def test_unknown_tag():
    with pytest.raises(ValueError):
        family_from_dict({"tag": "torus"})


def test_mhat_five_clusters():
    fam = MHat.generate(2, 4, 0.4)
    x, y = fam.sample_level(np.random.default_rng(0))
    assert len(spectrum_xy(fam, x, y).clusters) == 5


def test_mtf_real_field_curvature_closed_forms():
    fam = MTF("R", 2, 0.3)
    x, y = fam.sample_level(np.random.default_rng(4))
    cs = curvature_xy(fam, x, y)
    assert cs.H == pytest.approx(fam.stated_mean_curvature(x, y), abs=1e-6)
    assert cs.R == pytest.approx(fam.stated_scalar_curvature(), abs=1e-6)


def test_cluster_values():
    cl, flagged = cluster_values([1.0, 1.0 + 1e-9, 2.0, 3.0, 3.0])
    assert cl == [(pytest.approx(1.0), 2), (2.0, 1), (3.0, 2)]
    assert not flagged


def test_project_to_level():
    fam = MT(2, 0.0)
    rng = np.random.default_rng(1)
    x, y = fam.sample_level(rng)
    x2, y2 = project_to_level(fam, x, y, 0.25)
    assert fam.value(x2, y2) == pytest.approx(0.25, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=12, max_size=12))
def test_quaternion_norm_multiplicative(v):
    a, b = np.array(v[:4]), np.array(v[4:8])
    c = np.array(v[8:])
    ab = qmul(a, b)
    assert np.linalg.norm(ab) == pytest.approx(np.linalg.norm(a) * np.linalg.norm(b), rel=1e-9, abs=1e-9)
    assert np.allclose(qmul(qmul(a, b), c), qmul(a, qmul(b, c)), atol=1e-9)
    assert np.allclose(conj(ab), qmul(conj(b), conj(a)), atol=1e-12)


@pytest.mark.parametrize("field", ["R", "C", "H"])
def test_mtf_witness(field):
    fam = MTF(field, 2, 0.3)
    rng = np.random.default_rng(11)
    p = fam.sample_level(rng)
    for _ in range(50):
        q = fam.sample_level(rng)
        if field != "R" or np.dot(*p) * np.dot(*q) > 0:
            break
    w = mtf_witness(field, p, q)
    assert w.residual < 1e-8 and w.unitarity < 1e-8 and w.linearity < 1e-8
    x2, y2 = apply_witness(w, *p)
    assert np.allclose(x2, q[0], atol=1e-8) and np.allclose(y2, q[1], atol=1e-8)


def test_mtf_witness_refuses_other_level():
    fam = MTF("C", 2, 0.3)
    other = MTF("C", 2, 0.6)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        mtf_witness("C", fam.sample_level(rng), other.sample_level(rng))


def test_mtf_witness_refuses_other_component():
    fam = MTF("R", 2, 0.3)
    x, y = fam.sample_level(np.random.default_rng(1))
    with pytest.raises(NoWitnessError):
        mtf_witness("R", (x, y), (x, -y))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31), theta=st.floats(-math.pi, math.pi))
def test_graph_symmetry(seed, theta):
    fam = GraphSH(3, 0.5, t=0.2)
    rng = np.random.default_rng(seed)
    x, y = fam.sample_level(rng)
    assert graph_symmetry_check(fam, x, y, theta, rng) < 1e-10


@pytest.mark.parametrize("fam", FAMILIES + [GraphSH(3, 2.0, t=-0.2), MTF("H", 1, 0.3)], ids=lambda f: f.label())
def test_fd_shape_operator_matches_hessian_oracle(fam):
    from isogeo.catalog import hessian_shape_xy, shape_matrix_xy

    x, y = fam.sample_level(np.random.default_rng(12))
    S, E, asym = shape_matrix_xy(fam, x, y)
    O = hessian_shape_xy(fam, x, y, E)
    assert asym < 1e-6
    assert np.allclose(np.linalg.eigvalsh(S), np.linalg.eigvalsh((O + O.T) / 2), atol=1e-6)
