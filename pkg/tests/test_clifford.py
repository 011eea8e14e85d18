import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.clifford import (
    CliffordSystem, delta, gen_system, otfkm_ambient, otfkm_restricted_f, system_from_json, system_to_json,
    verify_system,
)

DELTA = {1: 1, 2: 2, 3: 4, 4: 4, 5: 8, 6: 8, 7: 8, 8: 8, 9: 16}


def test_delta_table_and_periodicity():
    for p, d in DELTA.items():
        assert delta(p) == d
    for p in range(1, 12):
        assert delta(p + 8) == 16 * delta(p)
    with pytest.raises(ValueError):
        delta(0)


@pytest.mark.parametrize("p", range(1, 10))
@pytest.mark.parametrize("k", [1, 2])
def test_generated_systems_verify(p, k):
    sys = gen_system(p, k)
    assert sys.l == k * delta(p)
    checks = verify_system(sys)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]
    for E in sys.E:
        assert np.issubdtype(np.asarray(E).dtype, np.integer)


def test_verify_detects_broken_system():
    sys = gen_system(3, 1)
    E = list(sys.E)
    E[0] = E[1].copy()  # E0 E1 + E1 E0 = 2 E1^2 = -2 I, not 0
    bad = CliffordSystem(sys.p, sys.l, tuple(E), None)
    res = {c.name: c for c in verify_system(bad)}
    assert not res["E_anticommute"].passed
    assert res["E_anticommute"].first_violation is not None


def test_json_roundtrip():
    sys = gen_system(4, 2)
    back = system_from_json(system_to_json(sys))
    assert back.p == sys.p and back.l == sys.l
    assert all(np.array_equal(a, b) for a, b in zip(sys.E, back.E))
    assert all(np.array_equal(a, b) for a, b in zip(sys.P, back.P))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), p=st.integers(1, 4))
def test_otfkm_restriction_matches_ambient(seed, p):
    sys = gen_system(p, 1)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(sys.l)
    y = rng.standard_normal(sys.l)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    z = np.concatenate([x, y]) / np.sqrt(2.0)
    f = otfkm_restricted_f(sys, x, y)
    assert 0.0 - 1e-12 <= f <= 1.0 + 1e-12
    assert np.isfinite(otfkm_ambient(sys, z))
