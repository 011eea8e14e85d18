from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.kac import (
    BiPoly, DegenerateParameters, TAU1, TAU2, ab_matches_pq, bareiss_det, bareiss_rank, berkowitz, det,
    detK_product_check, detQ_check, detQ_numeric_check, exceptional_angle_check, exceptional_angles,
    genericity_violation, kac_charpoly_check, kac_kernel, kac_matrix, kronecker_sum, mat_eval, matmul,
    pq_matches_Q, rank_checks, run_recurrence_pq, verify_coefficient_structure,
)

INSTANCES = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]


def test_bipoly_arithmetic():
    p = (TAU1 + TAU2) ** 2
    assert p == TAU1 * TAU1 + 2 * TAU1 * TAU2 + TAU2 * TAU2
    assert p.is_homogeneous(2) and p.degree() == 2
    assert p(Fraction(1, 2), 3) == Fraction(49, 4)
    assert (p - p).is_zero()
    assert BiPoly.monomial(1, 0) == TAU1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_exact_det_agrees(rows):
    A = [[Fraction(v) for v in r] for r in rows]
    d1 = det(A)
    d2 = bareiss_det(A)
    assert d1 == d2
    assert d1 == round(np.linalg.det(np.array(rows, float)))
    assert bareiss_rank(A) == np.linalg.matrix_rank(np.array(rows, float))


def test_berkowitz_matches_numeric():
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert list(berkowitz(A)) == [1, -5, -2]


@pytest.mark.parametrize("d", range(1, 10))
def test_charpoly_product_form(d):
    assert kac_charpoly_check(d).passed


@settings(max_examples=20, deadline=None)
@given(d=st.integers(1, 8), tau=st.floats(0.1, 4.0))
def test_kac_spectrum(d, tau):
    K = np.array(mat_eval(kac_matrix(d, 1), tau, 0), float)
    ev = np.sort(np.linalg.eigvals(K).real)
    expect = np.sort([(d - 1 - 2 * l) * np.sqrt(tau) for l in range(d)])
    assert np.allclose(ev, expect, atol=1e-6 * (1 + d))


@pytest.mark.parametrize("m,n", INSTANCES)
def test_detQ_is_square_of_detK(m, n):
    if m * n <= 6:
        assert detQ_check(m, n).passed
    assert detQ_numeric_check(m, n, [(Fraction(2), Fraction(3)), (Fraction(-1, 3), Fraction(5, 7))]).passed
    assert detK_product_check(m, n, [(Fraction(1), Fraction(2)), (Fraction(3, 2), Fraction(1, 3))]).passed


@pytest.mark.parametrize("m,n", INSTANCES)
def test_pq_recurrence_reproduces_Q_powers(m, n):
    assert pq_matches_Q(m, n, 2 * m * n + 4).passed
    assert ab_matches_pq(m, n, 2 * m * n + 4, np.random.default_rng(0)).passed


@pytest.mark.parametrize("mutation", ["drop_tau2", "drop_l_term"])
def test_mutated_recurrence_is_caught(mutation):
    tab = run_recurrence_pq(2, 3, 12, mutate=mutation)
    assert not pq_matches_Q(2, 3, 12, table=tab).passed
    rep = verify_coefficient_structure(2, 3, 12, mutate=mutation)
    assert not (rep.parity_ok and rep.factorial_ok)


@pytest.mark.parametrize("m,n", INSTANCES)
def test_coefficient_structure(m, n):
    rep = verify_coefficient_structure(m, n, 2 * m * n + 4)
    assert rep.parity_ok and rep.factorial_ok and rep.grid_consistent, rep.violations
    assert rep.degree_ok, rep.violations
    assert rep.checked_sigma > 0 or m * n == 2


def test_coefficient_per_variable_degree_is_weaker():
    # the total degree reaches s, but not in each variable separately
    rep = verify_coefficient_structure(2, 2, 12)
    assert rep.degree_ok and not rep.per_variable_ok


def test_exceptional_angles_sign():
    sets = exceptional_angles(2, 3)
    assert Fraction(-3, 5) in sets["singular"]
    # with tau1 = -(1 + C)/2 and tau2 = -(1 - C)/2 the determinant vanishes on "singular"
    dK = det(kronecker_sum(2, 3))
    for C in sets["singular"]:
        assert dK(-(1 + C) / 2, -(1 - C) / 2) == 0
    assert any(dK(-(1 + C) / 2, -(1 - C) / 2) != 0 for C in sets["singular_stated"])


@pytest.mark.parametrize("m,n", INSTANCES)
@pytest.mark.parametrize("signs", [(1, 1), (1, -1)])
def test_exceptional_angle_oracle(m, n, signs):
    assert exceptional_angle_check(m, n, *signs, denominator=31).passed


def test_kac_kernel():
    for d in (1, 3, 5, 7):
        tau = Fraction(3, 2)
        x = kac_kernel(d, tau)
        K = kac_matrix(d, 1, tau)
        Kx = matmul(K, [[xi] for xi in x])
        assert all(row[0] == 0 for row in Kx)
        assert x[0] == 1
    with pytest.raises(ValueError):
        kac_kernel(4, 1)


def test_genericity():
    assert genericity_violation(2, 3, 2, 3, True) is None
    assert genericity_violation(2, 3, 0, 3, False) is not None
    assert genericity_violation(2, 3, 1, 4, True) is not None  # 1^2 * 4 = 2^2 * 1
    assert "both odd" in genericity_violation(3, 3, 2, 3, True)


@pytest.mark.parametrize("m,n,s", [(2, 2, 0), (2, 3, 5), (1, 2, 3)])
def test_ranks_even(m, n, s):
    res = rank_checks(m, n, s, Fraction(2), Fraction(3))
    assert res and all(c.passed for c in res), [c for c in res if not c.passed]


@pytest.mark.parametrize("m,n", [(1, 3), (3, 3)])
def test_ranks_odd(m, n):
    for s in (2 * m * n, 2 * m * n + 3):
        res = rank_checks(m, n, s, Fraction(2), Fraction(3))
        names = {c.name for c in res}
        assert {"rank_Lambda", "rank_Lambda_s", "chessboard"} <= names
        assert all(c.passed for c in res), [c for c in res if not c.passed]


def test_ranks_refuses_degenerate():
    with pytest.raises(DegenerateParameters):
        rank_checks(2, 3, 0, Fraction(1), Fraction(4))
