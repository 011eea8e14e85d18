"""tau-Kac matrices, their Kronecker sum, the block matrix Q and the
coefficient recurrences behind the Jacobi-determinant expansion.

Index conventions
-----------------
A pair ``(l, nu)`` with ``0 <= l < m`` and ``0 <= nu < n`` is flattened to
``l * n + nu`` (the m-index is outer), which matches
``Ktilde = I_m (x) K_n(tau1) + K_m(tau2) (x) I_n``.  With this ordering the
``(p, q)`` recurrence is the row-vector iteration ``(p, q) <- (p, q) Q``
and the ``(alpha, beta)`` recurrence is the column iteration
``(alpha; beta) <- Q^T``-free form ``alpha <- Ktilde alpha + beta``,
``beta <- Ktilde beta``.

Column positions in the rank statements are reported 1-based.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .bipoly import TAU1, TAU2, BiPoly, poly_eval
from .exact import (
    bareiss_rank,
    berkowitz,
    block,
    det,
    identity,
    kron,
    mat_eval,
    vecmat,
    zeros,
)

__all__ = [
    "KacCheck",
    "DegenerateParameters",
    "kac_matrix",
    "kac_charpoly",
    "kac_charpoly_product",
    "kac_charpoly_check",
    "kronecker_sum",
    "build_Q",
    "detQ_check",
    "detQ_numeric_check",
    "exceptional_angle_check",
    "detK_product_check",
    "CoeffTable",
    "run_recurrence_pq",
    "run_recurrence_ab",
    "Q_rows",
    "pq_matches_Q",
    "ab_matches_pq",
    "verify_coefficient_structure",
    "sigma_grid",
    "newton_coefficients",
    "exceptional_angles",
    "genericity_violation",
    "kac_kernel",
    "rank_checks",
]


@dataclass
class KacCheck:
    """Outcome of one exact check."""

    name: str
    instance: str
    passed: bool
    witness: str = ""


class DegenerateParameters(ValueError):
    """``(tau1, tau2)`` violate the genericity conditions."""


# ---------------------------------------------------------------------------
# Kac matrices
def kac_matrix(d: int, which_tau: int = 1, tau=None):
    """tau-Kac matrix of order ``d``.

    Zero diagonal, superdiagonal ``1, ..., d-1`` and subdiagonal
    ``(d-1) tau, ..., tau``.  ``tau`` defaults to the formal variable
    ``tau1`` or ``tau2``; a number gives a numeric matrix.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if tau is None:
        if which_tau not in (1, 2):
            raise ValueError("which_tau must be 1 or 2")
        tau = TAU1 if which_tau == 1 else TAU2
    K = zeros(d, d)
    for i in range(d - 1):
        K[i][i + 1] = i + 1
        K[i + 1][i] = (d - 1 - i) * tau
    return K


def kac_charpoly(d: int):
    """Coefficients (highest power first) of ``det(x I - K_d)``, entries in ``tau1``."""
    return berkowitz(kac_matrix(d, 1))


def kac_charpoly_product(d: int):
    """``prod_{l < d/2} (x^2 - (d-1-2l)^2 tau1)``, times ``x`` for odd ``d``."""
    poly = [BiPoly.const(1)]
    for l in range(d // 2):
        c = (d - 1 - 2 * l) ** 2
        new = [BiPoly() for _ in range(len(poly) + 2)]
        for i, a in enumerate(poly):
            new[i] = new[i] + a
            new[i + 2] = new[i + 2] - a * (c * TAU1)
        poly = new
    if d % 2:
        poly = poly + [BiPoly()]
    return poly


def kac_charpoly_check(d: int) -> KacCheck:
    """Exact comparison of the characteristic polynomial with the product form."""
    got = [v if isinstance(v, BiPoly) else BiPoly.const(v) for v in kac_charpoly(d)]
    exp = kac_charpoly_product(d)
    ok = len(got) == len(exp) and all(a == b for a, b in zip(got, exp))
    wit = "" if ok else f"charpoly {got} != product {exp}"
    return KacCheck("kac_charpoly", f"d={d}", ok, wit)


def kronecker_sum(m: int, n: int, tau1=None, tau2=None):
    """``I_m (x) K_n(tau1) + K_m(tau2) (x) I_n`` (order ``m n``)."""
    Kn = kac_matrix(n, 1, tau1)
    Km = kac_matrix(m, 2, tau2)
    A = kron(identity(m), Kn)
    B = kron(Km, identity(n))
    return [[_sum(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _sum(a, b):
    if not a:
        return b
    if not b:
        return a
    return a + b


def build_Q(m: int, n: int, tau1=None, tau2=None):
    """Block matrix ``[[Ktilde, I], [0, Ktilde]]`` of order ``2 m n``."""
    K = kronecker_sum(m, n, tau1, tau2)
    N = m * n
    return block([[K, identity(N)], [zeros(N, N), K]])


def detQ_check(m: int, n: int) -> KacCheck:
    """Symbolic ``det Q = (det Ktilde)^2``."""
    dK = det(kronecker_sum(m, n))
    dQ = det(build_Q(m, n))
    dK = dK if isinstance(dK, BiPoly) else BiPoly.const(dK)
    dQ = dQ if isinstance(dQ, BiPoly) else BiPoly.const(dQ)
    ok = dQ == dK * dK
    return KacCheck("detQ_symbolic", f"m={m},n={n}", ok, "" if ok else f"det Q = {dQ}")


def detQ_numeric_check(m: int, n: int, points) -> KacCheck:
    """``det Q = (det Ktilde)^2`` at rational points, by exact elimination."""
    from .exact import bareiss_det

    bad = []
    for t1, t2 in points:
        t1, t2 = Fraction(t1), Fraction(t2)
        dQ = bareiss_det(build_Q(m, n, t1, t2))
        dK = bareiss_det(kronecker_sum(m, n, t1, t2))
        if dQ != dK * dK:
            bad.append((t1, t2))
    return KacCheck("detQ_numeric", f"m={m},n={n}", not bad, "" if not bad else f"fails at {bad[0]}")


def detK_product_check(m: int, n: int, roots) -> KacCheck:
    """``det Ktilde = prod (lambda_i^(m) + lambda_j^(n))`` at ``tau = r^2``.

    ``roots`` is a list of rational pairs ``(r1, r2)``; choosing perfect
    squares ``tau1 = r1^2`` and ``tau2 = r2^2`` keeps the eigenvalue
    product rational, so the comparison is exact.
    """
    K = kronecker_sum(m, n)
    dK = det(K)
    bad = []
    for r1, r2 in roots:
        r1, r2 = Fraction(r1), Fraction(r2)
        lhs = poly_eval(dK, r1 * r1, r2 * r2)
        rhs = Fraction(1)
        for i in range(m):
            for j in range(n):
                rhs *= (m - 1 - 2 * i) * r2 + (n - 1 - 2 * j) * r1
        if lhs != rhs:
            bad.append((r1, r2, lhs, rhs))
    return KacCheck("detK_eigen_product", f"m={m},n={n}", not bad, "" if not bad else repr(bad[0]))


# ---------------------------------------------------------------------------
# recurrences
@dataclass
class CoeffTable:
    """Per-step coefficient vectors in flattened ``l * n + nu`` order.

    ``first[k]`` holds ``p`` (or ``alpha``) and ``second[k]`` holds ``q``
    (or ``beta``) at step ``k``.
    """

    m: int
    n: int
    first: list
    second: list

    @property
    def k_max(self) -> int:
        return len(self.first) - 1

    def _idx(self, l, nu):
        return l * self.n + nu

    def p(self, l, nu, k):
        if not (0 <= l < self.m and 0 <= nu < self.n):
            return 0
        return self.first[k][self._idx(l, nu)]

    def q(self, l, nu, k):
        if not (0 <= l < self.m and 0 <= nu < self.n):
            return 0
        return self.second[k][self._idx(l, nu)]

    def row(self, k):
        return list(self.first[k]) + list(self.second[k])


def _pq_step(m, n, P, Qv, mutate=None):
    """One step of the (p, q) recurrence (left-multiplication form)."""
    newP = [0] * (m * n)
    newQ = [0] * (m * n)
    for l in range(m):
        for nu in range(n):
            def comb(V, l=l, nu=nu):
                s = 0
                if l > 0 and mutate != "drop_l_term":
                    s = _sum(s, l * V[(l - 1) * n + nu] if V[(l - 1) * n + nu] else 0)
                if l + 1 < m:
                    v = V[(l + 1) * n + nu]
                    if v:
                        f = (m - l - 1) if mutate == "drop_tau2" else (m - l - 1) * TAU2
                        s = _sum(s, v * f)
                if nu > 0:
                    v = V[l * n + nu - 1]
                    if v:
                        s = _sum(s, nu * v)
                if nu + 1 < n:
                    v = V[l * n + nu + 1]
                    if v:
                        s = _sum(s, v * ((n - nu - 1) * TAU1))
                return s

            i = l * n + nu
            newP[i] = comb(P)
            newQ[i] = _sum(P[i], comb(Qv))
    return newP, newQ


def run_recurrence_pq(m: int, n: int, k_max: int, mutate: Optional[str] = None) -> CoeffTable:
    """``p``, ``q`` tables from ``p_{0,0,0} = 1`` through step ``k_max``.

    ``mutate`` (``"drop_tau2"`` or ``"drop_l_term"``) deliberately breaks
    the recurrence; it exists so tests can confirm violations are caught.
    """
    P = [0] * (m * n)
    P[0] = BiPoly.const(1)
    Qv = [0] * (m * n)
    firsts, seconds = [P], [Qv]
    for _ in range(k_max):
        P, Qv = _pq_step(m, n, P, Qv, mutate)
        firsts.append(P)
        seconds.append(Qv)
    return CoeffTable(m, n, firsts, seconds)


def run_recurrence_ab(m: int, n: int, k_max: int, alpha0, beta0) -> CoeffTable:
    """``alpha``, ``beta`` tables from initial vectors (flattened order).

    ``alpha_{k+1} = Ktilde alpha_k + beta_k`` and ``beta_{k+1} = Ktilde beta_k``,
    i.e. the coefficient recurrence of the derivative expansion with
    out-of-range terms dropped.
    """
    K = kronecker_sum(m, n)
    A = list(alpha0)
    B = list(beta0)
    if len(A) != m * n or len(B) != m * n:
        raise ValueError("initial vectors must have length m*n")
    firsts, seconds = [A], [B]
    for _ in range(k_max):
        KA = [_dot(K[i], A) for i in range(m * n)]
        KB = [_dot(K[i], B) for i in range(m * n)]
        A = [_sum(a, b) for a, b in zip(KA, B)]
        B = KB
        firsts.append(A)
        seconds.append(B)
    return CoeffTable(m, n, firsts, seconds)


def _dot(row, v):
    s = 0
    for a, b in zip(row, v):
        if a and b:
            s = _sum(s, a * b)
    return s


def Q_rows(m: int, n: int, k_max: int, tau1=None, tau2=None) -> list:
    """``[e1~ Q^k for k = 0..k_max]``."""
    Q = build_Q(m, n, tau1, tau2)
    v = [0] * (2 * m * n)
    v[0] = 1 if tau1 is not None else BiPoly.const(1)
    rows = [v]
    for _ in range(k_max):
        v = vecmat(v, Q)
        rows.append(v)
    return rows


def _as_poly(v):
    return v if isinstance(v, BiPoly) else BiPoly.const(v)


def pq_matches_Q(m: int, n: int, k_max: int, table: Optional[CoeffTable] = None) -> KacCheck:
    """``(p, q)`` row at step ``k+1`` equals ``e1~ Q^{k+1}`` for all ``k <= k_max``."""
    if table is None:
        table = run_recurrence_pq(m, n, k_max + 1)
    rows = Q_rows(m, n, k_max + 1)
    for k in range(0, k_max + 2):
        a = [_as_poly(v) for v in table.row(k)]
        b = [_as_poly(v) for v in rows[k]]
        if a != b:
            return KacCheck("pq_row_vs_Q_power", f"m={m},n={n},k_max={k_max}", False, f"first mismatch at power {k}")
    return KacCheck("pq_row_vs_Q_power", f"m={m},n={n},k_max={k_max}", True)


def ab_matches_pq(m: int, n: int, k_max: int, rng: np.random.Generator) -> KacCheck:
    """``alpha_{0,0,k+1} = sum p alpha_0 + q beta_0`` for random rational data."""
    N = m * n
    a0 = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(N)]
    b0 = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(N)]
    ab = run_recurrence_ab(m, n, k_max + 1, a0, b0)
    pq = run_recurrence_pq(m, n, k_max + 1)
    for k in range(k_max + 1):
        lhs = _as_poly(ab.first[k + 1][0])
        rhs = BiPoly()
        for i in range(N):
            rhs = rhs + _as_poly(pq.first[k + 1][i]) * a0[i] + _as_poly(pq.second[k + 1][i]) * b0[i]
        if lhs != rhs:
            return KacCheck("ab_vs_pq", f"m={m},n={n},k_max={k_max}", False, f"mismatch at k={k}")
    return KacCheck("ab_vs_pq", f"m={m},n={n},k_max={k_max}", True)


# ---------------------------------------------------------------------------
# structure of the p, q coefficients
def _homogeneous_ok(v, s2) -> bool:
    """``v`` is zero unless ``s2 / 2`` is a nonnegative integer ``s``, and then
    homogeneous of degree ``s``."""
    v = _as_poly(v)
    if s2 < 0 or s2 % 2:
        return v.is_zero()
    return v.is_homogeneous(s2 // 2)


def sigma_grid(m: int, n: int, k_max: int, Ms, Ns, which: str = "p") -> dict:
    """Values of ``sigma_{l,nu,k,iota}`` at integer grid points ``(M, N)``.

    The recurrence is run with the dimensions replaced by the grid values,
    vectorized over the grid.  Because the factors ``(M - l - 1)`` and ``l``
    vanish at the ends of the index ranges, each coefficient is a
    polynomial in ``(M, N)``; the unbounded recurrence (index window shrinking
    with the step) evaluates that polynomial at every grid point, including
    points where ``l >= M``.

    Returns
    -------
    dict
        ``(l, nu, k, iota) -> object array of shape (len(Ms), len(Ns))`` for
        ``l < m``, ``nu < n``, ``k <= k_max`` and ``0 <= iota <= s``.
    """
    Ms = list(Ms)
    Ns = list(Ns)
    GM = np.array([[M for _ in Ns] for M in Ms], dtype=object).reshape(-1)
    GN = np.array([[N for N in Ns] for _ in Ms], dtype=object).reshape(-1)
    G = GM.shape[0]
    K = k_max

    def win_l(k):
        return min(k, m - 1 + K - k)

    def win_n(k):
        return min(k, n - 1 + K - k)

    one = np.ones((1, G), dtype=object)
    P = {(0, 0): one.copy()}
    Qd: dict = {}
    out = {}

    def record(k, D, par):
        for (l, nu), arr in D.items():
            if l < m and nu < n:
                for iota in range(arr.shape[0]):
                    out[(l, nu, k, iota)] = arr[iota].reshape(len(Ms), len(Ns))

    def step(D, k):
        new = {}
        Lw, Nw = win_l(k + 1), win_n(k + 1)
        for l in range(0, Lw + 1):
            for nu in range(0, Nw + 1):
                acc = None
                if l > 0 and (l - 1, nu) in D:
                    acc = _acc(acc, l * D[(l - 1, nu)])
                if nu > 0 and (l, nu - 1) in D:
                    acc = _acc(acc, nu * D[(l, nu - 1)])
                if (l + 1, nu) in D:
                    arr = D[(l + 1, nu)] * (GM - l - 1)
                    arr = np.vstack([arr, np.zeros((1, G), dtype=object)])  # tau2: iota unchanged
                    acc = _acc(acc, arr)
                if (l, nu + 1) in D:
                    arr = D[(l, nu + 1)] * (GN - nu - 1)
                    arr = np.vstack([np.zeros((1, G), dtype=object), arr])  # tau1: iota + 1
                    acc = _acc(acc, arr)
                if acc is not None:
                    new[(l, nu)] = acc
        return new

    if which == "p":
        record(0, P, 0)
        for k in range(K):
            P = step(P, k)
            record(k + 1, P, 0)
        return out
    # q: q_{k+1} = p_k + step(q_k)
    record_q = {}
    for k in range(K):
        newQ = step(Qd, k) if Qd else {}
        for key, arr in P.items():
            if key[0] <= win_l(k + 1) and key[1] <= win_n(k + 1):
                newQ[key] = _acc(newQ.get(key), arr)
        P = step(P, k)
        Qd = newQ
        for (l, nu), arr in Qd.items():
            if l < m and nu < n:
                for iota in range(arr.shape[0]):
                    record_q[(l, nu, k + 1, iota)] = arr[iota].reshape(len(Ms), len(Ns))
    return record_q


def _acc(acc, arr):
    if acc is None:
        return arr
    if acc.shape[0] != arr.shape[0]:
        raise AssertionError("degree mismatch in the coefficient recurrence")
    return acc + arr


def newton_coefficients(values) -> np.ndarray:
    """2D forward differences: coefficients in the binomial basis.

    ``values[i, j] = f(M0 + i, N0 + j)`` gives ``c[a, b]`` with
    ``f = sum c[a, b] C(M - M0, a) C(N - N0, b)``.  Exact for integers.
    """
    c = np.array(values, dtype=object)
    for axis in (0, 1):
        c = np.moveaxis(c, axis, 0)
        for r in range(1, c.shape[0]):
            c[r:] = c[r:] - c[r - 1:-1].copy()
        c = np.moveaxis(c, 0, axis)
    return c


def _degree_info(c: np.ndarray):
    """Total degree, per-variable degrees and top-form signs from Newton coefficients."""
    nz = [(a, b) for a in range(c.shape[0]) for b in range(c.shape[1]) if c[a, b] != 0]
    if not nz:
        return -1, -1, -1, True, False
    tot = max(a + b for a, b in nz)
    top = [c[a, b] for a, b in nz if a + b == tot]
    dM = max(a for a, _ in nz)
    dN = max(b for _, b in nz)
    # the top-degree monomial form is sum c[a,b] M^a N^b / (a! b!)
    top_nonneg = all(v > 0 for v in top)
    edge = any(a == c.shape[0] - 1 or b == c.shape[1] - 1 for a, b in nz)
    return tot, dM, dN, top_nonneg, edge


@dataclass
class CoefficientReport:
    instance: str
    parity_ok: bool = True
    factorial_ok: bool = True
    degree_ok: bool = True
    per_variable_ok: bool = True
    grid_consistent: bool = True
    checked_sigma: int = 0
    violations: list = field(default_factory=list)


def verify_coefficient_structure(m: int, n: int, k_max: int, mutate: Optional[str] = None,
                  grid_extra: int = 2, max_violations: int = 20) -> CoefficientReport:
    """Check parity vanishing, the ``k!`` identity and the degree claim.

    (i) every ``p_{l,nu,k}`` (``q_{l,nu,k}``) is zero unless
    ``s = (k - l - nu)/2`` (``(k - l - nu - 1)/2``) is a nonnegative integer,
    and is then homogeneous of degree ``s`` in ``(tau1, tau2)``;
    (ii) it equals ``k!`` when ``s = 0``;
    (iii) for ``s > 0`` each ``sigma_iota(n, m)`` has total degree at least
    ``s`` in ``(n, m)`` with positive top-degree Newton coefficients, found by
    exact interpolation on a grid of ``s_max + grid_extra`` values per
    variable.  Whether the degree reaches ``s`` in each variable separately
    is recorded in ``per_variable_ok``.
    """
    rep = CoefficientReport(f"m={m},n={n},k_max={k_max}")
    tab = run_recurrence_pq(m, n, k_max, mutate)

    def viol(msg):
        if len(rep.violations) < max_violations:
            rep.violations.append(msg)

    for k in range(k_max + 1):
        for l in range(m):
            for nu in range(n):
                for name, v, s2 in (("p", tab.p(l, nu, k), k - l - nu), ("q", tab.q(l, nu, k), k - l - nu - 1)):
                    if k < 2:
                        continue
                    if not _homogeneous_ok(v, s2):
                        rep.parity_ok = False
                        viol(f"(i) {name}_{l},{nu},{k} = {v}")
                    if s2 == 0 and _as_poly(v) != BiPoly.const(math.factorial(k)):
                        rep.factorial_ok = False
                        viol(f"(ii) {name}_{l},{nu},{k} = {v} != {k}!")
    if mutate is not None:
        return rep

    s_max = k_max // 2
    size = s_max + grid_extra
    Ms = range(m, m + size)
    Ns = range(n, n + size)
    for which in ("p", "q"):
        grid = sigma_grid(m, n, k_max, Ms, Ns, which)
        for (l, nu, k, iota), vals in grid.items():
            if k < 2:
                continue
            s2 = k - l - nu - (0 if which == "p" else 1)
            if s2 < 0 or s2 % 2:
                continue
            s = s2 // 2
            # consistency with the symbolic table at the instance point
            poly = _as_poly(tab.p(l, nu, k) if which == "p" else tab.q(l, nu, k))
            if poly.coeff(iota, s - iota) != vals[0, 0]:
                rep.grid_consistent = False
                viol(f"grid/table mismatch {which}_{l},{nu},{k},iota={iota}")
            if s == 0:
                continue
            rep.checked_sigma += 1
            c = newton_coefficients(vals)
            tot, dM, dN, top_pos, edge = _degree_info(c)
            if edge:
                rep.degree_ok = False
                viol(f"(iii) grid too small for {which}_{l},{nu},{k},iota={iota}")
            if tot < s or not top_pos:
                rep.degree_ok = False
                viol(f"(iii) {which}_{l},{nu},{k},iota={iota}: total degree {tot} (s={s}), top positive={top_pos}")
            if dM < s or dN < s:
                rep.per_variable_ok = False
    return rep


# ---------------------------------------------------------------------------
# exceptional angles and genericity
def exceptional_angles(m: int, n: int) -> dict:
    """Finite sets of angle values where ``Q`` is singular or ``Ktilde`` has a repeated eigenvalue.

    Returns
    -------
    dict with keys
        ``"singular"``: ``C = (a^2 - b^2)/(a^2 + b^2)`` over ``a = m-1-2i``,
        ``b = n-1-2j`` (both zero skipped), the values at which
        ``det Ktilde = 0`` for ``c1 c2 > 0``.
        ``"singular_stated"``: the same set under the opposite sign
        convention for the angle.
        ``"repeated"``: ``((i-k)^2 - (j-l)^2)/((i-k)^2 + (j-l)^2)`` over
        distinct index pairs, where two eigenvalues coincide.
        ``"repeated_stated"``: the same with the opposite sign.
    """
    sing, rep = set(), set()
    for i in range(m):
        for j in range(n):
            a, b = m - 1 - 2 * i, n - 1 - 2 * j
            if a == 0 and b == 0:
                continue
            sing.add(Fraction(a * a - b * b, a * a + b * b))
    for di in range(0, m):
        for dj in range(0, n):
            if di == 0 and dj == 0:
                continue
            rep.add(Fraction(di * di - dj * dj, di * di + dj * dj))
    return {
        "singular": sing,
        "singular_stated": {-c for c in sing},
        "repeated": rep,
        "repeated_stated": {-c for c in rep},
    }


def exceptional_angle_check(m: int, n: int, c1: int = 1, c2: int = 1, denominator: int = 65) -> KacCheck:
    """Brute-force oracle: ``det Q = 0`` exactly iff ``C`` is in the singular set.

    ``C`` runs over ``k / denominator`` in ``(-1, 1)`` together with the
    members of both candidate sets; ``tau1 = -c1 (1 + C)/2`` and
    ``tau2 = -c2 (1 - C)/2``.  For ``c1 c2 < 0`` no ``C`` in ``(-1, 1)``
    may be singular.  When ``m`` and ``n`` are both odd the middle
    eigenvalue pair gives ``0`` for every ``C``, so every ``C`` is singular.
    """
    sets = exceptional_angles(m, n)
    grid = {Fraction(k, denominator) for k in range(-denominator + 1, denominator)}
    grid |= {C for C in sets["singular"] | sets["singular_stated"] if -1 < C < 1}
    if m % 2 and n % 2:
        expected = set(grid)
    elif c1 * c2 > 0:
        expected = {C for C in sets["singular"] if -1 < C < 1}
    else:
        expected = set()
    dK = det(kronecker_sum(m, n))
    wrong = []
    for C in sorted(grid):
        val = poly_eval(dK, -c1 * (1 + C) / 2, -c2 * (1 - C) / 2)
        if (val == 0) != (C in expected):
            wrong.append(C)
    return KacCheck("exceptional_angles", f"m={m},n={n},c1={c1},c2={c2}", not wrong,
                    "" if not wrong else f"singularity mismatch at C={wrong[0]}")


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    a, b = x.numerator, x.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def genericity_violation(m: int, n: int, tau1, tau2, need_invertible: bool) -> Optional[str]:
    """Reason why ``(tau1, tau2)`` is degenerate, or ``None``.

    Eigenvalues ``(m-1-2i) sqrt(tau2) + (n-1-2j) sqrt(tau1)`` must be simple;
    when ``need_invertible`` none may vanish.
    """
    t1, t2 = Fraction(tau1), Fraction(tau2)
    if t1 == 0 and n > 1:
        return "tau1 = 0 makes K_n nilpotent (repeated eigenvalue 0)"
    if t2 == 0 and m > 1:
        return "tau2 = 0 makes K_m nilpotent (repeated eigenvalue 0)"
    if t1 * t2 > 0:
        for di in range(m):
            for dj in range(n):
                if (di or dj) and di * di * t2 == dj * dj * t1:
                    return f"repeated eigenvalue: {di}^2 tau2 = {dj}^2 tau1"
        if need_invertible:
            for i in range(m):
                for j in range(n):
                    a, b = m - 1 - 2 * i, n - 1 - 2 * j
                    if (a or b) and a * a * t2 == b * b * t1:
                        return f"zero eigenvalue: {a}^2 tau2 = {b}^2 tau1"
    if need_invertible and m % 2 and n % 2:
        return "m and n both odd: Ktilde has the eigenvalue 0"
    return None


def kac_kernel(d: int, tau):
    """Column vector ``x`` with ``K_d(tau) x = 0`` and ``x_1 = 1`` (odd ``d``)."""
    if d % 2 == 0:
        raise ValueError("K_d has a kernel only for odd d (tau != 0)")
    tau = Fraction(tau)
    x = [Fraction(0)] * d
    x[0] = Fraction(1)
    # row l reads (d - l) tau x_{l-1} + (l + 1) x_{l+1} = 0
    for l in range(1, d - 1):
        x[l + 1] = -(d - l) * tau * x[l - 1] / (l + 1)
    return x


def rank_checks(m: int, n: int, s: int, tau1, tau2) -> list:
    """Exact rank facts for the rows ``e1~ Q^k`` at rational ``(tau1, tau2)``.

    * ``m`` or ``n`` even: ``{e1~ Q^k : k = s..s+2mn-1}`` has rank ``2mn``.
    * both odd: ``Lambda = {e1~ Q^k : k = 2..2mn-1}`` and
      ``Lambda_s = Lambda + {e1~ Q^s}`` (``s >= 2mn``) both have rank
      ``2mn - 2``; entries of ``e1 Ktilde^k`` vanish off the chessboard; the
      kernel vector ``u = ybar (x) xbar`` annihilates the columns of each
      block, and the first column of each block lies in the span of the
      odd-indexed ones ``3, 5, ..., mn``.

    Raises
    ------
    DegenerateParameters
        When the genericity conditions fail.
    """
    t1, t2 = Fraction(tau1), Fraction(tau2)
    both_odd = bool(m % 2 and n % 2)
    why = genericity_violation(m, n, t1, t2, need_invertible=not both_odd)
    if why:
        raise DegenerateParameters(why)
    N = m * n
    inst = f"m={m},n={n},s={s},tau1={t1},tau2={t2}"
    out = []
    if not both_odd:
        rows = Q_rows(m, n, s + 2 * N - 1, t1, t2)
        r = bareiss_rank(rows[s:s + 2 * N])
        out.append(KacCheck("rank_full", inst, r == 2 * N, f"rank {r}, expected {2 * N}"))
        return out
    if s < 2 * N:
        raise ValueError("the odd case needs s >= 2mn")
    rows = Q_rows(m, n, max(s, 2 * N), t1, t2)
    Lam = rows[2:2 * N]
    r1 = bareiss_rank(Lam)
    r2 = bareiss_rank(Lam + [rows[s]])
    out.append(KacCheck("rank_Lambda", inst, r1 == 2 * N - 2, f"rank {r1}, expected {2 * N - 2}"))
    out.append(KacCheck("rank_Lambda_s", inst, r2 == 2 * N - 2, f"rank {r2}, expected {2 * N - 2}"))

    # chessboard on e1 Ktilde^k: entry (l, nu) vanishes when l + nu + k is odd
    chess_ok = True
    for k, row in enumerate(rows[: max(s, 2 * N) + 1]):
        for l in range(m):
            for nu in range(n):
                if (l + nu + k) % 2 and row[l * n + nu] != 0:
                    chess_ok = False
    out.append(KacCheck("chessboard", inst, chess_ok))

    # kernel-vector column relations for both blocks of Lambda_s
    xbar = kac_kernel(n, t1)
    ybar = kac_kernel(m, t2)
    u = [ybar[l] * xbar[nu] for l in range(m) for nu in range(n)]
    mat = Lam + [rows[s]]
    kern_ok, span_ok = True, True
    for q in (0, 1):
        cols = [[row[q * N + a] for row in mat] for a in range(N)]
        Cu = [sum(u[a] * cols[a][r] for a in range(N)) for r in range(len(mat))]
        if any(Cu):
            kern_ok = False
        odd = [cols[a] for a in range(2, N, 2)]  # 1-based 3, 5, ..., mn
        if odd:
            rk = bareiss_rank([list(x) for x in zip(*odd)])
            rk1 = bareiss_rank([list(x) for x in zip(*(odd + [cols[0]]))])
            if rk != rk1:
                span_ok = False
        elif any(cols[0]):
            span_ok = False
    out.append(KacCheck("kernel_relation", inst, kern_ok))
    out.append(KacCheck("first_column_span", inst, span_ok))
    return out
