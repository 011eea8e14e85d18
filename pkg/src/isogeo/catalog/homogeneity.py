"""Constructive homogeneity witnesses.

For the field families, the group ``U(n+1, F) x U(1, F)`` acts by
``(x, y) -> (A x a, A y conj(a))`` with ``A`` F-linear unitary and ``a`` a
unit scalar, and ``|<x, y>_F|`` is invariant.  :func:`mtf_witness`
builds an element carrying one point of a level set to another in three
steps: a unitary ``A1`` with ``A1 x = x'``, a unit scalar ``a`` matching
the two values of ``<x', .>_F``, and a unitary ``A2`` fixing the line of
``x'`` up to the scalar.

For the graph family in ``S^1 x H^m``, rotating the circle by ``theta``
while boosting ``H^m`` by ``h_{theta/a}`` (with ``h_s u = e^{-s} u``)
preserves ``F``; so does any element of the stabilizer of ``u``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..spaceforms import factor_inner
from . import quaternion as qt
from .families import FIELD_DIM, MTF, GraphSH

__all__ = [
    "GroupWitness",
    "NoWitnessError",
    "mtf_witness",
    "apply_witness",
    "boost",
    "null_rotation",
    "graph_symmetry_check",
]


class NoWitnessError(ValueError):
    """The two points lie in different orbits (e.g. different components)."""


@dataclass
class GroupWitness:
    """Group element ``(A, a)`` with ``A`` stored as a real matrix.

    Attributes
    ----------
    matrix : ndarray
        Real form of the F-linear map ``A``.
    scalar : ndarray
        Unit scalar as a quaternion ``(a0, a1, a2, a3)``.
    field : str
    residual : float
        ``max(|A x a - x'|, |A y conj(a) - y'|)``.
    unitarity : float
        ``|A^T A - I|_max``.
    linearity : float
        Max commutator norm of ``A`` with right multiplication by the units.
    """

    matrix: np.ndarray
    scalar: np.ndarray
    field: str
    residual: float = math.nan
    unitarity: float = math.nan
    linearity: float = math.nan


def _fnorm(X) -> float:
    return math.sqrt(max(float(qt.finner(X, X)[0]), 0.0))


def _f_gram_schmidt(first: list, d: int, k: int, tol: float = 1e-10) -> list:
    """F-orthonormal basis of F^k beginning with the (orthonormal) ``first`` vectors."""
    basis = [np.array(v) for v in first]
    for j in range(k):
        for comp in range(d):
            e = np.zeros((k, 4))
            e[j, comp] = 1.0
            v = e
            for _ in range(2):  # re-orthogonalize once for stability
                for u in basis:
                    v = v - qt.rmul(u, qt.finner(u, v))
            nv = _fnorm(v)
            if nv > tol:
                basis.append(v / nv)
            if len(basis) == k:
                return basis
    if len(basis) != k:
        raise RuntimeError("F-Gram-Schmidt failed to complete a basis")
    return basis


def _map_from_pairs(src: list, dst: list):
    """F-linear ``z -> sum_k dst_k <src_k, z>_F``."""

    def A(Z):
        out = np.zeros_like(Z)
        for s, t in zip(src, dst):
            out = out + qt.rmul(t, qt.finner(s, Z))
        return out

    return A


def _real_matrix(A, d: int, k: int) -> np.ndarray:
    N = d * k
    M = np.zeros((N, N))
    for r in range(N):
        e = np.zeros(N)
        e[r] = 1.0
        M[:, r] = qt.from_quat(A(qt.to_quat(e, d)), d)
    return M


def apply_witness(w: GroupWitness, x, y):
    """``(A x a, A y conj(a))`` in real coordinates."""
    d = FIELD_DIM[w.field]
    Ax = qt.to_quat(w.matrix @ np.asarray(x, float), d)
    Ay = qt.to_quat(w.matrix @ np.asarray(y, float), d)
    a = w.scalar
    return qt.from_quat(qt.rmul(Ax, a), d), qt.from_quat(qt.rmul(Ay, qt.conj(a)), d)


def mtf_witness(field: str, p, p_prime, level_tol: float = 1e-10) -> GroupWitness:
    """Group element carrying ``p = (x, y)`` to ``p' = (x', y')``.

    Parameters
    ----------
    field : {"R", "C", "H"}
    p, p_prime : tuple of ndarray
        Points of ``S^N x S^N`` in real coordinates, ``N + 1 = (n+1) d``.

    Raises
    ------
    ValueError
        If the two points are on different levels of ``|<x, y>_F|^2``.
    NoWitnessError
        For ``field="R"`` when ``<x, y>`` and ``<x', y'>`` have opposite signs.
    """
    if field not in FIELD_DIM:
        raise ValueError("field must be one of R, C, H")
    d = FIELD_DIM[field]
    x, y = (np.asarray(v, float) for v in p)
    x2, y2 = (np.asarray(v, float) for v in p_prime)
    if x.shape != x2.shape or x.shape[0] % d:
        raise ValueError("points must have matching length divisible by d")
    k = x.shape[0] // d
    X, Y, X2, Y2 = (qt.to_quat(v, d) for v in (x, y, x2, y2))
    lam0 = qt.finner(X, Y)
    lam2 = qt.finner(X2, Y2)
    t0 = float(np.dot(lam0, lam0))
    t2 = float(np.dot(lam2, lam2))
    if abs(t0 - t2) > level_tol:
        raise ValueError(f"points lie on different levels ({t0!r} vs {t2!r})")

    # step 1: unitary A1 with A1 x = x'
    U = _f_gram_schmidt([X], d, k)
    U2 = _f_gram_schmidt([X2], d, k)
    A1 = _map_from_pairs(U, U2)
    Yt = A1(Y)
    lam1 = qt.finner(X2, Yt)

    # step 2: unit scalar a with a lam2 a = lam1
    r = math.sqrt(t0)
    if r < 1e-14:
        a = np.array([1.0, 0.0, 0.0, 0.0])
    else:
        u1 = lam1 / np.linalg.norm(lam1)
        u2 = lam2 / np.linalg.norm(lam2)
        w2 = qt.qmul(u1, u2)
        if d == 1 and w2[0] < 0:
            raise NoWitnessError("<x,y> and <x',y'> have opposite signs: different components")
        a = qt.qmul(qt.unit_sqrt(w2), qt.conj(u2))

    # step 3: A2 with A2 x' = x' conj(a) and A2 W = W' a on the complements
    W = Yt - qt.rmul(X2, lam1)
    W2 = qt.rmul(Y2 - qt.rmul(X2, lam2), a)
    nW, nW2 = _fnorm(W), _fnorm(W2)
    src = [X2]
    dst = [qt.rmul(X2, qt.conj(a))]
    if nW > 1e-12 and nW2 > 1e-12:
        src.append(W / nW)
        dst.append(W2 / nW2)
    src = _f_gram_schmidt(src, d, k)
    dst = _f_gram_schmidt(dst, d, k)
    A2 = _map_from_pairs(src, dst)

    M = _real_matrix(lambda Z: A2(A1(Z)), d, k)
    if d == 1:
        a = np.array([np.sign(a[0]) or 1.0, 0.0, 0.0, 0.0])
    w = GroupWitness(M, a, field)
    gx, gy = apply_witness(w, x, y)
    w.residual = max(float(np.linalg.norm(gx - x2)), float(np.linalg.norm(gy - y2)))
    w.unitarity = float(np.max(np.abs(M.T @ M - np.eye(M.shape[0]))))
    units = qt.right_units(field, k)
    w.linearity = max((float(np.max(np.abs(M @ R - R @ M))) for R in units), default=0.0)
    return w


# ---------------------------------------------------------------------------
def boost(u, s: float) -> np.ndarray:
    """Lorentz boost ``h_s`` with ``h_s u = e^{-s} u`` for ``u = (1, w)``.

    Acts in the plane of ``e_0`` and ``(0, w)`` and trivially on its
    orthogonal complement, so ``<h_s y, u>_L = e^s <y, u>_L``.
    """
    u = np.asarray(u, float)
    dim = u.shape[0]
    ew = np.zeros(dim)
    ew[1:] = u[1:] / np.linalg.norm(u[1:])
    e0 = np.zeros(dim)
    e0[0] = 1.0
    ch, sh = math.cosh(s), math.sinh(s)
    # h = I + (ch-1)(e0 e0^T + ew ew^T) - sh (ew e0^T + e0 ew^T)
    H = np.eye(dim)
    H += (ch - 1.0) * (np.outer(e0, e0) + np.outer(ew, ew))
    H -= sh * (np.outer(ew, e0) + np.outer(e0, ew))
    return H


def null_rotation(u, b) -> np.ndarray:
    """Parabolic isometry ``v -> v + <b,v>u - <u,v>b - |b|^2/2 <u,v> u`` fixing ``u``.

    ``b`` must be spacelike and Lorentz-orthogonal to both ``u`` and ``e_0``.
    """
    u = np.asarray(u, float)
    b = np.asarray(b, float)
    dim = u.shape[0]
    J = np.eye(dim)
    J[0, 0] = -1.0
    bb = factor_inner(b, b, -1)
    return np.eye(dim) + np.outer(u, J @ b) - np.outer(b, J @ u) - 0.5 * bb * np.outer(u, J @ u)


def _random_stabilizer(u, rng: np.random.Generator) -> np.ndarray:
    u = np.asarray(u, float)
    dim = u.shape[0]
    w = u[1:] / np.linalg.norm(u[1:])
    # orthonormal spatial complement of w
    from scipy.linalg import null_space

    Q = null_space(w[None, :])  # (m, m-1)
    if Q.shape[1] == 0:
        return np.eye(dim)
    R, _ = np.linalg.qr(rng.standard_normal((Q.shape[1], Q.shape[1])))
    rot = np.eye(dim)
    rot[1:, 1:] = np.outer(w, w) + Q @ R @ Q.T
    b = np.zeros(dim)
    b[1:] = Q @ rng.standard_normal(Q.shape[1])
    return null_rotation(u, b) @ rot


def graph_symmetry_check(fam: GraphSH, x, y, theta: float, rng=None) -> float:
    """``|F(g p) - F(p)|`` for ``g`` = circle rotation by ``theta`` with boost ``h_{theta/a}``.

    When ``rng`` is given, a random element of the stabilizer of ``u``
    (a rotation about ``w`` composed with a null rotation) is applied too.
    """
    a = fam.a_param
    if a == 0:
        raise ValueError("a must be nonzero")
    uu = fam.u.u
    c, s = math.cos(theta), math.sin(theta)
    gx = np.array([c * x[0] - s * x[1], s * x[0] + c * x[1]])
    G = boost(uu, theta / a)
    if rng is not None:
        G = G @ _random_stabilizer(uu, rng)
    gy = G @ np.asarray(y, float)
    return abs(fam.value(gx, gy) - fam.value(x, y))
