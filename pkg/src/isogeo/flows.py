"""Parallel hypersurfaces, Riccati evolution and focal distances.

The normal flow moves a point of a level set along the product geodesic
with initial velocity ``N``; its velocity is the parallel-transported
normal, which stays normal to the parallel level set (up to orientation).

On ``S^n x S^n`` with zero angle function, each principal curvature
evolves by the cotangent law ``(1/sqrt 2) cot(theta/2 - t/sqrt 2)``,
where ``lambda = (1/sqrt 2) cot(theta/2)``; poles are focal distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .catalog.families import Family
from .catalog.geometry import (
    NumericalFailure,
    SingularLevelError,
    _factor_grad,
    adapted_frame_xy,
    adaptive_shape_matrix_xy,
    hessian_shape_xy,
    metric_weights,
    normal_xy,
    raw_sigma_frame_xy,
    shape_matrix_xy,
    slice_blocks_xy,
)
from .spaceforms import ProductPoint, TangentVec, factor_inner, factor_norm

__all__ = [
    "FlowState",
    "flow_xy",
    "normal_flow",
    "riccati_predict",
    "riccati_theta",
    "flowed_spectrum",
    "riccati_check",
    "focal_distances",
    "v_flow_xy",
    "v_flow_isometry_check",
    "VFlowReport",
    "gen_sin",
    "gen_cos",
    "jacobi_matrix",
    "jacobi_determinant_check",
    "JacobiReport",
]


@dataclass
class FlowState:
    """Point reached by the normal flow and the transported normal."""

    point: ProductPoint
    normal: TangentVec
    t: float


def _factor_geodesic(p, v, t, c):
    """Point and velocity of the factor geodesic with initial velocity ``v``."""
    s = factor_norm(v, c)
    if s == 0.0:
        return p.copy(), v.copy()
    u = v / s
    if c == 1:
        q = math.cos(s * t) * p + math.sin(s * t) * u
        dq = s * (-math.sin(s * t) * p + math.cos(s * t) * u)
        q /= np.linalg.norm(q)
    else:
        q = math.cosh(s * t) * p + math.sinh(s * t) * u
        dq = s * (math.sinh(s * t) * p + math.cosh(s * t) * u)
        q[0] = math.sqrt(1.0 + np.dot(q[1:], q[1:]))
    return q, dq


def flow_xy(fam: Family, x, y, t: float, direction=None):
    """Product geodesic from ``(x, y)`` with initial velocity ``direction`` (default ``N``).

    Returns
    -------
    x_t, y_t, vx_t, vy_t : ndarray
        Endpoint and velocity at time ``t``.
    """
    spec = fam.spec
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if direction is None:
        vx, vy = normal_xy(fam, x, y)
    else:
        vx, vy = direction
    xt, dxt = _factor_geodesic(x, np.asarray(vx, float), t, spec.c1)
    yt, dyt = _factor_geodesic(y, np.asarray(vy, float), t, spec.c2)
    return xt, yt, dxt, dyt


def normal_flow(fam: Family, p: ProductPoint, t: float) -> FlowState:
    """Flow ``p`` for arclength ``t`` along the unit normal geodesic."""
    xt, yt, vx, vy = flow_xy(fam, p.x.coords, p.y.coords, t)
    q = ProductPoint.from_arrays(xt, yt, fam.spec.c1, fam.spec.c2)
    return FlowState(q, TangentVec(vx, vy, q), float(t))


# ---------------------------------------------------------------------------
def riccati_theta(lam: float) -> float:
    """``theta`` in ``(0, 2 pi)`` with ``lam = (1/sqrt 2) cot(theta/2)``."""
    return 2.0 * math.atan2(1.0, math.sqrt(2.0) * lam)


def riccati_predict(lam: float, t: float, pole_tol: float = 1e-12) -> float:
    """Principal curvature after flowing for time ``t``.

    Returns ``math.inf`` at a pole (a focal distance).
    """
    arg = riccati_theta(lam) / 2.0 - t / math.sqrt(2.0)
    s = math.sin(arg)
    if abs(s) < pole_tol:
        return math.inf
    return math.cos(arg) / (math.sqrt(2.0) * s)


def _orientation(fam, xt, yt, vx, vy) -> float:
    nx, ny = normal_xy(fam, xt, yt)
    ip = factor_inner(nx, vx, fam.spec.c1) + factor_inner(ny, vy, fam.spec.c2)
    return 1.0 if ip > 0 else -1.0


def flowed_spectrum(fam: Family, x, y, t: float) -> np.ndarray:
    """Sorted principal curvatures of the parallel hypersurface at distance ``t``.

    The transported normal (geodesic velocity) orients the parallel
    hypersurface.  The finite-difference step adapts to large curvatures.
    """
    xt, yt, vx, vy = flow_xy(fam, x, y, t)
    sgn = _orientation(fam, xt, yt, vx, vy)
    S, _, _ = adaptive_shape_matrix_xy(fam, xt, yt, normal_sign=sgn)
    return np.linalg.eigvalsh(S)


def riccati_check(fam: Family, x, y, t: float, zero_tol: float = 1e-4) -> float:
    """Max ``|predicted - measured|`` over the nonzero principal curvatures.

    The simple zero eigenvalue along ``V`` is excluded: its direction is
    flat in the normal plane and it does not follow the cotangent law.
    """
    S, _, _ = shape_matrix_xy(fam, x, y)
    ev0 = np.linalg.eigvalsh(S)
    pred = sorted(riccati_predict(v, t) for v in ev0 if abs(v) > zero_tol)
    ev1 = flowed_spectrum(fam, x, y, t)
    # drop the eigenvalue closest to the V-direction value (0)
    idx = int(np.argmin(np.abs(ev1)))
    meas = sorted(np.delete(ev1, idx))
    if len(meas) != len(pred):
        return math.inf
    return max((abs(a - b) for a, b in zip(meas, pred)), default=0.0)


def _inv_top(fam, x, y, t):
    """``1/lambda_top`` of the parallel hypersurface, 0 on the focal set.

    Uses ``-Hess F / |grad F|``, which stays accurate as ``|grad F| -> 0``
    where central differences of the normal break down.
    """
    xt, yt, vx, vy = flow_xy(fam, x, y, t)
    E, nrm = raw_sigma_frame_xy(fam, xt, yt)
    if E is None or nrm < 1e-14:
        return 0.0
    F, dx, dy = fam.grad(xt, yt)
    # orientation of the geodesic velocity against grad F
    g = np.concatenate([_factor_grad(xt, dx, fam.spec.c1), _factor_grad(yt, dy, fam.spec.c2)])
    v = np.concatenate([vx, vy])
    w = metric_weights(fam.spec)
    sgn = 1.0 if float(np.dot(w * g, v)) > 0 else -1.0
    ev = np.linalg.eigvalsh(sgn * hessian_shape_xy(fam, xt, yt, E))
    top = ev[np.argmax(np.abs(ev))]
    return 1.0 / top if top != 0 else math.inf


def focal_distances(fam: Family, x, y, t_max: float = 10.0, step: float = 0.02, xtol: float = 1e-10) -> list:
    """Focal distances in ``(0, t_max]`` along ``+N``.

    ``r(t) = 1/lambda_top`` (``lambda_top`` the eigenvalue of largest modulus)
    passes through zero at a blow-up.  A sign change between grid points
    where both ``|r|`` are within a few steps of zero is refined by Brent's
    method.  Grid points that land on a singular level are skipped.
    """
    ts = np.arange(1, int(math.floor(t_max / step + 1e-9)) + 1) * step
    out = []
    prev_t, prev_r = 0.0, None
    S, _, _ = shape_matrix_xy(fam, x, y)
    ev = np.linalg.eigvalsh(S)
    top = ev[np.argmax(np.abs(ev))]
    prev_r = 1.0 / top if top != 0 else math.inf
    for t in ts:
        try:
            r = _inv_top(fam, x, y, t)
        except (SingularLevelError, NumericalFailure):
            continue
        if (
            prev_r is not None
            and np.isfinite(prev_r)
            and np.isfinite(r)
            and prev_r * r < 0
            and abs(prev_r) + abs(r) <= 3.0 * (t - prev_t)
        ):
            try:
                root = brentq(lambda s: _inv_top(fam, x, y, s), prev_t, t, xtol=xtol)
                out.append(float(root))
            except (ValueError, SingularLevelError, NumericalFailure):
                out.append(float(0.5 * (prev_t + t)))
        prev_t, prev_r = t, r
    return sorted(out)


# ---------------------------------------------------------------------------
def v_flow_xy(fam: Family, x, y, t: float):
    """``(exp_x((1-C) t N^h), exp_y(-(1+C) t N^v))``."""
    nx, ny = normal_xy(fam, x, y)
    C = factor_inner(nx, nx, fam.spec.c1) - factor_inner(ny, ny, fam.spec.c2)
    xt, yt, _, _ = flow_xy(fam, x, y, t, ((1.0 - C) * nx, -(1.0 + C) * ny))
    return xt, yt


@dataclass
class VFlowReport:
    """Slice spectra before and after the V-flow."""

    residual: float
    level_drift: float
    horizontal_before: np.ndarray = field(default_factory=lambda: np.zeros(0))
    horizontal_after: np.ndarray = field(default_factory=lambda: np.zeros(0))
    vertical_before: np.ndarray = field(default_factory=lambda: np.zeros(0))
    vertical_after: np.ndarray = field(default_factory=lambda: np.zeros(0))


def v_flow_isometry_check(fam: Family, x, y, t: float) -> VFlowReport:
    """Compare slice block spectra at ``p`` and at its image under the V-flow.

    ``level_drift`` records ``|F(f_t p) - F(p)|``; the V-geodesic is tangent
    to the level set at ``p``, and for the catalog families it stays on it.
    """
    b0 = slice_blocks_xy(fam, x, y)
    xt, yt = v_flow_xy(fam, x, y, t)
    drift = abs(fam.value(xt, yt) - fam.value(x, y))
    b1 = slice_blocks_xy(fam, xt, yt)
    res = 0.0
    for u, v in ((b0.horizontal, b1.horizontal), (b0.vertical, b1.vertical)):
        if u.shape != v.shape:
            res = math.inf
        elif u.size:
            res = max(res, float(np.max(np.abs(np.sort(u) - np.sort(v)))))
    return VFlowReport(res, drift, b0.horizontal, b1.horizontal, b0.vertical, b1.vertical)


# ---------------------------------------------------------------------------
def gen_sin(tau: float, r):
    """Generalized sine ``S_tau``; ``S_0(r) = r``."""
    if tau < 0:
        s = math.sqrt(-tau)
        return np.sin(s * r) / s
    if tau > 0:
        s = math.sqrt(tau)
        return np.sinh(s * r) / s
    return np.asarray(r, float) * 1.0


def gen_cos(tau: float, r):
    """Generalized cosine ``C_tau``; ``C_0(r) = 1``."""
    if tau < 0:
        return np.cos(math.sqrt(-tau) * r)
    if tau > 0:
        return np.cosh(math.sqrt(tau) * r)
    return np.ones_like(np.asarray(r, float))


def _jacobi_frame(fam: Family, x, y):
    """Frame ``U_1..U_{m-1}`` vertical, ``U_m = V/|V|``, then horizontal."""
    fr = adapted_frame_xy(fam, x, y)
    E = np.column_stack([fr["ver"], fr["V"], fr["hor"]])
    return E, fr["C"], fr["ver"].shape[1]


def jacobi_matrix(A: np.ndarray, r: float, tau1: float, tau2: float, m: int) -> np.ndarray:
    """``B(r)`` with rows ``1..m-1`` vertical, row ``m`` along V, the rest horizontal."""
    k = A.shape[0]
    B = np.empty_like(A)
    nv = m - 1
    for i in range(k):
        if i < nv:
            C, S = gen_cos(tau2, r), gen_sin(tau2, r)
        elif i == nv:
            C, S = 1.0, r
        else:
            C, S = gen_cos(tau1, r), gen_sin(tau1, r)
        B[i, :] = -A[i, :] * S
        B[i, i] += C
    return B


@dataclass
class JacobiReport:
    """``max |D'(r) + H(r) D(r)|`` over a grid."""

    residual: float
    grid: np.ndarray
    D: np.ndarray
    H: np.ndarray
    truncated_at: Optional[float] = None
    D0: float = 1.0


def jacobi_determinant_check(fam: Family, x, y, r_grid, diff_step: float = 1e-4) -> JacobiReport:
    """Check ``D' + H D = 0`` with ``D = det B(r)`` built from ``A`` at ``p``.

    ``H(r)`` is measured independently as the trace of the finite-difference
    shape operator of the parallel hypersurface, oriented by the geodesic
    velocity, with the step adapted to large curvatures near focal points.
    ``D'`` is a central difference with step ``diff_step``.  The
    grid is truncated at the first point where ``D`` changes sign or the
    parallel hypersurface is singular (a focal point).
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    spec = fam.spec
    E, C, nv = _jacobi_frame(fam, x, y)
    S, _, _ = shape_matrix_xy(fam, x, y, E)
    tau1 = -spec.c1 * (1.0 + C) / 2.0
    tau2 = -spec.c2 * (1.0 - C) / 2.0
    m = nv + 1

    def D(r):
        return float(np.linalg.det(jacobi_matrix(S, r, tau1, tau2, m)))

    grid = np.asarray(r_grid, float)
    Ds, Hs, used = [], [], []
    worst = 0.0
    truncated = None
    for r in grid:
        Dr = D(r)
        if Dr <= 0:
            truncated = float(r)
            break
        try:
            xt, yt, vx, vy = flow_xy(fam, x, y, r)
            sgn = _orientation(fam, xt, yt, vx, vy)
            Sr, _, _ = adaptive_shape_matrix_xy(fam, xt, yt, normal_sign=sgn)
        except (SingularLevelError, NumericalFailure):
            truncated = float(r)
            break
        Hr = float(np.trace(Sr))
        dD = (D(r + diff_step) - D(r - diff_step)) / (2.0 * diff_step)
        worst = max(worst, abs(dD + Hr * Dr))
        Ds.append(Dr)
        Hs.append(Hr)
        used.append(r)
    return JacobiReport(worst, np.array(used), np.array(Ds), np.array(Hs), truncated, D(0.0))
