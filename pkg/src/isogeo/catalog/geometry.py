"""Generic Riemannian calculus for level sets in S^n x S^m and S^n x H^m.

Given Euclidean partial derivatives ``dF`` and the Hessian ``H`` of an
ambient extension of ``F``, the factor-wise formulas are

* sphere:      ``grad = dF - <dF, x> x``,
  ``Lap = tr H - x^T H x - n <x, dF>``;
* hyperboloid: ``grad = J dF + <J dF, y>_L y`` with ``J = diag(-1, 1, ...)``,
  ``Lap = tr(J H) + y^T H y + m <y, dF>``,

and the Riemannian Hessian on tangent vectors is ``X^T H Y - <X, Y> <x, dF>``
on a sphere factor and ``X^T H Y + <X, Y>_L <y, dF>`` on a hyperboloid.

The shape operator ``A X = -nabla_X N`` is computed by central differences
of the analytic unit normal along product geodesics; the Hessian form
``-Hess F / |grad F|`` restricted to the hypersurface is kept as an
independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import null_space

from ..spaceforms import (
    ProductPoint,
    TangentVec,
    _exp_raw,
    factor_inner,
)
from .families import Family

__all__ = [
    "SingularLevelError",
    "NumericalFailure",
    "SpectrumReport",
    "CurvatureScalars",
    "ShapeOperator",
    "SliceBlocks",
    "IsoReport",
    "evaluate",
    "evaluate_xy",
    "unit_normal",
    "normal_xy",
    "angle_function",
    "angle_xy",
    "product_exp_xy",
    "tangent_basis_xy",
    "metric_weights",
    "sigma_frame_xy",
    "shape_matrix_xy",
    "hessian_shape_xy",
    "adaptive_shape_matrix_xy",
    "raw_sigma_frame_xy",
    "shape_operator",
    "cluster_values",
    "principal_spectrum",
    "spectrum_xy",
    "pairing_residual",
    "spectrum_mismatch",
    "adapted_frame_xy",
    "slice_blocks",
    "slice_blocks_xy",
    "rigidity_from_blocks",
    "rigidity_residual",
    "rigidity_xy",
    "curvature_scalars",
    "curvature_xy",
    "project_to_level",
    "check_isoparametric",
    "av_norm_xy",
    "angle_gradient_check_xy",
]

SINGULAR_GRAD = 1e-8
SHAPE_STEP = 1e-5
ASYMMETRY_LIMIT = 1e-5


class SingularLevelError(ValueError):
    """Raised at points where the gradient vanishes (focal or singular set)."""


class NumericalFailure(RuntimeError):
    """Raised when a finite-difference shape operator is too asymmetric."""


# ---------------------------------------------------------------------------
# factor-level calculus
def _split(fam: Family, v):
    k = fam.spec.n + 1
    return v[:k], v[k:]


def metric_weights(spec) -> np.ndarray:
    """Diagonal of the ambient metric in ``(x, y)`` coordinates."""
    w = np.ones(spec.n + 1 + spec.m + 1)
    if spec.c1 == -1:
        w[0] = -1.0
    if spec.c2 == -1:
        w[spec.n + 1] = -1.0
    return w


def _factor_grad(p, d, c):
    if c == 1:
        return d - np.dot(d, p) * p
    Jd = d.copy()
    Jd[0] = -Jd[0]
    return Jd + factor_inner(Jd, p, -1) * p


def _factor_lap(p, d, H, c):
    dim = p.shape[0] - 1
    if c == 1:
        return float(np.trace(H) - p @ H @ p - dim * np.dot(p, d))
    trJH = -H[0, 0] + np.trace(H[1:, 1:])
    return float(trJH + p @ H @ p + dim * np.dot(p, d))


def evaluate_xy(fam: Family, x, y, with_laplacian: bool = True):
    """``(F, grad_x, grad_y, Lap F)`` at raw coordinates."""
    F, dx, dy = fam.grad(x, y)
    s = fam.spec
    gx = _factor_grad(x, dx, s.c1)
    gy = _factor_grad(y, dy, s.c2)
    lap = None
    if with_laplacian:
        H = fam.hessian(x, y)
        k = s.n + 1
        lap = _factor_lap(x, dx, H[:k, :k], s.c1) + _factor_lap(y, dy, H[k:, k:], s.c2)
    return F, gx, gy, lap


def evaluate(fam: Family, p: ProductPoint):
    """Value, Riemannian gradient and Laplacian of the family's function.

    Returns
    -------
    F : float
    gradF : TangentVec
    lapF : float
        Sum of the two factor Laplacians.
    """
    F, gx, gy, lap = evaluate_xy(fam, p.x.coords, p.y.coords)
    return F, TangentVec(gx, gy, p), lap


def _grad_norm2(fam, x, y, gx, gy):
    return factor_inner(gx, gx, fam.spec.c1) + factor_inner(gy, gy, fam.spec.c2)


def normal_xy(fam: Family, x, y):
    """Unit normal ``grad F / |grad F|`` at raw coordinates."""
    F, dx, dy = fam.grad(x, y)
    gx = _factor_grad(x, dx, fam.spec.c1)
    gy = _factor_grad(y, dy, fam.spec.c2)
    nrm = math.sqrt(max(_grad_norm2(fam, x, y, gx, gy), 0.0))
    if nrm < SINGULAR_GRAD:
        raise SingularLevelError(f"|grad F| = {nrm:.3g}: point is on a singular level")
    return gx / nrm, gy / nrm


def unit_normal(fam: Family, p: ProductPoint) -> TangentVec:
    nx, ny = normal_xy(fam, p.x.coords, p.y.coords)
    return TangentVec(nx, ny, p)


def angle_xy(fam: Family, x, y) -> float:
    nx, ny = normal_xy(fam, x, y)
    return factor_inner(nx, nx, fam.spec.c1) - factor_inner(ny, ny, fam.spec.c2)


def angle_function(fam: Family, p: ProductPoint) -> float:
    """``C = <PN, N> = |N^h|^2 - |N^v|^2``."""
    return angle_xy(fam, p.x.coords, p.y.coords)


def product_exp_xy(spec, x, y, vx, vy, t: float):
    """Product geodesic ``exp_{(x,y)}(t (vx, vy))``."""
    return _exp_raw(x, vx, t, spec.c1), _exp_raw(y, vy, t, spec.c2)


# ---------------------------------------------------------------------------
# frames
def _factor_basis(p, c):
    if c == 1:
        return null_space(p[None, :])
    # columns of the boost taking e_0 to p, minus the first
    p0, ps = p[0], p[1:]
    m = ps.shape[0]
    B = np.zeros((m + 1, m))
    B[0, :] = ps
    B[1:, :] = np.eye(m) + np.outer(ps, ps) / (1.0 + p0)
    return B


def tangent_basis_xy(spec, x, y) -> np.ndarray:
    """Orthonormal basis of ``T_{(x,y)}`` (columns, ambient coordinates)."""
    Bx = _factor_basis(np.asarray(x, float), spec.c1)
    By = _factor_basis(np.asarray(y, float), spec.c2)
    T = np.zeros((Bx.shape[0] + By.shape[0], Bx.shape[1] + By.shape[1]))
    T[:Bx.shape[0], :Bx.shape[1]] = Bx
    T[Bx.shape[0]:, Bx.shape[1]:] = By
    return T


def sigma_frame_xy(fam: Family, x, y, N=None) -> np.ndarray:
    """Orthonormal frame of ``T Sigma`` (columns of ambient vectors)."""
    if N is None:
        nx, ny = normal_xy(fam, x, y)
        N = np.concatenate([nx, ny])
    T = tangent_basis_xy(fam.spec, x, y)
    w = metric_weights(fam.spec)
    c = T.T @ (w * N)
    Q = null_space(c[None, :])
    return T @ Q


def raw_sigma_frame_xy(fam: Family, x, y):
    """Frame of ``T Sigma`` and ``|grad F|`` without the singular-level guard.

    Returns ``(E, |grad F|)``; ``E`` is ``None`` when the gradient vanishes.
    """
    F, dx, dy = fam.grad(x, y)
    gx = _factor_grad(x, dx, fam.spec.c1)
    gy = _factor_grad(y, dy, fam.spec.c2)
    nrm = math.sqrt(max(_grad_norm2(fam, x, y, gx, gy), 0.0))
    if nrm == 0.0:
        return None, 0.0
    return sigma_frame_xy(fam, x, y, np.concatenate([gx, gy]) / nrm), nrm


# ---------------------------------------------------------------------------
# shape operator
@dataclass
class ShapeOperator:
    """Symmetrized matrix of ``A`` in an orthonormal frame of ``T Sigma``."""

    matrix: np.ndarray
    frame: np.ndarray
    asymmetry: float


def shape_matrix_xy(fam: Family, x, y, E=None, h: float = SHAPE_STEP, normal_sign: float = 1.0,
                    check: bool = True):
    """Finite-difference shape operator at raw coordinates.

    ``A e = -nabla_e N`` is approximated by
    ``-[N(exp(h e)) - N(exp(-h e))] / (2h)`` and paired with the frame
    vectors in the ambient metric (which performs the tangential
    projection).  ``normal_sign`` flips the normal, as needed for flowed
    hypersurfaces whose normal is ``-grad F / |grad F|``.

    Returns
    -------
    S : ndarray
        Symmetrized matrix.
    E : ndarray
        Frame used (columns).
    asym : float
        Max absolute entry of ``(S_raw - S_raw^T) / 2``.
    """
    spec = fam.spec
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if E is None:
        E = sigma_frame_xy(fam, x, y)
    w = metric_weights(spec)
    k = spec.n + 1
    cols = []
    for j in range(E.shape[1]):
        e = E[:, j]
        xp, yp = product_exp_xy(spec, x, y, e[:k], e[k:], h)
        xm, ym = product_exp_xy(spec, x, y, e[:k], e[k:], -h)
        npx, npy = normal_xy(fam, xp, yp)
        nmx, nmy = normal_xy(fam, xm, ym)
        dN = (np.concatenate([npx, npy]) - np.concatenate([nmx, nmy])) / (2.0 * h)
        cols.append(-normal_sign * dN)
    D = np.array(cols).T  # ambient A e_j in columns
    S_raw = E.T @ (w[:, None] * D)
    asym = float(np.max(np.abs(S_raw - S_raw.T))) / 2.0 if S_raw.size else 0.0
    scale = 1.0 + float(np.max(np.abs(S_raw))) if S_raw.size else 1.0
    if check and asym > ASYMMETRY_LIMIT * scale:
        raise NumericalFailure(f"shape operator asymmetry {asym:.3g} exceeds tolerance")
    S = 0.5 * (S_raw + S_raw.T)
    return S, E, asym


def adaptive_shape_matrix_xy(fam: Family, x, y, E=None, normal_sign: float = 1.0, scale_ref: float = 10.0):
    """:func:`shape_matrix_xy` with the step shrunk for large curvatures.

    The central-difference error grows like ``h^2 |lambda|^3``; when the
    largest curvature exceeds ``scale_ref`` the step is rescaled to
    ``SHAPE_STEP * scale_ref / |lambda|_max`` and the matrix recomputed.
    """
    S, E, asym = shape_matrix_xy(fam, x, y, E, normal_sign=normal_sign)
    lmax = float(np.max(np.abs(np.linalg.eigvalsh(S)))) if S.size else 0.0
    if lmax > scale_ref:
        S, E, asym = shape_matrix_xy(fam, x, y, E, h=SHAPE_STEP * scale_ref / lmax, normal_sign=normal_sign)
    return S, E, asym


def hessian_shape_xy(fam: Family, x, y, E=None):
    """Analytic ``-Hess F / |grad F|`` on ``T Sigma`` (independent oracle)."""
    spec = fam.spec
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if E is None:
        E = sigma_frame_xy(fam, x, y)
    F, dx, dy = fam.grad(x, y)
    gx = _factor_grad(x, dx, spec.c1)
    gy = _factor_grad(y, dy, spec.c2)
    nrm = math.sqrt(_grad_norm2(fam, x, y, gx, gy))
    H = fam.hessian(x, y)
    k = spec.n + 1
    w = metric_weights(spec)
    Ex, Ey = E[:k], E[k:]
    R = E.T @ H @ E
    # second fundamental form corrections of the factor quadrics
    Gx = Ex.T @ (w[:k, None] * Ex)
    Gy = Ey.T @ (w[k:, None] * Ey)
    R -= spec.c1 * np.dot(x, dx) * Gx
    R -= spec.c2 * np.dot(y, dy) * Gy
    return -R / nrm


def shape_operator(fam: Family, p: ProductPoint, basis=None, h: float = SHAPE_STEP) -> ShapeOperator:
    """Shape operator of the level set through ``p`` (see :func:`shape_matrix_xy`)."""
    S, E, asym = shape_matrix_xy(fam, p.x.coords, p.y.coords, basis, h)
    return ShapeOperator(S, E, asym)


# ---------------------------------------------------------------------------
# spectra
@dataclass
class SpectrumReport:
    """Clustered principal curvatures.

    Attributes
    ----------
    clusters : list of (float, int)
        Cluster means and multiplicities, ascending.
    symmetry_residual : float
    trace : float
    flagged : bool
        True when two clusters are closer than twice the tolerance.
    eigenvalues : ndarray
    """

    clusters: list
    symmetry_residual: float
    trace: float
    flagged: bool = False
    eigenvalues: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def values(self):
        return [v for v, _ in self.clusters]

    @property
    def multiplicities(self):
        return [k for _, k in self.clusters]


def cluster_values(values, tol: float = 1e-6):
    """Group sorted values whose neighbours differ by less than ``tol (1 + |v|)``.

    Returns
    -------
    clusters : list of (mean, count)
    flagged : bool
        Whether some gap between clusters is below twice the tolerance.
    """
    vals = np.sort(np.asarray(values, float))
    if vals.size == 0:
        return [], False
    groups = [[vals[0]]]
    flagged = False
    for v in vals[1:]:
        prev = groups[-1][-1]
        gap = v - prev
        lim = tol * (1.0 + abs(prev))
        if gap <= lim:
            groups[-1].append(v)
        else:
            if gap < 2.0 * lim:
                flagged = True
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups], flagged


def spectrum_xy(fam: Family, x, y, cluster_tol: float = 1e-6, h: float = SHAPE_STEP, normal_sign: float = 1.0):
    S, E, asym = shape_matrix_xy(fam, x, y, None, h, normal_sign)
    ev = np.linalg.eigvalsh(S)
    clusters, flagged = cluster_values(ev, cluster_tol)
    return SpectrumReport(clusters, asym, float(np.trace(S)), flagged, ev)


def principal_spectrum(fam: Family, p: ProductPoint, cluster_tol: float = 1e-6) -> SpectrumReport:
    """Eigenvalues of the symmetrized shape operator, clustered."""
    return spectrum_xy(fam, p.x.coords, p.y.coords, cluster_tol)


def pairing_residual(clusters, zero_tol: float = 1e-4):
    """Check the reciprocal pairing ``lambda * lambda~ = -1/2``.

    For every nonzero cluster the partner minimizing ``|lambda lambda~ + 1/2|``
    is chosen among clusters of equal multiplicity.

    Returns
    -------
    residual : float
        Max over nonzero clusters (``inf`` when some cluster has no partner
        of equal multiplicity).
    """
    nz = [(v, k) for v, k in clusters if abs(v) > zero_tol]
    worst = 0.0
    for v, k in nz:
        cands = [abs(v * w + 0.5) for w, kk in nz if kk == k]
        worst = max(worst, min(cands) if cands else math.inf)
    return worst


def spectrum_mismatch(clusters, expected):
    """Compare clusters with an expected ``[(value, mult)]`` list.

    Returns
    -------
    max_diff : float
        Max value difference after sorting (``inf`` on count mismatch).
    mults_equal : bool
    """
    exp = sorted((float(v), int(k)) for v, k in expected if k > 0)
    got = sorted(clusters)
    if len(exp) != len(got):
        return math.inf, False
    diff = max((abs(a[0] - b[0]) for a, b in zip(got, exp)), default=0.0)
    return diff, all(a[1] == b[1] for a, b in zip(got, exp))


def av_norm_xy(fam: Family, x, y, h: float = SHAPE_STEP) -> float:
    """``|A V|`` with ``V = PN - CN``."""
    nx, ny = normal_xy(fam, x, y)
    C = factor_inner(nx, nx, fam.spec.c1) - factor_inner(ny, ny, fam.spec.c2)
    N = np.concatenate([nx, ny])
    PN = np.concatenate([nx, -ny])
    V = PN - C * N
    E = sigma_frame_xy(fam, x, y, N)
    S, E, _ = shape_matrix_xy(fam, x, y, E, h)
    w = metric_weights(fam.spec)
    coords = E.T @ (w * V)
    return float(np.linalg.norm(S @ coords))


def angle_gradient_check_xy(fam: Family, x, y, h: float = 1e-4) -> float:
    """``max_e |e(C) + 2 <A V, e>|`` over a frame of ``T Sigma``.

    The derivative of the angle function is taken by central differences
    along product geodesics, which leave the level set only to second order
    and so do not affect a first derivative.
    """
    spec = fam.spec
    k = spec.n + 1
    nx, ny = normal_xy(fam, x, y)
    C = factor_inner(nx, nx, spec.c1) - factor_inner(ny, ny, spec.c2)
    N = np.concatenate([nx, ny])
    V = np.concatenate([nx, -ny]) - C * N
    E = sigma_frame_xy(fam, x, y, N)
    S, E, _ = shape_matrix_xy(fam, x, y, E)
    w = metric_weights(spec)
    AV = S @ (E.T @ (w * V))
    worst = 0.0
    for j in range(E.shape[1]):
        e = E[:, j]
        xp, yp = product_exp_xy(spec, x, y, e[:k], e[k:], h)
        xm, ym = product_exp_xy(spec, x, y, e[:k], e[k:], -h)
        dC = (angle_xy(fam, xp, yp) - angle_xy(fam, xm, ym)) / (2 * h)
        worst = max(worst, abs(dC + 2.0 * AV[j]))
    return worst


# ---------------------------------------------------------------------------
# slices and the rigidity identity
def adapted_frame_xy(fam: Family, x, y, C_limit: float = 1e-8):
    """Adapted frame ``V/|V|``, horizontal ``(X, 0)``, vertical ``(0, Y)``.

    Horizontal vectors are orthogonal to ``x`` and ``N^h``; vertical ones to
    ``y`` and ``N^v``.

    Returns
    -------
    dict
        Keys ``C``, ``C1``, ``C2``, ``V`` (unit, ambient), ``hor`` and ``ver``
        (ambient columns), ``N``.
    """
    spec = fam.spec
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    nx, ny = normal_xy(fam, x, y)
    C1sq = factor_inner(nx, nx, spec.c1)
    C2sq = factor_inner(ny, ny, spec.c2)
    C = C1sq - C2sq
    if abs(C) >= 1.0 - C_limit:
        raise SingularLevelError(f"|C| = {abs(C):.12g}: adapted frame degenerates")
    N = np.concatenate([nx, ny])
    V = np.concatenate([nx, -ny]) - C * N
    V /= math.sqrt(1.0 - C * C)
    k = spec.n + 1
    Bx = _factor_basis(x, spec.c1)
    By = _factor_basis(y, spec.c2)
    wx = metric_weights(spec)[:k]
    wy = metric_weights(spec)[k:]
    cx = Bx.T @ (wx * nx)
    cy = By.T @ (wy * ny)
    Hx = Bx @ null_space(cx[None, :])
    Vy = By @ null_space(cy[None, :])
    hor = np.zeros((k + spec.m + 1, Hx.shape[1]))
    hor[:k] = Hx
    ver = np.zeros((k + spec.m + 1, Vy.shape[1]))
    ver[k:] = Vy
    return {
        "C": C,
        "C1": math.sqrt(max(C1sq, 0.0)),
        "C2": math.sqrt(max(C2sq, 0.0)),
        "V": V,
        "hor": hor,
        "ver": ver,
        "N": N,
    }


@dataclass
class SliceBlocks:
    """Diagonal blocks of ``A`` in the adapted frame."""

    horizontal: np.ndarray  # eigenvalues lambda_i of the horizontal block
    vertical: np.ndarray  # eigenvalues mu_alpha of the vertical block
    mixing: float  # Frobenius norm of the horizontal/vertical block
    C: float
    C1: float
    C2: float
    av: float  # |A V| in the same frame
    trace: float


def slice_blocks_xy(fam: Family, x, y, normal_sign: float = 1.0) -> SliceBlocks:
    fr = adapted_frame_xy(fam, x, y)
    E = np.column_stack([fr["V"], fr["hor"], fr["ver"]])
    S, _, _ = shape_matrix_xy(fam, x, y, E, normal_sign=normal_sign)
    nh = fr["hor"].shape[1]
    Ahh = S[1:1 + nh, 1:1 + nh]
    Avv = S[1 + nh:, 1 + nh:]
    sig = S[1:1 + nh, 1 + nh:]
    return SliceBlocks(
        np.linalg.eigvalsh(Ahh) if nh else np.zeros(0),
        np.linalg.eigvalsh(Avv) if Avv.size else np.zeros(0),
        float(np.linalg.norm(sig)),
        fr["C"], fr["C1"], fr["C2"],
        float(np.linalg.norm(S[:, 0])),
        float(np.trace(S)),
    )


def slice_blocks(fam: Family, p: ProductPoint) -> SliceBlocks:
    """Horizontal and vertical block spectra of ``A`` plus the mixing norm.

    Raises
    ------
    SingularLevelError
        When ``|C| >= 1 - 1e-8``.
    """
    return slice_blocks_xy(fam, p.x.coords, p.y.coords)


def rigidity_from_blocks(C, c1, c2, n, m, lam, mu) -> float:
    """``|LHS - RHS|`` of the rigidity identity from block spectra.

    ``(1-C)^2 (c1 C1^2 (n-1) + sum lam^2) = (1+C)^2 (c2 C2^2 (m-1) + sum mu^2)``
    with ``C1^2 = (1+C)/2`` and ``C2^2 = (1-C)/2``.
    """
    C1sq = (1.0 + C) / 2.0
    C2sq = (1.0 - C) / 2.0
    lhs = (1.0 - C) ** 2 * (c1 * C1sq * (n - 1) + float(np.sum(np.square(lam))))
    rhs = (1.0 + C) ** 2 * (c2 * C2sq * (m - 1) + float(np.sum(np.square(mu))))
    return abs(lhs - rhs)


def rigidity_xy(fam: Family, x, y) -> float:
    b = slice_blocks_xy(fam, x, y)
    s = fam.spec
    return rigidity_from_blocks(b.C, s.c1, s.c2, s.n, s.m, b.horizontal, b.vertical)


def rigidity_residual(fam: Family, p: ProductPoint) -> float:
    """Residual of the rigidity identity at ``p``."""
    return rigidity_xy(fam, p.x.coords, p.y.coords)


# ---------------------------------------------------------------------------
# curvature via the Gauss equation
@dataclass
class CurvatureScalars:
    """Mean curvature (plain trace), scalar curvature and Ricci spectrum."""

    H: float
    R: float
    ric_eigenvalues: list
    ricci_matrix: Optional[np.ndarray] = None


def curvature_xy(fam: Family, x, y, cluster_tol: float = 1e-6) -> CurvatureScalars:
    spec = fam.spec
    S, E, _ = shape_matrix_xy(fam, x, y)
    k = spec.n + 1
    w = metric_weights(spec)
    Eh, Ev = E[:k], E[k:]
    Gh = Eh.T @ (w[:k, None] * Eh)
    Gv = Ev.T @ (w[k:, None] * Ev)
    amb = spec.c1 * (np.trace(Gh) * Gh - Gh @ Gh) + spec.c2 * (np.trace(Gv) * Gv - Gv @ Gv)
    H = float(np.trace(S))
    Ric = amb + H * S - S @ S
    Ric = 0.5 * (Ric + Ric.T)
    ev = np.linalg.eigvalsh(Ric)
    clusters, _ = cluster_values(ev, cluster_tol)
    return CurvatureScalars(H, float(np.trace(Ric)), clusters, Ric)


def curvature_scalars(fam: Family, p: ProductPoint, cluster_tol: float = 1e-6) -> CurvatureScalars:
    """Mean, scalar and Ricci curvature of the level set through ``p``."""
    return curvature_xy(fam, p.x.coords, p.y.coords, cluster_tol)


# ---------------------------------------------------------------------------
# level projection and the isoparametric check
def project_to_level(fam: Family, x, y, t: float, tol: float = 1e-12, max_iter: int = 50):
    """Newton iteration along ``grad F`` onto ``F = t``.

    Each step moves along the product geodesic in the gradient direction by
    ``(t - F) / |grad F|^2``.
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    spec = fam.spec
    for _ in range(max_iter):
        F, dx, dy = fam.grad(x, y)
        if abs(F - t) <= tol:
            return x, y
        gx = _factor_grad(x, dx, spec.c1)
        gy = _factor_grad(y, dy, spec.c2)
        g2 = _grad_norm2(fam, x, y, gx, gy)
        if g2 < SINGULAR_GRAD ** 2:
            raise RuntimeError("Newton projection hit a singular level")
        step = (t - F) / g2
        x, y = product_exp_xy(spec, x, y, gx, gy, step)
    F = fam.value(x, y)
    if abs(F - t) <= tol:
        return x, y
    raise RuntimeError(f"Newton projection did not converge (|F - t| = {abs(F - t):.3g})")


@dataclass
class IsoReport:
    """Max residuals of the isoparametric identities over a sample."""

    samples: int
    grad_residual: float
    lap_residual: float
    fd_residual: float
    derived_lap_residual: float
    level_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.grad_residual, self.lap_residual)


def check_isoparametric(fam: Family, samples: int = 1000, seed: int = 42, tol: float = 1e-9,
                        fd_step: float = 1e-5) -> IsoReport:
    """Residuals of ``|grad F|^2 = b(F)`` and ``Lap F = a(F)`` on seeded samples.

    ``lap_residual`` tests the closed-form Laplacian law and
    ``derived_lap_residual`` the one from :meth:`Family.a_derived`.

    Sample ``i`` uses the random stream ``(seed, i)``.  The Riemannian
    gradient is also compared with central differences of ``F`` along a
    random unit geodesic direction (``fd_residual``).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    spec = fam.spec
    k = spec.n + 1
    g_res = l_res = fd_res = dl_res = lev_res = 0.0
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        x, y = fam.sample_level(rng)
        F, gx, gy, lap = evaluate_xy(fam, x, y)
        g2 = _grad_norm2(fam, x, y, gx, gy)
        g_res = max(g_res, abs(g2 - fam.b(F)))
        l_res = max(l_res, abs(lap - fam.a(F)))
        dl_res = max(dl_res, abs(lap - fam.a_derived(F, x, y)))
        lev_res = max(lev_res, abs(F - fam.level))
        T = tangent_basis_xy(spec, x, y)
        c = rng.standard_normal(T.shape[1])
        v = T @ (c / np.linalg.norm(c))
        xp, yp = product_exp_xy(spec, x, y, v[:k], v[k:], fd_step)
        xm, ym = product_exp_xy(spec, x, y, v[:k], v[k:], -fd_step)
        fd = (fam.value(xp, yp) - fam.value(xm, ym)) / (2 * fd_step)
        w = metric_weights(spec)
        exact = float(np.dot(w * np.concatenate([gx, gy]), v))
        fd_res = max(fd_res, abs(fd - exact))
    return IsoReport(samples, g_res, l_res, fd_res, dl_res, lev_res)
