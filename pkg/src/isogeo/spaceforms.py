"""Geometry of the factors S^n and H^m and of their Riemannian product.

The sphere S^n is the unit sphere of R^{n+1}.  The hyperbolic space H^m is
the upper sheet of the hyperboloid ``<y, y>_L = -1`` in Lorentz space
R^{1,m}, with ``<u, v>_L = -u_0 v_0 + sum_i u_i v_i``.

A point of the product is stored as a pair of ambient coordinate vectors.
Most of the heavy numerical work in :mod:`isogeo.catalog` and
:mod:`isogeo.flows` runs on raw numpy arrays; the small frozen dataclasses
here are the public, validated surface.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "FactorPoint",
    "ProductPoint",
    "TangentVec",
    "LightVec",
    "AmbientSpec",
    "lorentz_inner",
    "factor_inner",
    "factor_norm",
    "factor_project",
    "factor_renormalize",
    "factor_exp",
    "product_structure",
    "product_inner",
    "tangent_project",
    "sample_point",
]

FACTOR_TOL = 1e-12
TANGENT_TOL = 1e-10


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def lorentz_inner(u, v) -> float:
    """Lorentz inner product ``-u_0 v_0 + sum_{i>=1} u_i v_i``.

    Parameters
    ----------
    u, v : array_like
        Vectors of equal length at least 2.

    Returns
    -------
    float

    Raises
    ------
    ValueError
        If the lengths differ or are below 2.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1 or u.shape[0] < 2:
        raise ValueError(f"lorentz_inner needs two vectors of equal length >= 2, got {u.shape} and {v.shape}")
    return float(-u[0] * v[0] + u[1:] @ v[1:])


def factor_inner(u, v, c: int) -> float:
    """Inner product of the ambient space of a factor of curvature ``c``."""
    if c == 1:
        return float(np.dot(u, v))
    return float(-u[0] * v[0] + np.dot(u[1:], v[1:]))


def factor_norm(v, c: int) -> float:
    """Norm of a tangent vector of a factor (Lorentz norm on H^m)."""
    q = factor_inner(v, v, c)
    return float(np.sqrt(max(q, 0.0)))


def factor_project(p, a, c: int) -> np.ndarray:
    """Orthogonal projection of an ambient vector onto ``T_p`` of a factor.

    On the sphere this is ``a - <a, p> p``; on the hyperboloid, where
    ``<p, p>_L = -1``, it is ``a + <a, p>_L p``.
    """
    p = np.asarray(p, dtype=float)
    a = np.asarray(a, dtype=float)
    if c == 1:
        return a - np.dot(a, p) * p
    return a + factor_inner(a, p, -1) * p


def factor_renormalize(p, c: int) -> np.ndarray:
    """Pull a nearby ambient vector back onto the quadric of a factor."""
    p = np.asarray(p, dtype=float)
    if c == 1:
        return p / np.linalg.norm(p)
    # keep the spatial part, recompute the time coordinate on the upper sheet
    q = p.copy()
    q[0] = np.sqrt(1.0 + np.dot(p[1:], p[1:]))
    return q


@dataclass(frozen=True)
class FactorPoint:
    """A point of S^n (``curvature_sign=+1``) or H^n (``curvature_sign=-1``)."""

    coords: np.ndarray
    curvature_sign: int

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen(self.coords))
        c = self.curvature_sign
        if c not in (1, -1):
            raise ValueError("curvature_sign must be +1 or -1")
        q = factor_inner(self.coords, self.coords, c)
        if c == 1 and abs(q - 1.0) > FACTOR_TOL * 10:
            raise ValueError(f"sphere point has |x|^2 = {q!r}")
        if c == -1 and (abs(q + 1.0) > FACTOR_TOL * max(1.0, self.coords[0] ** 2) * 10 or self.coords[0] < 1.0 - 1e-12):
            raise ValueError(f"hyperboloid point has <y,y>_L = {q!r}, y_0 = {self.coords[0]!r}")

    @property
    def dim(self) -> int:
        return self.coords.shape[0] - 1


@dataclass(frozen=True)
class ProductPoint:
    """A point ``(x, y)`` of ``M^n_{c1} x M^m_{c2}``."""

    x: FactorPoint
    y: FactorPoint

    @classmethod
    def from_arrays(cls, x, y, c1: int = 1, c2: int = 1) -> "ProductPoint":
        return cls(FactorPoint(x, c1), FactorPoint(y, c2))

    @property
    def c1(self) -> int:
        return self.x.curvature_sign

    @property
    def c2(self) -> int:
        return self.y.curvature_sign

    @property
    def n(self) -> int:
        return self.x.dim

    @property
    def m(self) -> int:
        return self.y.dim


@dataclass(frozen=True)
class TangentVec:
    """Tangent vector ``(v1, v2)`` at a product point, split horizontally/vertically."""

    v1: np.ndarray
    v2: np.ndarray
    base: ProductPoint

    def __post_init__(self):
        object.__setattr__(self, "v1", _frozen(self.v1))
        object.__setattr__(self, "v2", _frozen(self.v2))
        b = self.base
        r1 = abs(factor_inner(self.v1, b.x.coords, b.c1))
        r2 = abs(factor_inner(self.v2, b.y.coords, b.c2))
        scale = 1.0 + float(np.max(np.abs(np.concatenate([self.v1, self.v2])), initial=0.0))
        if max(r1, r2) > TANGENT_TOL * scale * max(1.0, abs(b.y.coords[0])):
            raise ValueError(f"vector is not tangent (residuals {r1:.3g}, {r2:.3g})")

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.v1, self.v2])


@dataclass(frozen=True)
class LightVec:
    """Future lightlike vector ``u = (1, w)`` with Euclidean ``|w| = 1``."""

    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", _frozen(self.u))
        if self.u[0] <= 0:
            raise ValueError("lightlike vector must have u_0 > 0")
        if abs(lorentz_inner(self.u, self.u)) > 1e-12 * self.u[0] ** 2:
            raise ValueError("vector is not lightlike")

    @classmethod
    def from_direction(cls, w) -> "LightVec":
        """Build ``(1, w/|w|)``; axis-aligned ``w`` gives an exactly null vector."""
        w = np.asarray(w, dtype=float)
        return cls(np.concatenate([[1.0], w / np.linalg.norm(w)]))


@dataclass(frozen=True)
class AmbientSpec:
    """Dimensions and curvature signs of a product ``M^n_{c1} x M^m_{c2}``."""

    n: int
    c1: int
    m: int
    c2: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("factor dimensions must be >= 1")
        if self.c1 not in (1, -1) or self.c2 not in (1, -1):
            raise ValueError("curvature signs must be +1 or -1")


def _exp_raw(p: np.ndarray, v: np.ndarray, t: float, c: int) -> np.ndarray:
    nv = factor_norm(v, c)
    if nv == 0.0:
        return p.copy()
    s = nv * t
    if c == 1:
        q = np.cos(s) * p + np.sin(s) * (v / nv)
    else:
        q = np.cosh(s) * p + np.sinh(s) * (v / nv)
    return factor_renormalize(q, c)


def factor_exp(p: FactorPoint, v, t: float) -> FactorPoint:
    """Exponential map of a factor, ``exp_p(t v)``.

    Parameters
    ----------
    p : FactorPoint
    v : array_like
        Tangent vector at ``p`` (ambient coordinates).
    t : float

    Returns
    -------
    FactorPoint
        ``cos(|v|t) p + sin(|v|t) v/|v|`` on the sphere, the hyperbolic
        analogue on the hyperboloid.  A zero vector returns ``p``.
    """
    v = np.asarray(v, dtype=float)
    return FactorPoint(_exp_raw(p.coords, v, t, p.curvature_sign), p.curvature_sign)


def product_structure(v: TangentVec) -> TangentVec:
    """The product structure ``P(v1, v2) = (v1, -v2)``."""
    return TangentVec(v.v1, -v.v2, v.base)


def product_inner(v: TangentVec, w: TangentVec) -> float:
    """Product metric on tangent vectors at the same base point."""
    b = v.base
    return factor_inner(v.v1, w.v1, b.c1) + factor_inner(v.v2, w.v2, b.c2)


def tangent_project(p: ProductPoint, a1, a2) -> TangentVec:
    """Project an ambient pair ``(a1, a2)`` onto ``T_p`` factorwise."""
    v1 = factor_project(p.x.coords, a1, p.c1)
    v2 = factor_project(p.y.coords, a2, p.c2)
    return TangentVec(v1, v2, p)


def _sample_factor(rng: np.random.Generator, dim: int, c: int) -> np.ndarray:
    if c == 1:
        z = rng.standard_normal(dim + 1)
        return z / np.linalg.norm(z)
    o = np.zeros(dim + 1)
    o[0] = 1.0
    d = np.zeros(dim + 1)
    d[1:] = rng.standard_normal(dim)
    d /= np.linalg.norm(d)
    r = rng.standard_normal()
    return _exp_raw(o, d, r, -1)


def sample_point(spec: AmbientSpec, seed: int | Sequence[int]) -> ProductPoint:
    """Seeded random point of the product.

    Sphere factors use a normalized Gaussian; hyperbolic factors move from
    ``(1, 0, ..., 0)`` along a random unit direction by a Gaussian radius.
    ``seed`` may be a sequence such as ``(master_seed, index)`` so that
    per-sample streams do not depend on scheduling.
    """
    rng = np.random.default_rng(seed)
    x = _sample_factor(rng, spec.n, spec.c1)
    y = _sample_factor(rng, spec.m, spec.c2)
    return ProductPoint.from_arrays(x, y, spec.c1, spec.c2)
