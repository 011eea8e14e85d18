"""Minimal quaternion arithmetic for the field families.

Vectors of ``F^{k}`` (F = R, C, H with real dimension d = 1, 2, 4) are
stored as real arrays of length ``k d``.  Internally they are lifted to
quaternion arrays of shape ``(k, 4)``; C sits inside H as ``span{1, i}``,
so all products stay in the subalgebra.

Conventions: ``<x, y>_F = sum_i conj(x_i) y_i``; scalars multiply vectors
on the right; F-linear maps act on the left.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "qmul",
    "conj",
    "to_quat",
    "from_quat",
    "finner",
    "rmul",
    "right_matrix",
    "right_units",
    "unit_sqrt",
    "embed_scalar",
]


def qmul(a, b) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def conj(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a[..., 1:] *= -1.0
    return a


def to_quat(v, d: int) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1, d)
    out = np.zeros((v.shape[0], 4))
    out[:, :d] = v
    return out


def from_quat(Q, d: int) -> np.ndarray:
    return np.asarray(Q)[:, :d].reshape(-1).copy()


def embed_scalar(a, d: int) -> np.ndarray:
    out = np.zeros(4)
    out[:d] = np.asarray(a, dtype=float)[:d]
    return out


def finner(X, Y) -> np.ndarray:
    """``sum_i conj(X_i) Y_i`` for quaternion arrays of shape (k, 4)."""
    return qmul(conj(X), Y).sum(axis=0)


def rmul(X, q) -> np.ndarray:
    """Right multiplication of every entry of ``X`` by the scalar ``q``."""
    return qmul(X, np.broadcast_to(q, X.shape))


def right_matrix(q, d: int) -> np.ndarray:
    """Real ``d x d`` matrix of ``v -> v q`` on the field F."""
    a, b, c, e = np.asarray(q, dtype=float)
    R = np.array([[a, -b, -c, -e], [b, a, e, -c], [c, -e, a, b], [e, c, -b, a]])
    return R[:d, :d]


def right_units(field: str, blocks: int) -> list:
    """Right multiplication by the imaginary units, block diagonal on F^blocks."""
    d = {"R": 1, "C": 2, "H": 4}[field]
    units = [np.eye(4)[k] for k in range(1, d)]
    return [np.kron(np.eye(blocks), right_matrix(q, d)) for q in units]


def unit_sqrt(q) -> np.ndarray:
    """A square root of a unit quaternion that stays in span{1, i} when possible.

    For ``q = -1`` the root ``i`` is returned.
    """
    q = np.asarray(q, dtype=float)
    q = q / np.linalg.norm(q)
    vec = q[1:]
    nv = np.linalg.norm(vec)
    if nv < 1e-15:
        if q[0] > 0:
            return np.array([1.0, 0.0, 0.0, 0.0])
        return np.array([0.0, 1.0, 0.0, 0.0])
    ang = np.arctan2(nv, q[0])
    half = 0.5 * ang
    return np.concatenate([[np.cos(half)], np.sin(half) * vec / nv])
