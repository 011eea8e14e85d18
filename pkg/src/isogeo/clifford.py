"""Clifford representations with integer entries and the OT-FKM function.

A skew system is a list ``E_1, ..., E_{p-1}`` of real ``l x l`` matrices
with ``E_a E_b + E_b E_a = -2 delta_ab I``.  The associated symmetric system
on ``R^{2l}`` is

    P_0 = [[I, 0], [0, -I]],   P_1 = [[0, I], [I, 0]],
    P_{1+a} = [[0, E_a], [-E_a, 0]]   (a = 1, ..., p-1).

Construction
------------
Irreducible skew systems for ``p <= 9`` are built from tensor words over the
2x2 signed permutation matrices ``I, S1 = [[0,1],[1,0]], S3 = diag(1,-1)``
and ``J = [[0,-1],[1,0]]``.  A word is skew exactly when it contains an odd
number of ``J`` factors, and two words anticommute exactly when they differ
by distinct non-identity letters in an odd number of slots.  A deterministic
depth-first search picks the lexicographically first family of the required
size.  For ``p > 9`` the mod-8 periodicity is applied:  if ``F_1..F_8`` act
on ``R^16`` with volume element ``w = F_1...F_8`` and ``E_1..E_q`` act on
``R^N``, then ``F_a (x) I_N`` together with ``w (x) E_i`` form ``8 + q``
anticommuting skew matrices on ``R^{16N}``.

Reducible systems (``k > 1``) are block-diagonal sums of ``k`` copies.
All arithmetic is on Python/numpy integers, so verification is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional

import numpy as np

__all__ = [
    "CliffordSystem",
    "RelationCheck",
    "delta",
    "gen_system",
    "verify_system",
    "symmetric_system",
    "otfkm_restricted_f",
    "otfkm_ambient",
    "system_to_json",
    "system_from_json",
]

_DELTA = {1: 1, 2: 2, 3: 4, 4: 4, 5: 8, 6: 8, 7: 8, 8: 8}

_I2 = np.array([[1, 0], [0, 1]], dtype=np.int64)
_S1 = np.array([[0, 1], [1, 0]], dtype=np.int64)
_S3 = np.array([[1, 0], [0, -1]], dtype=np.int64)
_J2 = np.array([[0, -1], [1, 0]], dtype=np.int64)
_LETTERS = (_I2, _S1, _S3, _J2)


def delta(p: int) -> int:
    """Dimension of the irreducible skew Clifford module with ``p-1`` generators.

    >>> [delta(p) for p in range(1, 10)]
    [1, 2, 4, 4, 8, 8, 8, 8, 16]
    """
    if not isinstance(p, (int, np.integer)) or p < 1:
        raise ValueError(f"delta(p) needs an integer p >= 1, got {p!r}")
    p = int(p)
    scale = 1
    while p > 8:
        p -= 8
        scale *= 16
    return scale * _DELTA[p]


@dataclass(frozen=True)
class CliffordSystem:
    """Skew Clifford system on ``R^l``, optionally with its symmetric system.

    Attributes
    ----------
    p : int
        Number of symmetric matrices minus one; there are ``p-1`` skew ones.
    l : int
        Order of the skew matrices, ``l = k * delta(p)``.
    E : tuple of ndarray
        Skew matrices (integer dtype).
    P : tuple of ndarray or None
        Symmetric matrices ``P_0..P_p`` of order ``2l``.
    k : int
        Number of irreducible summands (``l // delta(p)``).
    """

    p: int
    l: int
    E: tuple
    P: Optional[tuple] = None
    k: int = field(default=0)

    def __post_init__(self):
        if self.k == 0:
            object.__setattr__(self, "k", self.l // delta(self.p))

    def float_E(self) -> np.ndarray:
        """All skew matrices stacked as a float array of shape (p-1, l, l)."""
        if not self.E:
            return np.zeros((0, self.l, self.l))
        return np.array(self.E, dtype=float)


def _word_matrix(word) -> np.ndarray:
    m = np.array([[1]], dtype=np.int64)
    for letter in word:
        m = np.kron(m, _LETTERS[letter])
    return m


def _anticommute(w1, w2) -> bool:
    clash = sum(1 for a, b in zip(w1, w2) if a and b and a != b)
    return clash % 2 == 1


@lru_cache(maxsize=None)
def _tensor_family(r: int, q: int) -> tuple:
    """First (lexicographic) family of ``q`` anticommuting skew words of length ``r``."""
    words = [w for w in product(range(4), repeat=r) if sum(1 for a in w if a == 3) % 2 == 1]
    chosen: list = []

    def dfs(start: int) -> bool:
        if len(chosen) == q:
            return True
        for i in range(start, len(words)):
            w = words[i]
            if all(_anticommute(w, c) for c in chosen):
                chosen.append(w)
                if dfs(i + 1):
                    return True
                chosen.pop()
        return False

    if not dfs(0):
        raise RuntimeError(f"no family of {q} anticommuting skew words of length {r}")
    return tuple(chosen)


@lru_cache(maxsize=None)
def _irreducible(p: int) -> tuple:
    """Irreducible skew system with ``p-1`` matrices on ``R^{delta(p)}``."""
    d = delta(p)
    if p == 1:
        return ()
    if p <= 9:
        r = d.bit_length() - 1
        return tuple(_word_matrix(w) for w in _tensor_family(r, p - 1))
    base8 = _irreducible(9)
    vol = base8[0]
    for F in base8[1:]:
        vol = vol @ F
    inner = _irreducible(p - 8)
    n_inner = delta(p - 8)
    mats = [np.kron(F, np.eye(n_inner, dtype=np.int64)) for F in base8]
    mats += [np.kron(vol, E) for E in inner]
    return tuple(mats)


def symmetric_system(E, l: int) -> tuple:
    """Assemble ``P_0, ..., P_p`` on ``R^{2l}`` from a skew system ``E``."""
    I = np.eye(l, dtype=np.int64)
    Z = np.zeros((l, l), dtype=np.int64)
    P = [np.block([[I, Z], [Z, -I]]), np.block([[Z, I], [I, Z]])]
    for Ea in E:
        Ea = np.asarray(Ea, dtype=np.int64)
        P.append(np.block([[Z, Ea], [-Ea, Z]]))
    return tuple(P)


def gen_system(p: int, k: int = 1, with_P: bool = True) -> CliffordSystem:
    """Generate a Clifford system with ``l = k * delta(p)``.

    Parameters
    ----------
    p : int
        ``p >= 1``; the skew system has ``p-1`` matrices.
    k : int
        Number of irreducible copies (block-diagonal sum).
    with_P : bool
        Also assemble the symmetric system on ``R^{2l}``.

    Returns
    -------
    CliffordSystem
        Entries in {-1, 0, 1}.
    """
    if p < 1 or k < 1:
        raise ValueError("gen_system needs p >= 1 and k >= 1")
    base = _irreducible(p)
    d = delta(p)
    l = k * d
    E = []
    for Eb in base:
        M = np.zeros((l, l), dtype=np.int64)
        for c in range(k):
            M[c * d:(c + 1) * d, c * d:(c + 1) * d] = Eb
        M.setflags(write=False)
        E.append(M)
    P = symmetric_system(E, l) if with_P else None
    return CliffordSystem(p=p, l=l, E=tuple(E), P=P, k=k)


@dataclass
class RelationCheck:
    """Outcome of one invariant in :func:`verify_system`."""

    name: str
    passed: bool
    first_violation: Optional[tuple] = None

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "first_violation": self.first_violation}


def _exact(mats, size: int) -> list:
    """Integer copies of ``mats`` in a dtype whose products cannot overflow.

    int64 is used whenever ``size * max|entry|^2`` stays far below 2^62,
    which is always the case for generated systems (entries in {-1, 0, 1});
    otherwise Python integers (object dtype) are used.
    """
    mats = [np.asarray(A) for A in mats]
    if any(not np.issubdtype(A.dtype, np.integer) for A in mats):
        if not all(np.array_equal(A, np.round(A)) for A in mats):
            raise ValueError("Clifford matrices must have integer entries")
    bound = max((int(np.max(np.abs(A))) for A in mats if A.size), default=0)
    dtype = np.int64 if size * bound * bound < 2 ** 60 else object
    return [A.astype(dtype) for A in mats]


def _first_bad_pair(mats, target_sign: int, size: int):
    M = _exact(mats, size)
    I = np.eye(size, dtype=M[0].dtype if M else np.int64)
    for a in range(len(M)):
        for b in range(a, len(M)):
            lhs = M[a].dot(M[b]) + M[b].dot(M[a])
            rhs = 2 * target_sign * I if a == b else 0 * I
            if not np.array_equal(lhs, rhs):
                return (a, b)
    return None


def verify_system(sys: CliffordSystem) -> list:
    """Check every Clifford invariant exactly.

    The skew matrices are indexed from 1 (``E_1..E_{p-1}``) and the
    symmetric ones from 0 (``P_0..P_p``) in the reported violations.

    Returns
    -------
    list of RelationCheck
    """
    out = []
    l = sys.l
    E = _exact(sys.E, l)
    Il = np.eye(l, dtype=E[0].dtype if E else np.int64)
    out.append(RelationCheck("E_count", len(E) == sys.p - 1, None if len(E) == sys.p - 1 else (len(E), sys.p - 1)))
    bad = next(((a + 1,) for a, A in enumerate(E) if not np.array_equal(A.T, -A)), None)
    out.append(RelationCheck("E_skew", bad is None, bad))
    bad = next(((a + 1,) for a, A in enumerate(E) if not np.array_equal(A.T.dot(A), Il)), None)
    out.append(RelationCheck("E_orthogonal", bad is None, bad))
    bad = _first_bad_pair(E, -1, l)
    out.append(RelationCheck("E_anticommute", bad is None, None if bad is None else (bad[0] + 1, bad[1] + 1)))
    if sys.P is not None:
        size = 2 * l
        P = _exact(sys.P, size)
        I2l = np.eye(size, dtype=P[0].dtype if P else np.int64)
        ok_count = len(P) == sys.p + 1
        out.append(RelationCheck("P_count", ok_count, None if ok_count else (len(P), sys.p + 1)))
        bad = next(((a,) for a, A in enumerate(P) if not np.array_equal(A.T, A)), None)
        out.append(RelationCheck("P_symmetric", bad is None, bad))
        bad = next(((a,) for a, A in enumerate(P) if not np.array_equal(A.T.dot(A), I2l)), None)
        out.append(RelationCheck("P_orthogonal", bad is None, bad))
        bad = _first_bad_pair(P, 1, size)
        out.append(RelationCheck("P_clifford_relation", bad is None, bad))
        canon = symmetric_system([], l)
        bad = next(((a,) for a in range(min(2, len(P))) if not np.array_equal(P[a], canon[a])), None)
        out.append(RelationCheck("P_canonical_blocks", bad is None, bad))
    return out


def _check_xy(sys: CliffordSystem, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (sys.l,) or y.shape != (sys.l,):
        raise ValueError(f"x and y must have length l = {sys.l}")
    return x, y


def otfkm_restricted_f(sys: CliffordSystem, x, y) -> float:
    """``<x, y>^2 + sum_a <E_a x, y>^2`` for unit vectors ``x, y`` in R^l."""
    x, y = _check_xy(sys, x, y)
    Ex = sys.float_E() @ x
    return float(np.dot(x, y) ** 2 + np.sum((Ex @ y) ** 2))


def otfkm_ambient(sys: CliffordSystem, z) -> float:
    """Full OT-FKM polynomial ``|Z|^4 - 2 sum_a <P_a Z, Z>^2`` on R^{2l}."""
    if sys.P is None:
        P = symmetric_system(sys.E, sys.l)
    else:
        P = sys.P
    z = np.asarray(z, dtype=float)
    s = sum(float(z @ (np.asarray(Pa, dtype=float) @ z)) ** 2 for Pa in P)
    return float(np.dot(z, z) ** 2 - 2.0 * s)


def system_to_json(sys: CliffordSystem, include_P: bool = True) -> str:
    """Serialize as JSON ``{p, k, l, E, P}`` with row-major integer lists."""
    obj = {
        "p": sys.p,
        "k": sys.k,
        "l": sys.l,
        "E": [np.asarray(A).astype(int).tolist() for A in sys.E],
    }
    if include_P and sys.P is not None:
        obj["P"] = [np.asarray(A).astype(int).tolist() for A in sys.P]
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def system_from_json(text: str) -> CliffordSystem:
    """Inverse of :func:`system_to_json`.  No relations are checked here."""
    obj = json.loads(text)
    E = tuple(np.array(A, dtype=np.int64) for A in obj["E"])
    P = tuple(np.array(A, dtype=np.int64) for A in obj["P"]) if obj.get("P") is not None else None
    l = int(obj["l"])
    return CliffordSystem(p=int(obj["p"]), l=l, E=E, P=P, k=int(obj.get("k", 0)))
