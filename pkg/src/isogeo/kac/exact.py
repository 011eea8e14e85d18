"""Exact dense linear algebra over commutative rings.

Matrices are lists of row lists whose entries are ``int``,
:class:`~fractions.Fraction` or :class:`~isogeo.kac.bipoly.BiPoly`.
Determinants and characteristic polynomials use Berkowitz's
division-free algorithm; ranks over Q use fraction-free (Bareiss)
elimination on integer-scaled rows.
"""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "zeros",
    "identity",
    "matmul",
    "vecmat",
    "kron",
    "block",
    "mat_eval",
    "berkowitz",
    "det",
    "bareiss_rank",
    "bareiss_det",
    "is_zero",
]


def is_zero(v) -> bool:
    return not v


def zeros(r: int, c: int):
    return [[0] * c for _ in range(r)]


def identity(n: int):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = 1
    return M


def _add(a, b):
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return a + b


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = zeros(n, m)
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if is_zero(a):
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if not is_zero(b):
                    row[j] = _add(row[j], a * b)
    return out


def vecmat(v, A):
    """Row vector times matrix, skipping zero entries."""
    m = len(A[0]) if A else 0
    out = [0] * m
    for t, a in enumerate(v):
        if is_zero(a):
            continue
        for j, b in enumerate(A[t]):
            if not is_zero(b):
                out[j] = _add(out[j], a * b)
    return out


def kron(A, B):
    ra, ca, rb, cb = len(A), len(A[0]), len(B), len(B[0])
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if is_zero(a):
                continue
            for k in range(rb):
                for l in range(cb):
                    b = B[k][l]
                    if not is_zero(b):
                        out[i * rb + k][j * cb + l] = a * b
    return out


def block(rows):
    """Assemble a block matrix from a nested list of equally shaped blocks."""
    out = []
    for brow in rows:
        for r in range(len(brow[0])):
            line = []
            for B in brow:
                line.extend(B[r])
            out.append(line)
    return out


def mat_eval(A, tau1, tau2):
    """Entrywise exact evaluation of a polynomial matrix."""
    from .bipoly import poly_eval

    return [[poly_eval(v, tau1, tau2) for v in row] for row in A]


def berkowitz(A):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x I - A)`` (highest power first).

    Division-free, so valid over any commutative ring.
    """
    n = len(A)
    if n == 0:
        return [1]
    p = [1, -A[0][0]]
    for k in range(1, n):
        # leading (k+1) x (k+1) block: A_k (k x k), row R, column Cc, corner a
        a = A[k][k]
        R = A[k][:k]
        Cc = [A[i][k] for i in range(k)]
        Ak = [row[:k] for row in A[:k]]
        # first column of the Toeplitz matrix: 1, -a, -R C, -R A C, ...
        col = [1, -a]
        v = Cc
        for _ in range(k):
            s = 0
            for r, x in zip(R, v):
                if not is_zero(r) and not is_zero(x):
                    s = _add(s, r * x)
            col.append(-s)
            v = [
                _sum_products(Ak[i], v)
                for i in range(k)
            ]
        # p_new = T p, with T lower-triangular Toeplitz of size (k+2) x (k+1)
        newp = []
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                c = col[i - j]
                if not is_zero(c) and not is_zero(p[j]):
                    s = _add(s, c * p[j])
            newp.append(s)
        p = newp
    return p


def _sum_products(row, v):
    s = 0
    for r, x in zip(row, v):
        if not is_zero(r) and not is_zero(x):
            s = _add(s, r * x)
    return s


def det(A):
    """Determinant via :func:`berkowitz` (works for polynomial entries)."""
    n = len(A)
    c = berkowitz(A)[-1]
    return c if n % 2 == 0 else -c


def _integer_rows(rows):
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        L = 1
        for v in fr:
            L = L * v.denominator // math.gcd(L, v.denominator)
        out.append([int(v * L) for v in fr])
    return out


def bareiss_rank(rows) -> int:
    """Exact rank of a rational matrix by fraction-free elimination."""
    if not rows:
        return 0
    M = _integer_rows(rows)
    nr, nc = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pv = M[rank][col]
        prow = M[rank]
        for r in range(rank + 1, nr):
            row = M[r]
            f = row[col]
            for c in range(col + 1, nc):
                q, rem = divmod(row[c] * pv - f * prow[c], prev)
                if rem:
                    raise ArithmeticError("Bareiss division was not exact")
                row[c] = q
            row[col] = 0
        prev = pv
        rank += 1
        if rank == nr:
            break
    return rank


def bareiss_det(A) -> Fraction:
    """Exact determinant of a square rational matrix (fraction-free)."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    M = []
    for row in A:
        fr = [Fraction(v) for v in row]
        L = 1
        for v in fr:
            L = L * v.denominator // math.gcd(L, v.denominator)
        scale /= L
        M.append([int(v * L) for v in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pv = M[k][k]
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                M[r][c] = (M[r][c] * pv - M[r][k] * M[k][c]) // prev
            M[r][k] = 0
        prev = pv
    return sign * M[n - 1][n - 1] * scale
