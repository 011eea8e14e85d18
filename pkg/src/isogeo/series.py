"""Exact Laurent series for the slice-curvature rigidity identity.

The slices of an isoparametric hypersurface with constant angle function
are isoparametric in the spheres, so their principal curvatures are
``cot(theta + k pi / g)``.  Moving along the family, the two slice angles
advance as ``s / C1`` and ``s / C2``; the rigidity identity then becomes an
identity between two even Laurent series in ``s``.  Everything here is
exact over :class:`fractions.Fraction`: the squared scales
``C1^2 = (1 + C)/2`` and ``C2^2 = (1 - C)/2`` are rational whenever ``C``
is, and only even powers of ``C1``, ``C2`` ever appear.

The trigonometric coefficients come from Bernoulli numbers::

    csc^2 x = x^-2 + sum_{k>=1} 2^{2k} |B_2k| (2k-1) / (2k)! x^{2k-2}
    sec^2 x =        sum_{k>=1} 2^{2k} (2^{2k}-1) |B_2k| (2k-1) / (2k)! x^{2k-2}

with ``cot^2 = csc^2 - 1``, ``tan^2 = sec^2 - 1`` and
``cot^2 y + tan^2 y = 4 csc^2(2y) - 2`` for the quarter-period shifts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .clifford import delta

__all__ = [
    "LaurentPoly",
    "bernoulli",
    "expand",
    "SUPPORTED_FUNCTIONS",
    "direct_value",
    "cot_sum_identity_check",
    "kappa_cubic",
    "kappa_roots",
    "case4_cubic_from_ratio",
    "poly_mul",
    "case4_system",
    "case5_system",
    "slice_bracket",
    "RigiditySeries",
    "rigidity_series_residual",
    "rigidity_direct",
    "poles_commensurable",
    "OTFKMEntry",
    "enumerate_otfkm_multiplicities",
    "pairs_with_difference",
]

MAX_ORDER = 8


class LaurentPoly:
    """Truncated Laurent series ``sum c_e s^e`` with exact coefficients.

    Coefficients are known exactly for exponents ``< trunc``; anything at or
    beyond ``trunc`` is unknown and is never reported.
    """

    __slots__ = ("c", "trunc")

    def __init__(self, coeffs=None, trunc: int = MAX_ORDER + 1):
        self.trunc = int(trunc)
        self.c = {}
        for e, v in (coeffs or {}).items():
            v = Fraction(v)
            if v and e < self.trunc:
                self.c[int(e)] = v

    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (``trunc`` if none)."""
        return min(self.c, default=self.trunc)

    def coeff(self, e: int) -> Fraction:
        if e >= self.trunc:
            raise ValueError(f"coefficient of s^{e} is beyond the truncation order {self.trunc}")
        return self.c.get(e, Fraction(0))

    def items(self):
        return sorted(self.c.items())

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other}, self.trunc)
        t = min(self.trunc, other.trunc)
        out = {}
        for src in (self.c, other.c):
            for e, v in src.items():
                out[e] = out.get(e, 0) + v
        return LaurentPoly(out, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            f = Fraction(other)
            return LaurentPoly({e: v * f for e, v in self.c.items()}, self.trunc)
        t = min(self.trunc + other.valuation(), other.trunc + self.valuation())
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                if e1 + e2 < t:
                    out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.trunc == other.trunc and self.c == other.c

    def __call__(self, s: float) -> float:
        """Float evaluation of the truncated sum."""
        return float(sum(float(v) * s ** e for e, v in self.c.items()))

    def __repr__(self):
        terms = " + ".join(f"({v})s^{e}" for e, v in self.items()) or "0"
        return f"LaurentPoly({terms} + O(s^{self.trunc}))"


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` (convention ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    B = [Fraction(1)]
    for mm in range(1, n + 1):
        B.append(-sum(math.comb(mm + 1, j) * B[j] for j in range(mm)) / (mm + 1))
    return B[n]


def _csc2_coeffs(order: int) -> dict:
    out = {-2: Fraction(1)}
    for k in range(1, order // 2 + 2):
        e = 2 * k - 2
        if e > order:
            break
        out[e] = Fraction(2 ** (2 * k)) * abs(bernoulli(2 * k)) * (2 * k - 1) / math.factorial(2 * k)
    return out


def _sec2_coeffs(order: int) -> dict:
    out = {}
    for k in range(1, order // 2 + 2):
        e = 2 * k - 2
        if e > order:
            break
        out[e] = (Fraction(2 ** (2 * k) * (2 ** (2 * k) - 1)) * abs(bernoulli(2 * k))
                  * (2 * k - 1) / math.factorial(2 * k))
    return out


def _rescaled(base: dict, x_sq_per_s_sq: Fraction, order: int) -> LaurentPoly:
    """``sum b_e x^e`` with ``x^2 = r s^2``; only even ``e`` occur."""
    out = {}
    for e, v in base.items():
        out[e] = v * x_sq_per_s_sq ** Fraction(e, 2) if e >= 0 else v / x_sq_per_s_sq ** (-e // 2)
    return LaurentPoly(out, order + 1)


SUPPORTED_FUNCTIONS = ("csc2", "cot2", "sec2", "tan2", "cot2_shift_quarter_plus_tan2")


def expand(fn: str, scale=1, order: int = MAX_ORDER, scale_sq=None) -> LaurentPoly:
    """Laurent series of ``fn(s / scale)`` about ``s = 0``.

    Parameters
    ----------
    fn : str
        One of :data:`SUPPORTED_FUNCTIONS`.  The last one is
        ``cot^2(x + pi/4) + tan^2(x + pi/4)``.
    scale : Rational
        Positive rational scale.  Ignored when ``scale_sq`` is given.
    order : int
        Highest exponent kept (at most 8); the result is ``O(s^(order+1))``.
    scale_sq : Rational, optional
        Square of an (possibly irrational) scale; the series only involves
        even powers, so this keeps the coefficients rational.

    Raises
    ------
    ValueError
        Unknown function, order out of range or non-positive scale.
    """
    if fn not in SUPPORTED_FUNCTIONS:
        raise ValueError(f"unsupported function {fn!r}; expected one of {SUPPORTED_FUNCTIONS}")
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [0, {MAX_ORDER}]")
    q = Fraction(scale_sq) if scale_sq is not None else Fraction(scale) ** 2
    if q <= 0:
        raise ValueError("scale must be positive")
    r = 1 / q  # x^2 = s^2 / scale^2
    if fn == "csc2":
        return _rescaled(_csc2_coeffs(order), r, order)
    if fn == "cot2":
        return _rescaled(_csc2_coeffs(order), r, order) - 1
    if fn == "sec2":
        return _rescaled(_sec2_coeffs(order), r, order)
    if fn == "tan2":
        return _rescaled(_sec2_coeffs(order), r, order) - 1
    # cot^2 y + tan^2 y = 4 csc^2(2y) - 2 and at y = x + pi/4, sin(2y) = cos(2x)
    return 4 * _rescaled(_sec2_coeffs(order), 4 * r, order) - 2


def direct_value(fn: str, s: float, scale: float = 1.0) -> float:
    """Float evaluation of ``fn(s / scale)`` for comparison with :func:`expand`."""
    x = s / scale
    if fn == "csc2":
        return 1.0 / math.sin(x) ** 2
    if fn == "cot2":
        return 1.0 / math.tan(x) ** 2
    if fn == "sec2":
        return 1.0 / math.cos(x) ** 2
    if fn == "tan2":
        return math.tan(x) ** 2
    if fn == "cot2_shift_quarter_plus_tan2":
        y = x + math.pi / 4
        return 1.0 / math.tan(y) ** 2 + math.tan(y) ** 2
    raise ValueError(f"unsupported function {fn!r}")


def cot_sum_identity_check(g: int, x_samples) -> float:
    """Max of ``|sum_j cot^2(x + j pi/g) - (g^2 csc^2(g x) - g)|`` over samples."""
    x = np.asarray(x_samples, dtype=float)
    lhs = sum(1.0 / np.tan(x + j * np.pi / g) ** 2 for j in range(g))
    rhs = g * g / np.sin(g * x) ** 2 - g
    # relative to the size of the terms, since samples may sit near poles
    return float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))


# ---------------------------------------------------------------------------
# cubic conditions on kappa = g1^2 (1 - C)/(1 + C)
def poly_mul(a, b) -> list:
    """Product of polynomials given as coefficient lists (highest power first)."""
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += Fraction(x) * Fraction(y)
    return out


_CUBICS = {
    "g2_case4": ([5, -21, 0, 16], [[1, -1], [1, -4], [5, 4]]),
    "g4_case5": ([5, -84, 0, 1024], [[1, -4], [1, -16], [5, 16]]),
}


def kappa_cubic(case: str) -> list:
    if case not in _CUBICS:
        raise ValueError(f"unknown case {case!r}")
    return [Fraction(c) for c in _CUBICS[case][0]]


def _divisors(n: int) -> list:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def kappa_roots(case: str) -> set:
    """Exact rational roots of the cubic for ``case``, with its factorization checked.

    Roots are found by the rational root test; the linear-factor product is
    expanded exactly and compared with the cubic.

    Raises
    ------
    ArithmeticError
        If the factorization does not multiply back to the cubic.
    """
    coeffs = kappa_cubic(case)
    lead, const = int(coeffs[0]), int(coeffs[-1])
    roots = set()
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = sum(c * cand ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))
                if val == 0:
                    roots.add(cand)
    prod = [Fraction(1)]
    for fac in _CUBICS[case][1]:
        prod = poly_mul(prod, fac)
    if prod != coeffs:
        raise ArithmeticError(f"factorization of {case} does not expand to the cubic")
    return roots


def case4_cubic_from_ratio() -> list:
    """Cubic obtained from ``(k^2 + 14)/(k^3 + 62) = 15/63``, made primitive."""
    # 63 (k^2 + 14) - 15 (k^3 + 62) = 0  ->  15 k^3 - 63 k^2 + 48 = 0
    c = [Fraction(15), Fraction(-63), Fraction(0), Fraction(15 * 62 - 63 * 14)]
    g = math.gcd(*[int(x) for x in c if x])
    return [x / g for x in c]


def case4_system(g1, C, ell, m) -> list:
    """Residuals (LHS - RHS) of the three stated coefficient equations for ``(g1, g2) = (g1, 2)``."""
    C = Fraction(C)
    a, b = 1 - C, 1 + C
    return [
        ell * (a * g1 ** 2 + 2 * b) - 3 * (b * (m - 1) + a),
        ell * (a ** 2 * g1 ** 4 + 14 * b ** 2) - 15 * b ** 2 * (m - 1),
        ell * (a ** 3 * g1 ** 6 + 62 * b ** 3) - 63 * b ** 3 * (m - 1),
    ]


def case5_system(g1, C, m1, m, m22) -> list:
    """Residuals of the three stated coefficient equations for ``(g1, g2) = (g1, 4)``."""
    C = Fraction(C)
    a, b = 1 - C, 1 + C
    return [
        m1 * (a * g1 ** 2 + 8 * b) - 3 * (2 * b * (m - 1) + a),
        m1 * (a ** 2 * g1 ** 4 - 16 * b ** 2) - 240 * b ** 2 * m22,
        m1 * (a ** 3 * g1 ** 6 - 64 * b ** 3) - 63 * b ** 3 * (m - 1),
    ]


# ---------------------------------------------------------------------------
# rigidity identity as Laurent series
def slice_bracket(g: int, mults, dim: int, scale_sq, order: int = MAX_ORDER) -> LaurentPoly:
    """``(dim - 1) + sum_k m_k cot^2(s/scale + k pi/g)`` as a Laurent series.

    ``mults = (m_1, m_2)``; the ``k``-th angle carries ``m_1`` for even ``k``
    and ``m_2`` for odd ``k``.

    Raises
    ------
    ValueError
        If ``dim - 1 != g (m_1 + m_2) / 2`` or the multiplicities are unequal
        for ``g`` outside ``{2, 4}``.
    """
    m1, m2 = mults
    if g not in (1, 2, 3, 4, 6):
        raise ValueError("g must be one of 1, 2, 3, 4, 6")
    if 2 * (dim - 1) != g * (m1 + m2):
        raise ValueError(f"dimension {dim} inconsistent with g={g}, multiplicities {mults}")
    q = Fraction(scale_sq)
    if m1 == m2:
        # sum_j cot^2(x + j pi/g) = g^2 csc^2(g x) - g
        return (dim - 1) + m1 * (g * g * expand("csc2", order=order, scale_sq=q / (g * g)) - g)
    if g == 2:
        return (dim - 1) + m1 * expand("cot2", order=order, scale_sq=q) + m2 * expand("tan2", order=order, scale_sq=q)
    if g == 4:
        return ((dim - 1) + m1 * (expand("cot2", order=order, scale_sq=q) + expand("tan2", order=order, scale_sq=q))
                + m2 * expand("cot2_shift_quarter_plus_tan2", order=order, scale_sq=q))
    raise ValueError(f"g={g} requires equal multiplicities")


def poles_commensurable(C, g1: int, g2: int) -> dict:
    """Pole bookkeeping for the two sides of the rigidity identity.

    The side with ``g`` curvatures has double poles at ``s in (pi C_i / g) Z``.

    Returns
    -------
    dict
        ``ratio_rational``: whether ``C1 / C2`` is rational (``C1^2/C2^2`` a
        rational square); ``poles_coincide``: whether the two pole lattices
        are equal, i.e. ``C1 / g1 = C2 / g2``.
    """
    C = Fraction(C)
    r = (1 + C) / (1 - C)  # C1^2 / C2^2
    num, den = r.numerator, r.denominator
    rational = math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den
    return {"ratio_rational": rational, "poles_coincide": r == Fraction(g1 * g1, g2 * g2)}


@dataclass
class RigiditySeries:
    """Exact coefficient differences LHS - RHS of the rigidity identity."""

    params: dict
    diffs: dict = field(default_factory=dict)
    commensurable: dict = field(default_factory=dict)

    @property
    def vanishes(self) -> bool:
        return all(v == 0 for v in self.diffs.values())

    def first_nonzero(self):
        return next(((e, v) for e, v in sorted(self.diffs.items()) if v != 0), None)


def rigidity_series_residual(g1: int, g2: int, mults1, mults2, n: int, m: int, C,
                             order: int = MAX_ORDER) -> RigiditySeries:
    """Per-order differences of the two sides of the rigidity identity.

    Left side ``(1-C)^2 C1^2 [(n-1) + sum m_1k cot^2(s/C1 + k pi/g1)]``,
    right side the same with ``(1+C)^2 C2^2``, ``m``, ``g2``; here
    ``C1^2 = (1+C)/2`` and ``C2^2 = (1-C)/2``.  Orders ``-2 .. order``.
    When the pole lattices differ the comparison is formal only; this is
    recorded in ``commensurable``.
    """
    C = Fraction(C)
    if not -1 < C < 1:
        raise ValueError("C must lie in (-1, 1)")
    c1sq, c2sq = (1 + C) / 2, (1 - C) / 2
    lhs = (1 - C) ** 2 * c1sq * slice_bracket(g1, mults1, n, c1sq, order)
    rhs = (1 + C) ** 2 * c2sq * slice_bracket(g2, mults2, m, c2sq, order)
    d = lhs - rhs
    diffs = {e: d.coeff(e) for e in range(-2, min(order, d.trunc - 1) + 1)}
    params = {"g1": g1, "g2": g2, "mults1": tuple(mults1), "mults2": tuple(mults2), "n": n, "m": m, "C": C}
    return RigiditySeries(params, diffs, poles_commensurable(C, g1, g2))


def rigidity_direct(g1, g2, mults1, mults2, n, m, C, s: float) -> float:
    """Float value of LHS - RHS at ``s`` by direct trigonometric evaluation."""
    C = float(C)
    c1, c2 = math.sqrt((1 + C) / 2), math.sqrt((1 - C) / 2)

    def side(g, mults, dim, c):
        x = s / c
        tot = dim - 1
        for k in range(g):
            tot += mults[k % 2] / math.tan(x + k * math.pi / g) ** 2
        return tot

    return (1 - C) ** 2 * c1 ** 2 * side(g1, mults1, n, c1) - (1 + C) ** 2 * c2 ** 2 * side(g2, mults2, m, c2)


# ---------------------------------------------------------------------------
class OTFKMEntry(NamedTuple):
    p: int
    k: int
    l: int
    m1: int
    m2: int


def enumerate_otfkm_multiplicities(bound_l: int) -> list:
    """All ``(p, k)`` with ``l = k delta(p) <= bound_l`` and ``m2 = l - p - 1 >= 1``.

    Multiplicities are ``(m1, m2) = (p, l - p - 1)``.
    """
    if bound_l < 2:
        raise ValueError("bound_l must be >= 2")
    out = []
    p = 1
    while p + 2 <= bound_l:
        dp = delta(p)
        k = 1
        while k * dp <= bound_l:
            l = k * dp
            if l - p - 1 >= 1:
                out.append(OTFKMEntry(p, k, l, p, l - p - 1))
            k += 1
        p += 1
    return out


def pairs_with_difference(entries, diff: int) -> set:
    """Unordered multiplicity pairs ``{m1, m2}`` with ``|m1 - m2| = diff``."""
    return {tuple(sorted((e.m1, e.m2), reverse=True)) for e in entries if abs(e.m1 - e.m2) == diff}
