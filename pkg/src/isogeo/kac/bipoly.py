"""Exact polynomials in two commuting variables ``tau1``, ``tau2``.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; zero
coefficients are never stored.  Plain numbers mix freely with
:class:`BiPoly` in arithmetic, so matrices may hold either.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["BiPoly", "TAU1", "TAU2", "as_bipoly", "poly_eval"]


class BiPoly:
    """Sparse polynomial ``sum c[i, j] tau1^i tau2^j`` with exact coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for key, v in coeffs.items():
                if v:
                    c[(int(key[0]), int(key[1]))] = v
        self.c = c

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, v) -> "BiPoly":
        return cls({(0, 0): v})

    @classmethod
    def monomial(cls, i: int, j: int, v=1) -> "BiPoly":
        return cls({(i, j): v})

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def degree(self) -> int:
        """Total degree (``-1`` for the zero polynomial)."""
        return max((i + j for i, j in self.c), default=-1)

    def is_homogeneous(self, deg=None) -> bool:
        degs = {i + j for i, j in self.c}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return deg is None or degs == {deg}

    def coeff(self, i: int, j: int):
        return self.c.get((i, j), 0)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Rational)):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.c)
        for k, v in o.c.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = BiPoly()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = BiPoly()
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, BiPoly):
            if not other:
                return BiPoly()
            r = BiPoly()
            r.c = {k: v * other for k, v in self.c.items()}
            return r
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = {}
        for (i1, j1), v1 in self.c.items():
            for (i2, j2), v2 in o.c.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + v1 * v2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __call__(self, tau1, tau2):
        """Exact evaluation at rational ``(tau1, tau2)``."""
        tot = 0
        for (i, j), v in self.c.items():
            tot += v * Fraction(tau1) ** i * Fraction(tau2) ** j
        return tot

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for (i, j), v in sorted(self.c.items()):
            mono = "*".join(s for s in (f"t1^{i}" if i else "", f"t2^{j}" if j else "") if s)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


TAU1 = BiPoly.monomial(1, 0)
TAU2 = BiPoly.monomial(0, 1)


def as_bipoly(v) -> BiPoly:
    return v if isinstance(v, BiPoly) else BiPoly.const(v)


def poly_eval(v, tau1, tau2):
    """Evaluate a BiPoly or plain number at ``(tau1, tau2)``."""
    return v(tau1, tau2) if isinstance(v, BiPoly) else Fraction(v)
