"""Hypersurface families of S^n x S^m and S^1 x H^m.

Every family supplies an ambient extension ``F`` of its defining function
(a function of the coordinate vectors ``x`` and ``y``) together with its
Euclidean partial derivatives and Hessian.  The Riemannian gradient,
Laplacian and normal are derived from these in :mod:`.geometry`, so the
only family-specific calculus lives in ``grad`` and ``hessian``.

Families
--------
MT(n, t)
    ``<x, y> = t`` in S^n x S^n.
MHat(system, t)
    ``<x, y>^2 + sum_a <E_a x, y>^2 = t`` in S^n x S^n with ``n + 1 = l``.
GraphSH(m, a, u, t)
    ``sin(theta - a ln(-<y, u>_L)) = t`` in S^1 x H^m, where
    ``x = (cos theta, sin theta)``.  The level ``t = 0`` is the graph of
    ``theta = a ln(-<y, u>_L)``.
MTF(field, n, t)
    ``|<x, y>_F|^2 = t`` in S^N x S^N with ``N = (n+1)d - 1`` and ``d`` the
    real dimension of the field.  Quaternion scalars act on the right.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..clifford import CliffordSystem, gen_system
from ..spaceforms import AmbientSpec, LightVec, factor_inner
from . import quaternion as qt

__all__ = [
    "Family",
    "MT",
    "MHat",
    "GraphSH",
    "MTF",
    "FIELD_DIM",
    "family_from_dict",
    "family_to_dict",
]

FIELD_DIM = {"R": 1, "C": 2, "H": 4}


class Family:
    """Common interface of the catalog families.

    Subclasses set ``tag``, ``spec`` (an :class:`AmbientSpec`) and ``level``.
    """

    tag: str = ""
    spec: AmbientSpec
    level: float
    #: families living in S^n x S^n with C = 0 (pairing and Riccati laws apply)
    sphere_pair: bool = False

    # ambient calculus -------------------------------------------------
    def grad(self, x, y):
        """Return ``(F, dF/dx, dF/dy)`` of the ambient extension."""
        raise NotImplementedError

    def hessian(self, x, y) -> np.ndarray:
        """Full Euclidean Hessian of the extension in ``(x, y)`` coordinates."""
        raise NotImplementedError

    def value(self, x, y) -> float:
        return self.grad(x, y)[0]

    # isoparametric data -----------------------------------------------
    def b(self, F: float) -> float:
        """``|grad F|^2`` as a function of ``F``."""
        raise NotImplementedError

    def a(self, F: float) -> float:
        """``Laplacian F`` as a function of ``F`` (the closed-form law)."""
        raise NotImplementedError

    def a_derived(self, F: float, x=None, y=None) -> float:
        """``Laplacian F`` as derived here; defaults to :meth:`a`."""
        return self.a(F)

    # closed forms -----------------------------------------------------
    def closed_normal(self, x, y):
        """Unit normal from the family's explicit formula."""
        raise NotImplementedError

    def expected_angle(self) -> float:
        raise NotImplementedError

    def stated_spectrum(self, x=None, y=None) -> list:
        """Principal curvatures and multiplicities as stated for the family."""
        raise NotImplementedError

    def derived_spectrum(self, x=None, y=None) -> list:
        """Principal curvatures derived here (defaults to the stated values)."""
        return self.stated_spectrum(x, y)

    def stated_mean_curvature(self, x=None, y=None) -> Optional[float]:
        return None

    def derived_mean_curvature(self, x=None, y=None) -> Optional[float]:
        return float(sum(v * k for v, k in self.derived_spectrum(x, y)))

    def stated_scalar_curvature(self) -> Optional[float]:
        return None

    def stated_ricci(self) -> Optional[list]:
        return None

    # sampling ---------------------------------------------------------
    def sample_level(self, rng: np.random.Generator):
        """Random point ``(x, y)`` on the level set ``F = level``."""
        raise NotImplementedError

    @property
    def dim(self) -> int:
        """Dimension of the hypersurface."""
        return self.spec.n + self.spec.m - 1

    def label(self) -> str:
        raise NotImplementedError


def _clean(spectrum):
    """Sorted ``(value, multiplicity)`` list; coinciding values are merged."""
    out = []
    for v, k in sorted((float(v), int(k)) for v, k in spectrum if k > 0):
        if out and abs(out[-1][0] - v) <= 1e-12 * (1.0 + abs(v)):
            out[-1] = (out[-1][0], out[-1][1] + k)
        else:
            out.append((v, k))
    return out


# ---------------------------------------------------------------------------
@dataclass
class MT(Family):
    """``<x, y> = t`` in S^n x S^n."""

    n: int
    t: float
    tag: str = field(default="MT", init=False)
    sphere_pair: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("MT needs n >= 1")
        if not -1.0 < self.t < 1.0:
            raise ValueError("MT needs -1 < t < 1")
        self.spec = AmbientSpec(self.n, 1, self.n, 1)
        self.level = float(self.t)

    def grad(self, x, y):
        return float(np.dot(x, y)), np.array(y, dtype=float), np.array(x, dtype=float)

    def hessian(self, x, y):
        k = self.n + 1
        H = np.zeros((2 * k, 2 * k))
        H[:k, k:] = np.eye(k)
        H[k:, :k] = np.eye(k)
        return H

    def b(self, F):
        return 2.0 * (1.0 - F * F)

    def a(self, F):
        return -2.0 * self.n * F

    def closed_normal(self, x, y):
        t = self.t
        s = math.sqrt(2.0 * (1.0 - t * t))
        return (y - t * x) / s, (x - t * y) / s

    def expected_angle(self):
        return 0.0

    def stated_spectrum(self, x=None, y=None):
        t, n = self.t, self.n
        return _clean([
            (-math.sqrt((1 - t) / (2 * (1 + t))), n - 1),
            (0.0, 1),
            (math.sqrt((1 + t) / (2 * (1 - t))), n - 1),
        ])

    def stated_mean_curvature(self, x=None, y=None):
        t = self.t
        return (self.n - 1) * math.sqrt(2.0) * t / math.sqrt(1 - t * t)

    def sample_level(self, rng):
        k = self.n + 1
        x = rng.standard_normal(k)
        x /= np.linalg.norm(x)
        w = rng.standard_normal(k)
        w -= np.dot(w, x) * x
        w /= np.linalg.norm(w)
        y = self.t * x + math.sqrt(1 - self.t ** 2) * w
        return x, y / np.linalg.norm(y)

    def label(self):
        return f"MT(n={self.n},t={self.t!r})"


# ---------------------------------------------------------------------------
class _CliffordType(Family):
    """Shared calculus for ``sum_a <E_a x, y>^2`` with ``E_0 = I``."""

    sphere_pair = True
    Es: np.ndarray  # stacked (q, l, l), first entry identity
    p: int
    l: int

    def _setup(self, E_list, l: int, t: float):
        self.l = l
        self.Es = np.concatenate([np.eye(l)[None], np.asarray(E_list, dtype=float).reshape(-1, l, l)])
        self.spec = AmbientSpec(l - 1, 1, l - 1, 1)
        self.level = float(t)

    def grad(self, x, y):
        Ex = self.Es @ x  # (q, l)
        a = Ex @ y
        F = float(np.dot(a, a))
        EtY = np.einsum("qij,i->qj", self.Es, y)  # rows E_a^T y
        gx = 2.0 * (a @ EtY)
        gy = 2.0 * (a @ Ex)
        return F, gx, gy

    def hessian(self, x, y):
        l = self.l
        Ex = self.Es @ x
        EtY = np.einsum("qij,i->qj", self.Es, y)
        a = Ex @ y
        H = np.zeros((2 * l, 2 * l))
        H[:l, :l] = 2.0 * EtY.T @ EtY
        H[l:, l:] = 2.0 * Ex.T @ Ex
        Hxy = 2.0 * (EtY.T @ Ex + np.einsum("q,qji->ij", a, self.Es))
        H[:l, l:] = Hxy
        H[l:, :l] = Hxy.T
        return H

    def b(self, F):
        return 8.0 * F * (1.0 - F)

    def a(self, F):
        return 4.0 * self.p - 4.0 * self.l * F

    def expected_angle(self):
        return 0.0

    def _phi(self):
        return 0.5 * math.acos(math.sqrt(self.level))

    def derived_spectrum(self, x=None, y=None):
        """Values ``cot(phi + k pi/4)/sqrt 2`` with ``cos(2 phi) = sqrt(t)``.

        Multiplicities are ``(l-p-1, p-1, l-p-1, p-1)`` for ``k = 0..3``,
        plus a simple zero along ``V``.
        """
        phi = self._phi()
        m2 = self.l - self.p - 1
        mults = (m2, self.p - 1, m2, self.p - 1)
        vals = [(1.0 / (math.sqrt(2.0) * math.tan(phi + k * math.pi / 4)), mults[k]) for k in range(4)]
        return _clean(vals + [(0.0, 1)])

    def derived_mean_curvature(self, x=None, y=None):
        t = self.level
        s = math.sqrt(t)
        m2 = self.l - self.p - 1
        return m2 * math.sqrt(2.0) * s / math.sqrt(1 - t) - (self.p - 1) * math.sqrt(2.0) * math.sqrt(1 - t) / s

    def sample_level(self, rng):
        from .geometry import project_to_level

        for _ in range(100):
            x = rng.standard_normal(self.l)
            y = rng.standard_normal(self.l)
            x /= np.linalg.norm(x)
            y /= np.linalg.norm(y)
            try:
                return project_to_level(self, x, y, self.level)
            except RuntimeError:
                continue
        raise RuntimeError("could not reach the requested level")


@dataclass
class MHat(_CliffordType):
    """``<x, y>^2 + sum_a <E_a x, y>^2 = t`` for a skew Clifford system.

    ``p = 1`` (no skew matrices) is accepted as the formal degenerate case
    whose level sets are two copies of an MT hypersurface.
    """

    system: CliffordSystem
    t: float
    tag: str = field(default="MHat", init=False)

    def __post_init__(self):
        s = self.system
        if not 0.0 < self.t < 1.0:
            raise ValueError("MHat needs 0 < t < 1")
        if s.l < s.p + 1:
            raise ValueError(f"MHat needs l >= p + 1 (got p={s.p}, l={s.l}); otherwise f is constant")
        self.p = s.p
        self._setup(s.E, s.l, self.t)

    @classmethod
    def generate(cls, p: int, l: int, t: float) -> "MHat":
        from ..clifford import delta

        d = delta(p)
        if l % d:
            raise ValueError(f"l={l} is not a multiple of delta({p})={d}")
        return cls(gen_system(p, l // d), t)

    def stated_spectrum(self, x=None, y=None):
        # five distinct values are asserted without closed forms in t;
        # the values are taken from the slice angle recovered from t
        return self.derived_spectrum(x, y)

    def closed_normal(self, x, y):
        F, gx, gy = self.grad(x, y)
        gx = gx - np.dot(gx, x) * x
        gy = gy - np.dot(gy, y) * y
        s = math.sqrt(8.0 * F * (1.0 - F))
        return gx / s, gy / s

    def label(self):
        return f"MHat(p={self.p},l={self.l},t={self.t!r})"


@dataclass
class MTF(_CliffordType):
    """``|<x, y>_F|^2 = t`` on S^N x S^N, ``N = (n+1)d - 1``.

    The field F in {R, C, H} acts by right multiplication on each block of
    ``d`` real coordinates; the skew matrices of the underlying Clifford
    type are right multiplication by the imaginary units.
    """

    field_name: str
    n: int
    t: float
    tag: str = field(default="MTF", init=False)

    def __post_init__(self):
        if self.field_name not in FIELD_DIM:
            raise ValueError("field must be one of R, C, H")
        if self.n < 1:
            raise ValueError("MTF needs n >= 1")
        if not 0.0 < self.t < 1.0:
            raise ValueError("MTF needs 0 < t < 1")
        d = FIELD_DIM[self.field_name]
        self.d = d
        self.p = d
        l = (self.n + 1) * d
        self._setup(qt.right_units(self.field_name, self.n + 1), l, self.t)

    def closed_normal(self, x, y):
        t = self.t
        X = qt.to_quat(x, self.d)
        Y = qt.to_quat(y, self.d)
        lam = qt.finner(X, Y)
        nx = qt.from_quat(qt.rmul(Y, qt.conj(lam)), self.d) - t * x
        ny = qt.from_quat(qt.rmul(X, lam), self.d) - t * y
        s = math.sqrt(2.0 * t * (1.0 - t))
        return nx / s, ny / s

    def _big(self):
        return (self.n + 1) * self.d

    def stated_spectrum(self, x=None, y=None):
        s = math.sqrt(self.t)
        k = self._big() - 2
        return _clean([
            (math.sqrt((1 + s) / (1 - s)) / math.sqrt(2.0), k),
            (-math.sqrt((1 - s) / (1 + s)) / math.sqrt(2.0), k),
            (0.0, 1),
        ])

    def stated_mean_curvature(self, x=None, y=None):
        return (self._big() - 2) * math.sqrt(2.0 * self.t / (1.0 - self.t))

    def stated_scalar_curvature(self):
        b = self._big()
        return 2.0 * (b - 2) * (b - 3) / (1.0 - self.t) + b - 2

    def stated_ricci(self):
        b = self._big()
        s = math.sqrt(self.t)
        return _clean([((b - 3) / (1 - s), b - 2), ((b - 3) / (1 + s), b - 2), (float(b - 2), 1)])

    def label(self):
        return f"MTF(field={self.field_name},n={self.n},t={self.t!r})"


# ---------------------------------------------------------------------------
@dataclass
class GraphSH(Family):
    """Level sets of ``sin(theta - a ln(-<y, u>_L))`` in S^1 x H^m."""

    m: int
    a_param: float
    u: Optional[LightVec] = None
    t: float = 0.0
    branch: int = 1
    tag: str = field(default="GraphSH", init=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("GraphSH needs m >= 1")
        if self.a_param == 0:
            raise ValueError("GraphSH needs a != 0")
        if not -1.0 < self.t < 1.0:
            raise ValueError("GraphSH needs -1 < t < 1")
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 (cos > 0) or -1 (cos < 0)")
        if self.u is None:
            w = np.zeros(self.m)
            w[0] = 1.0
            self.u = LightVec.from_direction(w)
        if self.u.u.shape[0] != self.m + 1:
            raise ValueError("lightlike vector has the wrong length")
        self.spec = AmbientSpec(1, 1, self.m, -1)
        self.level = float(self.t)
        uu = self.u.u
        self._Ju = np.concatenate([[-uu[0]], uu[1:]])

    # helpers
    def _w(self, y):
        w = -factor_inner(y, self.u.u, -1)
        if not w > 0:
            raise ValueError("-<y,u>_L must be positive (log undefined)")
        return w

    def log_w(self, y) -> float:
        return math.log(self._w(y))

    def Theta(self, x, y) -> float:
        return math.atan2(x[1], x[0]) - self.a_param * self.log_w(y)

    def grad(self, x, y):
        a = self.a_param
        w = self._w(y)
        L = math.log(w)
        cA, sA = math.cos(a * L), math.sin(a * L)
        F = x[1] * cA - x[0] * sA
        dL = -self._Ju / w
        cosT = x[1] * sA + x[0] * cA
        return float(F), np.array([-sA, cA]), -a * cosT * dL

    def hessian(self, x, y):
        a = self.a_param
        m1 = self.m + 1
        w = self._w(y)
        L = math.log(w)
        cA, sA = math.cos(a * L), math.sin(a * L)
        F = x[1] * cA - x[0] * sA
        cosT = x[1] * sA + x[0] * cA
        dL = -self._Ju / w
        HL = -np.outer(self._Ju, self._Ju) / w ** 2
        H = np.zeros((2 + m1, 2 + m1))
        H[0, 2:] = -a * cA * dL
        H[1, 2:] = -a * sA * dL
        H[2:, 0] = H[0, 2:]
        H[2:, 1] = H[1, 2:]
        H[2:, 2:] = -a * a * F * np.outer(dL, dL) - a * cosT * HL
        return H

    def b(self, F):
        return (1.0 + self.a_param ** 2) * (1.0 - F * F)

    def a(self, F):
        return -(1.0 + self.a_param ** 2) * F

    def a_derived(self, F, x=None, y=None):
        """Laplacian including the horosphere term.

        ``L = ln(-<y, u>_L)`` has ``|grad L| = 1`` and ``Lap L = m - 1``, so
        ``Lap F = -(1 + a^2) F - a (m - 1) cos(Theta)``.  On a branch
        ``cos(Theta) = sgn * sqrt(1 - F^2)``, so F is still isoparametric.
        """
        a = self.a_param
        c = self._sgn(x, y) * math.sqrt(max(1.0 - F * F, 0.0))
        return -(1.0 + a * a) * F - a * (self.m - 1) * c

    def closed_normal(self, x, y):
        a = self.a_param
        sgn = 1.0 if math.cos(self.Theta(x, y)) > 0 else -1.0
        uu = self.u.u
        yu = factor_inner(y, uu, -1)
        s = sgn / math.sqrt(1.0 + a * a)
        tx = np.array([-x[1], x[0]])
        return s * tx, -s * a * (uu / yu + y)

    def expected_angle(self):
        a2 = self.a_param ** 2
        return (1.0 - a2) / (1.0 + a2)

    def _sgn(self, x, y):
        if x is None:
            return float(self.branch)
        return 1.0 if math.cos(self.Theta(x, y)) > 0 else -1.0

    def stated_spectrum(self, x=None, y=None):
        a = self.a_param
        lam = -a * self._sgn(x, y) / math.sqrt(1.0 + a * a)
        return _clean([(lam, self.m - 1), (0.0, 1)])

    def derived_spectrum(self, x=None, y=None):
        """Opposite sign to the stated value, for ``N = grad F / |grad F|``."""
        a = self.a_param
        lam = a * self._sgn(x, y) / math.sqrt(1.0 + a * a)
        return _clean([(lam, self.m - 1), (0.0, 1)])

    def stated_mean_curvature(self, x=None, y=None):
        a = self.a_param
        return -self._sgn(x, y) * a * (self.m - 1) / math.sqrt(1.0 + a * a)

    def stated_scalar_curvature(self):
        return -self.m * (self.m - 1) / (1.0 + self.a_param ** 2)

    def stated_ricci(self):
        return [(-(self.m - 1) / (1.0 + self.a_param ** 2), self.m)]

    def sample_level(self, rng):
        from ..spaceforms import _sample_factor

        y = _sample_factor(rng, self.m, -1)
        Th = math.asin(self.t)
        if self.branch < 0:
            Th = math.pi - Th
        ang = Th + self.a_param * self.log_w(y)
        return np.array([math.cos(ang), math.sin(ang)]), y

    def label(self):
        u = ",".join(repr(float(c)) for c in self.u.u)
        return f"GraphSH(m={self.m},a={self.a_param!r},u=({u}),t={self.t!r},branch={self.branch})"


# ---------------------------------------------------------------------------
def family_from_dict(obj: dict, clifford_loader=None) -> Family:
    """Build a family from its JSON description.

    Recognized tags (case-insensitive): ``mt``, ``mhat``, ``graph``/``graphsh``
    and ``mtf``.
    """
    tag = str(obj.get("tag", "")).lower()
    if tag == "mt":
        return MT(int(obj["n"]), float(obj["t"]))
    if tag == "mhat":
        if obj.get("clifford_ref"):
            if clifford_loader is None:
                raise ValueError("clifford_ref given without a loader")
            sys = clifford_loader(obj["clifford_ref"])
            return MHat(sys, float(obj["t"]))
        return MHat.generate(int(obj["p"]), int(obj["l"]), float(obj["t"]))
    if tag in ("graph", "graphsh"):
        u = obj.get("u")
        lv = LightVec(np.asarray(u, dtype=float)) if u is not None else None
        return GraphSH(int(obj["m"]), float(obj["a"]), lv, float(obj.get("t", 0.0)), int(obj.get("branch", 1)))
    if tag == "mtf":
        return MTF(str(obj["field"]), int(obj["n"]), float(obj["t"]))
    raise ValueError(f"unknown family tag {obj.get('tag')!r}")


def family_to_dict(fam: Family) -> dict:
    if isinstance(fam, MT):
        return {"tag": "mt", "n": fam.n, "t": fam.t}
    if isinstance(fam, MHat):
        return {"tag": "mhat", "p": fam.p, "l": fam.l, "t": fam.t}
    if isinstance(fam, GraphSH):
        return {"tag": "graph", "m": fam.m, "a": fam.a_param, "u": fam.u.u.tolist(), "t": fam.t, "branch": fam.branch}
    if isinstance(fam, MTF):
        return {"tag": "mtf", "field": fam.field_name, "n": fam.n, "t": fam.t}
    raise TypeError(type(fam))
