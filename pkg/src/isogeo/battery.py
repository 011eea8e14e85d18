"""Verification batteries that turn library checks into report records.

Each ``*_checks`` function returns a list of
:class:`~isogeo.report.CheckResult`.  Check names carry a group prefix
(``clifford.``, ``iso.``, ``angle.``, ``spectrum.``, ``structure.``,
``curvature.``, ``flow.``, ``kac.``, ``series.``, ``witness.``) so that
reports can be filtered by topic.

Randomness is keyed by ``(seed, stream, i)`` where ``stream`` is a CRC of
the family label and check group, so results do not depend on how jobs
are distributed over workers.
"""
from __future__ import annotations

import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import flows, series
from .catalog import (
    MT,
    MTF,
    GraphSH,
    MHat,
    NoWitnessError,
    angle_gradient_check_xy,
    angle_xy,
    av_norm_xy,
    check_isoparametric,
    cluster_values,
    curvature_xy,
    family_from_dict,
    family_to_dict,
    graph_symmetry_check,
    mtf_witness,
    pairing_residual,
    rigidity_xy,
    spectrum_mismatch,
    spectrum_xy,
)
from .clifford import gen_system, verify_system
from .kac import recurrences as kac
from .report import CheckResult

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "stream_rng",
    "iso_instances",
    "geo_instances",
    "flow_instances",
    "clifford_checks",
    "iso_checks",
    "angle_checks",
    "spectrum_checks",
    "curvature_checks",
    "structure_checks",
    "flow_checks",
    "focal_checks",
    "kac_checks",
    "series_checks",
    "witness_checks",
    "family_battery",
    "full_battery",
    "run_jobs",
]


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-9  # isoparametric identities
    angle: float = 1e-9
    spectrum: float = 1e-6
    av: float = 1e-6
    rigidity: float = 1e-7
    pairing: float = 1e-6
    riccati: float = 1e-5
    focal: float = 1e-6
    jacobi: float = 1e-5
    vflow: float = 1e-6
    witness: float = 1e-8
    symmetry: float = 1e-10
    series_numeric: float = 1e-10
    curvature: float = 1e-6


DEFAULT_TOL = Tolerances()


def stream_rng(seed: int, stream: str, i: int = 0) -> np.random.Generator:
    """Independent generator for sample ``i`` of a named stream."""
    return np.random.default_rng([int(seed), zlib.crc32(stream.encode("utf-8")), int(i)])


# ---------------------------------------------------------------------------
# instance lists
def iso_instances() -> list:
    """Family instances for the isoparametric and angle checks."""
    out = [MT(n, 0.3) for n in range(1, 8)]
    out += [MHat.generate(2, l, 0.4) for l in (4, 6, 8)]
    out += [MHat.generate(3, l, 0.4) for l in (4, 8)]
    out += [GraphSH(m, a, t=0.3) for m in range(1, 6) for a in (0.5, 1.0, 2.0)]
    out += [MTF(f, n, 0.3) for f in ("R", "C", "H") for n in (1, 2, 3)]
    return out


def geo_instances() -> list:
    """Family instances for the shape-operator based checks."""
    out = [MT(n, t) for n in (2, 3, 5, 7) for t in (0.2, -0.4)]
    out += [MHat.generate(2, l, 0.4) for l in (4, 6, 8)]
    out += [MHat.generate(3, l, 0.4) for l in (4, 8)]
    out += [GraphSH(m, a, t=0.3) for m in (1, 2, 3, 5) for a in (0.5, 1.0, 2.0)]
    out += [GraphSH(3, 1.0, t=0.3, branch=-1)]
    out += [MTF(f, n, 0.3) for f in ("R", "C", "H") for n in (1, 2, 3)]
    return out


def flow_instances() -> list:
    return [
        MT(3, 0.2),
        MT(5, -0.3),
        MHat.generate(2, 4, 0.4),
        MHat.generate(3, 8, 0.5),
        MTF("R", 2, 0.3),
        MTF("C", 2, 0.4),
        MTF("H", 1, 0.3),
        GraphSH(3, 0.5, t=0.2),
        GraphSH(2, 2.0, t=-0.3),
    ]


# ---------------------------------------------------------------------------
def clifford_checks(p_max: int = 9, k_max: int = 2) -> list:
    out = []
    for p in range(1, p_max + 1):
        for k in range(1, k_max + 1):
            sys = gen_system(p, k)
            inst = f"p={p},k={k},l={sys.l}"
            for rc in verify_system(sys):
                wit = "" if rc.passed else f"first violation {rc.first_violation}"
                out.append(CheckResult.exact(f"clifford.{rc.name}", inst, rc.passed, wit))
    return out


def iso_checks(fam, samples: int = 1000, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """Closed-form gradient and Laplacian laws, the derived Laplacian law and a FD gradient check."""
    rep = check_isoparametric(fam, samples, seed)
    inst = fam.label()
    return [
        CheckResult.numeric("iso.gradient_law", inst, rep.grad_residual, tol.residual),
        CheckResult.numeric("iso.laplacian_law", inst, rep.lap_residual, tol.residual),
        CheckResult.numeric("iso.laplacian_derived", inst, rep.derived_lap_residual, tol.residual),
        CheckResult.numeric("iso.gradient_fd", inst, rep.fd_residual, 1e-8,
                            "central differences along random geodesics, step 1e-5"),
        CheckResult.numeric("iso.on_level", inst, rep.level_residual, tol.residual),
    ]


def angle_checks(fam, samples: int = 1000, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """Constancy of the angle function and agreement with the expected value."""
    vals = np.array([angle_xy(fam, *fam.sample_level(np.random.default_rng([seed, i]))) for i in range(samples)])
    inst = fam.label()
    std = float(np.std(vals, ddof=1)) if samples > 1 else 0.0
    dev = float(np.max(np.abs(vals - fam.expected_angle())))
    return [
        CheckResult.numeric("angle.std", inst, std, tol.angle),
        CheckResult.numeric("angle.value", inst, dev, tol.angle, f"expected {fam.expected_angle()!r}"),
    ]


def _geo_points(fam, samples, seed, group):
    for i in range(samples):
        yield fam.sample_level(stream_rng(seed, f"{group}:{fam.label()}", i))


def spectrum_checks(fam, samples: int = 20, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """Clustered principal curvatures against the stated and the derived spectra."""
    inst = fam.label()
    worst_stated = worst_derived = 0.0
    mult_stated = mult_derived = True
    counts = set()
    flagged = False
    for x, y in _geo_points(fam, samples, seed, "spectrum"):
        rep = spectrum_xy(fam, x, y, tol.spectrum)
        flagged |= rep.flagged
        counts.add(len(rep.clusters))
        d, ok = spectrum_mismatch(rep.clusters, fam.stated_spectrum(x, y))
        worst_stated, mult_stated = max(worst_stated, d), mult_stated and ok
        d, ok = spectrum_mismatch(rep.clusters, fam.derived_spectrum(x, y))
        worst_derived, mult_derived = max(worst_derived, d), mult_derived and ok
    out = [
        CheckResult.numeric("spectrum.stated", inst, worst_stated if mult_stated else math.inf, tol.spectrum,
                            "" if mult_stated else "multiplicities differ"),
        CheckResult.numeric("spectrum.derived", inst, worst_derived if mult_derived else math.inf, tol.spectrum,
                            "" if mult_derived else "multiplicities differ"),
        CheckResult.exact("spectrum.no_ambiguous_gap", inst, not flagged),
    ]
    if isinstance(fam, MHat):
        out.append(CheckResult.exact("spectrum.five_clusters", inst, counts == {5}, f"cluster counts {sorted(counts)}"))
    return out


def curvature_checks(fam, samples: int = 20, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """Mean, scalar and Ricci curvature against the stated closed forms, where given."""
    inst = fam.label()
    dH = dHd = dR = dRic = 0.0
    ric_mult = True
    for x, y in _geo_points(fam, samples, seed, "curvature"):
        cs = curvature_xy(fam, x, y, tol.curvature)
        sH = fam.stated_mean_curvature(x, y)
        if sH is not None:
            dH = max(dH, abs(cs.H - sH))
        dHd = max(dHd, abs(cs.H - fam.derived_mean_curvature(x, y)))
        sR = fam.stated_scalar_curvature()
        if sR is not None:
            dR = max(dR, abs(cs.R - sR))
        sRic = fam.stated_ricci()
        if sRic is not None:
            d, ok = spectrum_mismatch(cs.ric_eigenvalues, sRic)
            dRic, ric_mult = max(dRic, d), ric_mult and ok
    out = [CheckResult.numeric("curvature.mean_derived", inst, dHd, tol.curvature)]
    if fam.stated_mean_curvature() is not None:
        out.append(CheckResult.numeric("curvature.mean_stated", inst, dH, tol.curvature))
    if fam.stated_scalar_curvature() is not None:
        out.append(CheckResult.numeric("curvature.scalar_stated", inst, dR, tol.curvature))
    if fam.stated_ricci() is not None:
        out.append(CheckResult.numeric("curvature.ricci_stated", inst, dRic if ric_mult else math.inf, tol.curvature,
                                       "" if ric_mult else "multiplicities differ"))
    return out


def structure_checks(fam, samples: int = 20, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """``|AV|``, ``dC = -2 <AV, .>``, the rigidity identity and (on S^n x S^n) the pairing."""
    inst = fam.label()
    av = grad_c = rig = pair = 0.0
    for x, y in _geo_points(fam, samples, seed, "structure"):
        av = max(av, av_norm_xy(fam, x, y))
        grad_c = max(grad_c, angle_gradient_check_xy(fam, x, y))
        rig = max(rig, rigidity_xy(fam, x, y))
        if fam.sphere_pair:
            rep = spectrum_xy(fam, x, y, tol.spectrum)
            pair = max(pair, pairing_residual(rep.clusters))
    out = [
        CheckResult.numeric("structure.av_zero", inst, av, tol.av),
        CheckResult.numeric("structure.angle_gradient", inst, grad_c, 1e-6, "central differences, step 1e-4"),
        CheckResult.numeric("structure.rigidity", inst, rig, tol.rigidity),
    ]
    if fam.sphere_pair:
        out.append(CheckResult.numeric("structure.pairing", inst, pair, tol.pairing))
    return out


def _first_focal_estimate(fam, x, y) -> float:
    """Smallest Riccati pole over the positive principal curvatures (S^n x S^n only)."""
    rep = spectrum_xy(fam, x, y)
    poles = [math.sqrt(2.0) * flows.riccati_theta(v) / 2.0 for v in rep.eigenvalues if abs(v) > 1e-4]
    return min(poles) if poles else math.inf


def flow_checks(fam, samples: int = 2, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """Riccati law (S^n x S^n), Jacobi determinant identity and V-flow slice isometry."""
    inst = fam.label()
    ric = jac = vfl = drift = 0.0
    truncations = []
    for x, y in _geo_points(fam, samples, seed, "flow"):
        if fam.sphere_pair:
            r0 = _first_focal_estimate(fam, x, y)
            for frac in (0.2, 0.5, 0.8):
                ric = max(ric, flows.riccati_check(fam, x, y, frac * r0))
            grid = np.linspace(0.0, 0.9 * r0, 19)
        else:
            grid = np.linspace(0.0, 2.0, 21)
        rep = flows.jacobi_determinant_check(fam, x, y, grid)
        jac = max(jac, rep.residual)
        if rep.truncated_at is not None:
            truncations.append(rep.truncated_at)
        for t in (0.3, 0.7):
            v = flows.v_flow_isometry_check(fam, x, y, t)
            vfl = max(vfl, v.residual)
            drift = max(drift, v.level_drift)
    out = []
    if fam.sphere_pair:
        out.append(CheckResult.numeric("flow.riccati", inst, ric, tol.riccati, "t at 0.2, 0.5, 0.8 of the first focal distance"))
    wit = f"grid truncated at {sorted(truncations)}" if truncations else ""
    out.append(CheckResult.numeric("flow.jacobi_determinant", inst, jac, tol.jacobi, wit))
    out.append(CheckResult.numeric("flow.v_flow_slices", inst, vfl, tol.vflow, f"level drift {drift:.3g}"))
    return out


def focal_checks(seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    """First focal distance of ``<x, y> = 0`` and absence of focal points for the graph family."""
    out = []
    fam = MT(3, 0.0)
    x, y = fam.sample_level(stream_rng(seed, "focal:" + fam.label()))
    fd = flows.focal_distances(fam, x, y, t_max=3.0)
    target = math.pi / (2.0 * math.sqrt(2.0))
    res = abs(fd[0] - target) if fd else math.inf
    out.append(CheckResult.numeric("flow.focal_first", fam.label(), res, tol.focal,
                                   f"found {fd[:2]}, expected pi/(2 sqrt 2)"))
    for g in (GraphSH(3, 1.0, t=0.0), GraphSH(2, 0.5, t=0.4)):
        x, y = g.sample_level(stream_rng(seed, "focal:" + g.label()))
        fd = flows.focal_distances(g, x, y, t_max=10.0)
        out.append(CheckResult.exact("flow.focal_none", g.label(), not fd, f"found {fd}" if fd else ""))
    return out


# ---------------------------------------------------------------------------
KAC_INSTANCES = ((1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (3, 5))


def _kc(c: kac.KacCheck) -> CheckResult:
    return CheckResult.exact(f"kac.{c.name}", c.instance, c.passed, c.witness)


def kac_checks(seed: int = 42, instances=KAC_INSTANCES, d_max: int = 9) -> list:
    """Exact tau-Kac suite."""
    out = [_kc(kac.kac_charpoly_check(d)) for d in range(1, d_max + 1)]
    pairs = [(m, n) for m in range(1, 7) for n in range(1, 7) if m * n <= 6]
    out += [_kc(kac.detQ_check(m, n)) for m, n in pairs]
    rng = stream_rng(seed, "kac:detQ")
    for m, n in [(m, n) for m in range(1, 13) for n in range(1, 13) if 6 < m * n <= 12]:
        pts = [(Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 12))),
                Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 12)))) for _ in range(5)]
        out.append(_kc(kac.detQ_numeric_check(m, n, pts)))
    roots = [(Fraction(1, 2), Fraction(3, 7)), (Fraction(2), Fraction(-5, 3)), (Fraction(-4, 9), Fraction(1))]
    for m, n in ((2, 2), (2, 3), (1, 4)):
        out.append(_kc(kac.detK_product_check(m, n, roots)))
    for m, n in instances:
        out.append(_kc(kac.pq_matches_Q(m, n, 2 * m * n + 4)))
    for m, n, k in ((1, 1, 3), (2, 2, 8), (2, 3, 10)):
        out.append(_kc(kac.ab_matches_pq(m, n, k, stream_rng(seed, f"kac:ab:{m},{n}"))))
    for m, n in instances:
        rep = kac.verify_coefficient_structure(m, n, 2 * m * n + 4)
        wit = "; ".join(rep.violations[:3])
        out.append(CheckResult.exact("kac.coeff_parity", rep.instance, rep.parity_ok and rep.grid_consistent, wit))
        out.append(CheckResult.exact("kac.coeff_factorial", rep.instance, rep.factorial_ok, wit))
        out.append(CheckResult.exact(
            "kac.coeff_degree", rep.instance, rep.degree_ok,
            f"{rep.checked_sigma} coefficients; total degree >= s with positive top form; "
            f"degree >= s in each variable separately: {rep.per_variable_ok}" + (f"; {wit}" if wit else "")))
    for m, n in ((1, 1), (1, 3), (2, 2), (2, 3), (3, 4), (3, 5), (4, 4)):
        for c1, c2 in ((1, 1), (1, -1)):
            out.append(_kc(kac.exceptional_angle_check(m, n, c1, c2)))
    for (m, n), s_list in (((1, 2), (0, 5)), ((2, 2), (0, 5)), ((2, 3), (0, 5)), ((1, 4), (2, 7))):
        for s in s_list:
            out += [_kc(c) for c in kac.rank_checks(m, n, s, 2, 3)]
    for m, n in ((1, 3), (3, 3), (3, 5), (1, 5)):
        for s in (2 * m * n, 2 * m * n + 3):
            out += [_kc(c) for c in kac.rank_checks(m, n, s, 2, 3)]
    return out


# ---------------------------------------------------------------------------
RIGIDITY_SETS = {
    "i": [(g, g, mu, mu, 1 + g * (mu[0] + mu[1]) // 2, 1 + g * (mu[0] + mu[1]) // 2, 0)
          for g, mu in ((1, (2, 2)), (1, (5, 5)), (2, (1, 3)), (2, (4, 2)), (3, (1, 1)), (3, (2, 2)),
                        (4, (1, 2)), (4, (2, 1)), (4, (3, 4)), (6, (1, 1)), (6, (2, 2)))],
    # C = -3/5, n = l + 1, m = 2l - 3, (g1, g2) = (1, 2), m11 = m21 = l
    "ii": [(1, 2, (l, l), (l, l - 4), l + 1, 2 * l - 3, Fraction(-3, 5)) for l in (5, 6, 7, 8)],
    # C = -3/5, m = 2n - 3, (g1, g2) = (2, 4), m11 = m21 = k
    "iv": [(2, 4, (k, n - 1 - k), (k, n - 2 - k), n, 2 * n - 3, Fraction(-3, 5))
           for n, k in ((6, 2), (7, 2), (8, 3), (9, 4))],
}

# Parameter sets for which the rigidity series vanish identically; reported
# next to the sets above, which leave a nonzero constant-order difference.
CORRECTED_RIGIDITY_SETS = {
    "ii_corrected": [(1, 2, (l, l), (l, l), l + 1, 2 * l + 1, Fraction(-3, 5)) for l in (3, 4, 5, 6)],
    "iii_corrected": [(1, 4, (mu, mu), (mu, mu), mu + 1, 4 * mu + 1, Fraction(-15, 17)) for mu in (1, 2, 3, 5)],
    "iv_corrected": [(2, 4, (k, n - 1 - k), (k, n - 1 - k), n, 2 * n - 1, Fraction(-3, 5))
                     for n, k in ((6, 2), (7, 2), (8, 3), (9, 4))],
}


def series_checks(seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    out = []
    csc = series.expand("csc2")
    want = {-2: Fraction(1), 0: Fraction(1, 3), 2: Fraction(1, 15), 4: Fraction(2, 189)}
    ok = all(csc.coeff(e) == v for e, v in want.items())
    out.append(CheckResult.exact("series.csc2_coefficients", "scale=1", ok, repr(csc)))
    out.append(CheckResult.exact("series.tan2_constant", "scale=1", series.expand("tan2").coeff(0) == 0))
    for fn in series.SUPPORTED_FUNCTIONS:
        for scale in (Fraction(1), Fraction(3, 2), Fraction(2, 5)):
            e = series.expand(fn, scale)
            worst = max(abs(e(s) - series.direct_value(fn, s, float(scale))) for s in (0.01, -0.01, 0.005))
            out.append(CheckResult.numeric("series.expansion_numeric", f"{fn},scale={scale}", worst, tol.series_numeric))
    for g in (1, 2, 3, 4, 6):
        rng = stream_rng(seed, f"series:cot:{g}")
        xs = rng.uniform(0.05, math.pi / g - 0.05, 100)
        out.append(CheckResult.numeric("series.cot_sum_identity", f"g={g}", series.cot_sum_identity_check(g, xs),
                                       tol.series_numeric, "relative to max(1, |rhs|), 100 samples"))
    out.append(CheckResult.exact("series.kappa_roots", "g2_case4",
                                 series.kappa_roots("g2_case4") == {1, 4, Fraction(-4, 5)}))
    out.append(CheckResult.exact("series.kappa_roots", "g4_case5",
                                 series.kappa_roots("g4_case5") == {4, 16, Fraction(-16, 5)}))
    out.append(CheckResult.exact("series.kappa_cubic_from_ratio", "g2_case4",
                                 series.case4_cubic_from_ratio() == series.kappa_cubic("g2_case4")))
    for label, sets in (*RIGIDITY_SETS.items(), *CORRECTED_RIGIDITY_SETS.items()):
        for g1, g2, m1, m2, n, m, C in sets:
            r = series.rigidity_series_residual(g1, g2, m1, m2, n, m, C)
            inst = f"set={label},g=({g1},{g2}),mults={m1}/{m2},n={n},m={m},C={C}"
            fnz = r.first_nonzero()
            wit = "" if fnz is None else f"first nonzero difference at s^{fnz[0]}: {fnz[1]}"
            out.append(CheckResult.exact(f"series.rigidity_{label}", inst, r.vanishes, wit))
    # the (1, 4) case with m11 = 5 and the pair {1, 5} in either order
    for pair in ((1, 5), (5, 1)):
        r = series.rigidity_series_residual(1, 4, (5, 5), pair, 6, 13, Fraction(-15, 17))
        fnz = r.first_nonzero()
        out.append(CheckResult.exact("series.rigidity_iii", f"set=iii,mults2={pair}", r.vanishes,
                                     "" if fnz is None else f"first nonzero difference at s^{fnz[0]}: {fnz[1]}"))
    ent = series.enumerate_otfkm_multiplicities(64)
    pairs = series.pairs_with_difference(ent, 4)
    out.append(CheckResult.exact("series.otfkm_difference_4", "l<=64", pairs == {(5, 1)}, f"pairs {sorted(pairs)}"))
    return out


# ---------------------------------------------------------------------------
def _same_component_pair(fam: MTF, rng):
    x, y = fam.sample_level(rng)
    for _ in range(100):
        x2, y2 = fam.sample_level(rng)
        if fam.field_name != "R" or np.dot(x, y) * np.dot(x2, y2) > 0:
            return (x, y), (x2, y2)
    raise RuntimeError("could not sample a same-component pair")


def witness_checks(seed: int = 42, draws: int = 100, tol: Tolerances = DEFAULT_TOL) -> list:
    """Constructive transitivity for the field families and the graph symmetry."""
    out = []
    for f in ("R", "C", "H"):
        fam = MTF(f, 2, 0.3)
        worst = worst_u = worst_l = 0.0
        for i in range(draws):
            p, q = _same_component_pair(fam, stream_rng(seed, "witness:" + fam.label(), i))
            try:
                w = mtf_witness(f, p, q)
            except NoWitnessError as exc:  # pragma: no cover - excluded by sampling
                worst = math.inf
                out.append(CheckResult.exact("witness.mtf_error", fam.label(), False, str(exc)))
                continue
            worst = max(worst, w.residual)
            worst_u = max(worst_u, w.unitarity)
            worst_l = max(worst_l, w.linearity)
        out.append(CheckResult.numeric("witness.mtf", fam.label(), worst, tol.witness, f"{draws} same-level pairs"))
        out.append(CheckResult.numeric("witness.mtf_unitary", fam.label(), max(worst_u, worst_l), tol.witness,
                                       "orthogonality and F-linearity of the real matrix"))
    # a point on one component of <x,y> != 0 cannot be carried to the other
    fam = MTF("R", 2, 0.3)
    p, _ = _same_component_pair(fam, stream_rng(seed, "witness:refuse"))
    q = (p[0], -p[1])
    try:
        mtf_witness("R", p, q)
        refused = False
    except NoWitnessError:
        refused = True
    out.append(CheckResult.exact("witness.mtf_refuses_other_component", fam.label(), refused))
    for g in (GraphSH(3, 0.5, t=0.2), GraphSH(4, 2.0, t=-0.5)):
        worst = 0.0
        for i in range(draws):
            rng = stream_rng(seed, "symmetry:" + g.label(), i)
            x, y = g.sample_level(rng)
            theta = float(rng.uniform(-math.pi, math.pi))
            worst = max(worst, graph_symmetry_check(g, x, y, theta, rng))
        out.append(CheckResult.numeric("witness.graph_symmetry", g.label(), worst, tol.symmetry,
                                       f"{draws} draws of rotation angle and stabilizer element"))
    return out


# ---------------------------------------------------------------------------
def family_battery(fam, parts=("iso", "angle", "spectrum", "structure"), samples: int = 1000,
                   geo_samples: int = 20, seed: int = 42, tol: Tolerances = DEFAULT_TOL) -> list:
    out = []
    if "iso" in parts:
        out += iso_checks(fam, samples, seed, tol)
    if "angle" in parts:
        out += angle_checks(fam, samples, seed, tol)
    if "spectrum" in parts:
        out += spectrum_checks(fam, geo_samples, seed, tol)
    if "curvature" in parts:
        out += curvature_checks(fam, geo_samples, seed, tol)
    if "structure" in parts:
        out += structure_checks(fam, geo_samples, seed, tol)
    if "flow" in parts:
        out += flow_checks(fam, max(1, geo_samples // 10), seed, tol)
    return out


def _run_job(job):
    kind, payload = job
    if kind == "family":
        fam_dict, parts, kw = payload
        return family_battery(family_from_dict(fam_dict), parts, **kw)
    fn = globals()[kind]
    return fn(**payload)


def run_jobs(jobs, workers: int = 1) -> list:
    """Run jobs serially or in a process pool; output order is independent of ``workers``."""
    if workers <= 1:
        results = [_run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_job, jobs))
    out = []
    for r in results:
        out.extend(r)
    return sorted(out, key=CheckResult.key)


def full_battery(samples: int = 1000, geo_samples: int = 20, seed: int = 42, tol: Tolerances = DEFAULT_TOL,
                 workers: int = 1) -> list:
    """Every check at desk scale."""
    kw = {"samples": samples, "geo_samples": geo_samples, "seed": seed, "tol": tol}
    jobs = [("clifford_checks", {})]
    jobs += [("family", (family_to_dict(f), ("iso", "angle"), kw)) for f in iso_instances()]
    jobs += [("family", (family_to_dict(f), ("spectrum", "curvature", "structure"), kw)) for f in geo_instances()]
    jobs += [("family", (family_to_dict(f), ("flow",), {**kw, "geo_samples": 20})) for f in flow_instances()]
    jobs += [("focal_checks", {"seed": seed, "tol": tol}),
             ("kac_checks", {"seed": seed}),
             ("series_checks", {"seed": seed, "tol": tol}),
             ("witness_checks", {"seed": seed, "tol": tol})]
    return run_jobs(jobs, workers)


def clusters_summary(values, tol: float = 1e-6) -> str:
    """Readable ``value x multiplicity`` list (used in CLI output)."""
    cl, _ = cluster_values(values, tol)
    return ", ".join(f"{v:.9g} x{k}" for v, k in cl)
