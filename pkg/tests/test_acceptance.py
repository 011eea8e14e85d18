"""Acceptance criteria 1 to 10.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (collected and
repeated in the pytest terminal summary by ``conftest.py``) and then asserts
the criterion.  Run directly with ``python3 tests/test_acceptance.py`` to get
just the ten lines.
"""
from __future__ import annotations

import subprocess
import sys
import time

from isogeo import battery
from isogeo.report import digest

LINES: dict = {}


def _record(k: int, title: str, results, elapsed=None, budget=None, extra: str = "") -> bool:
    failed = [r for r in results if not r.passed]
    ok = bool(results) and not failed
    timing = ""
    if budget is not None:
        timing = f", {elapsed:.1f} s (budget {budget:g} s)"
        ok = ok and elapsed < budget
    status = "PASS" if ok else "FAIL"
    detail = f"{len(results)} checks, {len(failed)} failed{timing}"
    if failed:
        names = sorted({r.name for r in failed})
        detail += "; failing: " + ", ".join(names)
        worst = failed[0]
        detail += f"; e.g. {worst.name} [{worst.instance}] residual={worst.max_residual}"
    if extra:
        detail += "; " + extra
    line = f"criterion {k:2d}: {status}  {title}: {detail}"
    LINES[k] = line
    print(line)
    return ok


def _timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t0


def _pick(results, names):
    return [r for r in results if r.name in names]


def test_criterion_01_clifford():
    res, dt = _timed(battery.clifford_checks, 9, 2)
    ok = _record(1, "Clifford relations p<=9, k<=2", res, dt, 5.0)
    assert ok, LINES[1]


def test_criterion_02_isoparametric():
    def run():
        out = []
        for fam in battery.iso_instances():
            out += battery.iso_checks(fam, 1000, 42)
        return out

    res, dt = _timed(run)
    res = _pick(res, {"iso.gradient_law", "iso.laplacian_law", "iso.on_level"})
    ok = _record(2, "isoparametric identities, 1000 samples", res, dt, 30.0)
    assert ok, LINES[2]


def test_criterion_03_spectra():
    res = []
    for fam in battery.geo_instances():
        res += battery.spectrum_checks(fam, 20, 42)
    res = _pick(res, {"spectrum.stated", "spectrum.five_clusters"})
    ok = _record(3, "closed-form spectra and MHat cluster count", res)
    assert ok, LINES[3]


def test_criterion_04_angle():
    res = []
    for fam in battery.iso_instances():
        res += battery.angle_checks(fam, 1000, 42)
    ok = _record(4, "constant angle function", res)
    assert ok, LINES[4]


def test_criterion_05_structure():
    res = []
    for fam in battery.geo_instances():
        res += battery.structure_checks(fam, 20, 42)
    res = _pick(res, {"structure.av_zero", "structure.rigidity", "structure.pairing"})
    ok = _record(5, "AV = 0, rigidity identity, curvature pairing", res)
    assert ok, LINES[5]


def test_criterion_06_flow():
    res = []
    for fam in battery.flow_instances():
        res += battery.family_battery(fam, ("flow",), geo_samples=20, seed=42)
    res += battery.focal_checks(42)
    ok = _record(6, "Riccati, focal distances, Jacobi determinant, V-flow", res)
    assert ok, LINES[6]


KAC_CRITERION = {
    "kac.kac_charpoly", "kac.detQ_symbolic", "kac.pq_row_vs_Q_power",
    "kac.coeff_parity", "kac.coeff_factorial", "kac.coeff_degree",
    "kac.rank_full", "kac.rank_Lambda", "kac.rank_Lambda_s", "kac.chessboard",
}


def test_criterion_07_kac():
    res, dt = _timed(battery.kac_checks, 42)
    res = _pick(res, KAC_CRITERION)
    ok = _record(7, "exact tau-Kac suite", res, dt, 120.0)
    assert ok, LINES[7]


SERIES_CRITERION = {
    "series.csc2_coefficients", "series.cot_sum_identity", "series.kappa_roots",
    "series.rigidity_i", "series.rigidity_ii", "series.rigidity_iv", "series.otfkm_difference_4",
}


def test_criterion_08_series():
    res = _pick(battery.series_checks(42), SERIES_CRITERION)
    ok = _record(8, "exact series suite", res)
    assert ok, LINES[8]


def test_criterion_09_witnesses():
    res = _pick(battery.witness_checks(42), {"witness.mtf", "witness.graph_symmetry"})
    ok = _record(9, "homogeneity witnesses", res)
    assert ok, LINES[9]


def _cli_all(workers: int) -> bytes:
    proc = subprocess.run([sys.executable, "-m", "isogeo", "all", "--seed", "42", "--workers", str(workers)],
                          capture_output=True, check=False)
    assert proc.returncode in (0, 1), proc.stderr.decode()
    return proc.stdout


def test_criterion_10_determinism():
    a = _cli_all(1)
    b = _cli_all(4)
    same = digest(a) == digest(b)
    ok = same and len(a) > 0
    line = (f"criterion 10: {'PASS' if ok else 'FAIL'}  determinism of `all` (workers 1 vs 4): "
            f"digest {digest(a)[:16]} vs {digest(b)[:16]}, {len(a)} bytes")
    LINES[10] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    bad = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
