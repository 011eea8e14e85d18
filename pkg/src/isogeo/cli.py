"""Command-line entry point: ``isogeo <command> [options]``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
a usage error (bad flags, invalid family parameters, degenerate Kac
parameters).  Reports go to standard output (or ``--output``); diagnostics
go to standard error.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import battery, flows
from .catalog import family_from_dict
from .clifford import gen_system, system_from_json, system_to_json
from .kac import recurrences as kac
from .report import CheckResult, all_passed, emit

__all__ = ["main", "build_parser", "resolve_tolerances", "TOL_ENV"]

TOL_ENV = "ISOGEO_TOL_RESIDUAL"
DEFAULT_RESIDUAL_TOL = 1e-9


class UsageError(Exception):
    """Invalid arguments detected after parsing."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run options")
    g.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    g.add_argument("--samples", type=_positive_int, default=1000,
                   help="samples per family for the isoparametric and angle checks (default 1000)")
    g.add_argument("--geo-samples", type=_positive_int, default=20,
                   help="samples per family for shape-operator checks (default 20)")
    g.add_argument("--tol", type=float, default=None,
                   help=f"residual tolerance for the isoparametric identities (default 1e-9, or ${TOL_ENV})")
    g.add_argument("--workers", type=_positive_int, default=1, help="worker processes (default 1)")
    g.add_argument("--format", choices=("json", "csv"), default="json", help="report format")
    g.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")
    g.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from the report")
    return p


def _family_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family")
    g.add_argument("--family", choices=("mt", "mhat", "graph", "mtf"), help="family tag")
    g.add_argument("--family-json", type=Path, help="family specification JSON file")
    g.add_argument("--n", type=int, help="sphere dimension (mt) or field rank (mtf)")
    g.add_argument("--m", type=int, help="hyperbolic dimension (graph)")
    g.add_argument("--p", type=int, help="Clifford parameter (mhat)")
    g.add_argument("--l", type=int, help="Clifford module dimension (mhat)")
    g.add_argument("--a", type=float, help="slope (graph), nonzero")
    g.add_argument("--t", type=float, help="level value")
    g.add_argument("--field", choices=("R", "C", "H"), help="field (mtf)")
    g.add_argument("--branch", type=int, choices=(1, -1), default=1, help="branch of cos (graph)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="isogeo", description="Verification battery for isoparametric hypersurfaces "
                                     "in products of space forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    cl = sub.add_parser("clifford", help="generate or verify Clifford systems", parents=[common])
    cl_sub = cl.add_subparsers(dest="action", required=True)
    gen = cl_sub.add_parser("gen", help="write a generated system as JSON", parents=[common])
    gen.add_argument("--p", type=_positive_int, required=True)
    gen.add_argument("--k", type=_positive_int, default=1)
    gen.add_argument("--no-P", dest="with_P", action="store_false", help="omit the symmetric system")
    ver = cl_sub.add_parser("verify", help="verify generated or stored systems", parents=[common])
    ver.add_argument("--p", type=_positive_int, help="verify gen_system(p, k); default: all p <= 9, k <= 2")
    ver.add_argument("--k", type=_positive_int, default=1)
    ver.add_argument("--input", type=Path, help="system JSON file to verify")

    for name, helptext in (("verify", "isoparametric, angle, spectrum, rigidity and AV checks"),
                           ("spectrum", "principal curvatures and curvature closed forms"),
                           ("flow", "Riccati, focal, Jacobi-determinant and V-flow checks")):
        sp = sub.add_parser(name, help=helptext, parents=[common])
        _family_args(sp)

    k = sub.add_parser("kac", help="exact tau-Kac algebra checks", parents=[common])
    k_sub = k.add_subparsers(dest="action", required=True)
    kv = k_sub.add_parser("verify", help="recurrences, ranks and degree claims", parents=[common])
    kv.add_argument("--m", type=_positive_int, default=2)
    kv.add_argument("--n", type=_positive_int, default=3)
    kv.add_argument("--kmax", type=int, default=None, help="default 2mn + 4")
    kv.add_argument("--tau1", type=_fraction, default=Fraction(2))
    kv.add_argument("--tau2", type=_fraction, default=Fraction(3))
    kv.add_argument("--s", type=int, default=None, help="default 0 (some dimension even) or 2mn (both odd)")

    s = sub.add_parser("series", help="exact Laurent-series checks", parents=[common])
    s_sub = s.add_subparsers(dest="action", required=True)
    s_sub.add_parser("check", help="run the series battery", parents=[common])

    sub.add_parser("all", help="full battery at desk scale", parents=[common])
    return parser


def resolve_tolerances(flag: Optional[float], env: Optional[dict] = None) -> battery.Tolerances:
    """Residual tolerance: flag, else ``$ISOGEO_TOL_RESIDUAL``, else 1e-9."""
    env = os.environ if env is None else env
    value = flag
    if value is None and env.get(TOL_ENV):
        try:
            value = float(env[TOL_ENV])
        except ValueError as exc:
            raise UsageError(f"{TOL_ENV} is not a number: {env[TOL_ENV]!r}") from exc
    if value is None:
        value = DEFAULT_RESIDUAL_TOL
    if not value > 0:
        raise UsageError("tolerances must be positive")
    return replace(battery.DEFAULT_TOL, residual=value)


def _family(args):
    if args.family_json is not None:
        try:
            obj = json.loads(args.family_json.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read family JSON: {exc}") from exc
        base = args.family_json.parent

        def loader(ref):
            return system_from_json((base / ref).read_text())

        try:
            return family_from_dict(obj, loader)
        except (KeyError, ValueError, TypeError, OSError) as exc:
            raise UsageError(f"invalid family specification: {exc}") from exc
    if args.family is None:
        raise UsageError("give --family or --family-json")
    defaults = {"mt": {"n": 3, "t": 0.2}, "mhat": {"p": 2, "l": 4, "t": 0.4},
                "graph": {"m": 3, "a": 1.0, "t": 0.0}, "mtf": {"field": "C", "n": 2, "t": 0.3}}[args.family]
    obj = {"tag": args.family}
    for key, dv in defaults.items():
        v = getattr(args, key)
        obj[key] = dv if v is None else v
    if args.family == "graph":
        obj["branch"] = args.branch
    try:
        return family_from_dict(obj)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _focal_summary(fam, seed) -> list:
    x, y = fam.sample_level(battery.stream_rng(seed, "focal:" + fam.label()))
    fd = flows.focal_distances(fam, x, y, t_max=10.0)
    return [CheckResult.exact("flow.focal_scan", fam.label(), True, f"focal distances in (0, 10]: {fd[:6]}")]


def _kac_results(args) -> list:
    m, n = args.m, args.n
    kmax = 2 * m * n + 4 if args.kmax is None else args.kmax
    if kmax < 2:
        raise UsageError("--kmax must be >= 2")
    both_odd = bool(m % 2 and n % 2)
    s = (2 * m * n if both_odd else 0) if args.s is None else args.s
    if both_odd and s < 2 * m * n:
        raise UsageError("for m, n both odd the rank statement needs --s >= 2mn")
    if s < 0:
        raise UsageError("--s must be >= 0")
    try:
        ranks = kac.rank_checks(m, n, s, args.tau1, args.tau2)
    except kac.DegenerateParameters as exc:
        raise UsageError(f"degenerate (tau1, tau2): {exc}") from exc
    checks = [kac.kac_charpoly_check(d) for d in sorted({m, n})]
    if m * n <= 6:
        checks.append(kac.detQ_check(m, n))
    else:
        checks.append(kac.detQ_numeric_check(m, n, [(args.tau1, args.tau2), (Fraction(1, 3), Fraction(-2, 7))]))
    checks.append(kac.pq_matches_Q(m, n, kmax))
    checks += ranks
    out = [battery._kc(c) for c in checks]
    rep = kac.verify_coefficient_structure(m, n, kmax)
    wit = "; ".join(rep.violations[:3])
    out.append(CheckResult.exact("kac.coeff_parity", rep.instance, rep.parity_ok and rep.grid_consistent, wit))
    out.append(CheckResult.exact("kac.coeff_factorial", rep.instance, rep.factorial_ok, wit))
    out.append(CheckResult.exact("kac.coeff_degree", rep.instance, rep.degree_ok,
                                 f"degree >= s in each variable separately: {rep.per_variable_ok}"))
    return out


def _run(args) -> list:
    tol = resolve_tolerances(args.tol)
    kw = {"samples": args.samples, "geo_samples": args.geo_samples, "seed": args.seed, "tol": tol}
    cmd = args.command
    if cmd == "clifford":
        if args.action == "gen":
            text = system_to_json(gen_system(args.p, args.k, args.with_P), include_P=args.with_P)
            _write(text.encode("utf-8"), args.output)
            return []
        if args.input is not None:
            try:
                systems = [(str(args.input), system_from_json(args.input.read_text()))]
            except (OSError, ValueError, KeyError) as exc:
                raise UsageError(f"cannot read Clifford system: {exc}") from exc
            out = []
            for inst, sysm in systems:
                from .clifford import verify_system

                for rc in verify_system(sysm):
                    out.append(CheckResult.exact(f"clifford.{rc.name}", inst, rc.passed,
                                                 "" if rc.passed else f"first violation {rc.first_violation}"))
            return out
        if args.p is not None:
            return [r for r in battery.clifford_checks(args.p, args.k) if r.instance.startswith(f"p={args.p},k={args.k},")]
        return battery.clifford_checks()
    if cmd in ("verify", "spectrum", "flow"):
        fam = _family(args)
        parts = {"verify": ("iso", "angle", "spectrum", "structure"),
                 "spectrum": ("spectrum", "curvature"),
                 "flow": ("flow",)}[cmd]
        out = battery.family_battery(fam, parts, **kw)
        if cmd == "flow":
            out += _focal_summary(fam, args.seed)
        return out
    if cmd == "kac":
        return _kac_results(args)
    if cmd == "series":
        return battery.series_checks(args.seed, tol)
    if cmd == "all":
        return battery.full_battery(args.samples, args.geo_samples, args.seed, tol, args.workers)
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def _write(data: bytes, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        path.write_bytes(data)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        results = _run(args)
    except UsageError as exc:
        print(f"isogeo: error: {exc}", file=sys.stderr)
        return 2
    if not results:  # clifford gen
        return 0
    stamp = None if args.no_timestamp else _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    _write(emit(results, args.format, seed=args.seed, timestamp=stamp), args.output)
    failed = [r for r in results if not r.passed]
    print(f"isogeo: {len(results)} checks, {len(failed)} failed", file=sys.stderr)
    for r in failed[:20]:
        print(f"  FAIL {r.name} [{r.instance}] residual={r.max_residual} {r.witness}".rstrip(), file=sys.stderr)
    if len(failed) > 20:
        print(f"  ... and {len(failed) - 20} more", file=sys.stderr)
    return 0 if all_passed(results) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
