"""Machine-readable verification reports.

A report is a list of :class:`CheckResult` records sorted by
``(name, instance)`` and written as JSON or CSV with a fixed field order.
Residuals are printed with 17 significant digits so that parsing returns
the same binary floats; exact checks carry the literal string ``"exact"``.
The timestamp, when present, is excluded from :func:`digest`, so two runs
with equal results compare equal.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

__all__ = [
    "EXACT",
    "REPORT_VERSION",
    "CheckResult",
    "emit",
    "parse",
    "digest",
    "same_report",
    "all_passed",
]

EXACT = "exact"
REPORT_VERSION = 1
CSV_HEADER = ["name", "instance", "max_residual", "tolerance", "pass"]

Number = Union[float, str]


@dataclass(frozen=True)
class CheckResult:
    """One verification outcome.

    ``passed`` is ``True`` iff the check is exact without violations, or
    ``max_residual <= tolerance``.  Use :meth:`numeric` and :meth:`exact`
    rather than the raw constructor so that this invariant holds.
    """

    name: str
    instance: str
    max_residual: Number
    tolerance: Number
    passed: bool
    witness: str = ""

    @classmethod
    def numeric(cls, name: str, instance: str, residual: float, tolerance: float, witness: str = "") -> "CheckResult":
        if not tolerance > 0:
            raise ValueError("tolerance must be positive")
        r = float(residual)
        ok = bool(r <= tolerance)  # NaN compares False
        return cls(name, instance, r, float(tolerance), ok, witness)

    @classmethod
    def exact(cls, name: str, instance: str, ok: bool, witness: str = "") -> "CheckResult":
        return cls(name, instance, EXACT, EXACT, bool(ok), witness)

    def key(self):
        return (self.name, self.instance)


def _fmt_num(v: Number) -> str:
    """Number as a JSON token (17 significant digits) or a quoted literal."""
    if isinstance(v, str):
        return json.dumps(v)
    v = float(v)
    if math.isnan(v):
        return json.dumps("nan")
    if math.isinf(v):
        return json.dumps("inf" if v > 0 else "-inf")
    return format(v + 0.0, ".17g")  # + 0.0 folds -0.0, which JSON would read back as integer 0


def _csv_num(v: Number) -> str:
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v + 0.0, ".17g")


def _csv_field(f: str) -> str:
    # the csv module leaves a lone carriage return unquoted when the line
    # terminator is "\n", so quote by hand: any of , " CR LF forces quotes
    if any(ch in f for ch in ',"\r\n'):
        return '"' + f.replace('"', '""') + '"'
    return f


def _parse_num(v) -> Number:
    if isinstance(v, (int, float)):
        return float(v)
    if v == EXACT:
        return EXACT
    return float(v)  # handles "nan", "inf", "-inf" and numeric strings


def _sorted(results: Iterable[CheckResult]) -> list:
    return sorted(results, key=CheckResult.key)


def emit(results: Iterable[CheckResult], fmt: str = "json", seed: Optional[int] = None,
         timestamp: Optional[str] = None) -> bytes:
    """Serialize results deterministically.

    Parameters
    ----------
    results : iterable of CheckResult
        Must be nonempty; emitted sorted by ``(name, instance)``.
    fmt : {"json", "csv"}
    seed : int, optional
        Recorded in the JSON header.
    timestamp : str, optional
        Recorded in the JSON header and ignored by :func:`digest`.

    Raises
    ------
    ValueError
        Empty results or an unknown format.
    """
    rows = _sorted(results)
    if not rows:
        raise ValueError("no results to emit")
    if fmt == "json":
        lines = [
            "{",
            f'  "version": {REPORT_VERSION},',
            f'  "seed": {json.dumps(seed)},',
            f'  "timestamp": {json.dumps(timestamp)},',
            '  "timestamp_excluded_from_hash": true,',
            '  "checks": [',
        ]
        body = []
        for r in rows:
            body.append(
                "    {"
                f'"name": {json.dumps(r.name)}, '
                f'"instance": {json.dumps(r.instance)}, '
                f'"max_residual": {_fmt_num(r.max_residual)}, '
                f'"tolerance": {_fmt_num(r.tolerance)}, '
                f'"pass": {"true" if r.passed else "false"}, '
                f'"witness": {json.dumps(r.witness)}'
                "}"
            )
        lines.append(",\n".join(body))
        lines += ["  ]", "}"]
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "csv":
        out = [",".join(CSV_HEADER)]
        for r in rows:
            fields = [r.name, r.instance, _csv_num(r.max_residual), _csv_num(r.tolerance),
                      "true" if r.passed else "false"]
            out.append(",".join(_csv_field(f) for f in fields))
        return ("\n".join(out) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def parse(data: bytes, fmt: str = "json"):
    """Inverse of :func:`emit`.

    Returns
    -------
    meta : dict
        JSON header fields (empty for CSV).
    results : list of CheckResult
        CSV carries no witness, so parsed witnesses are empty there.
    """
    text = data.decode("utf-8")
    if fmt == "json":
        obj = json.loads(text)
        meta = {k: v for k, v in obj.items() if k != "checks"}
        res = [
            CheckResult(c["name"], c["instance"], _parse_num(c["max_residual"]), _parse_num(c["tolerance"]),
                        bool(c["pass"]), c.get("witness", ""))
            for c in obj["checks"]
        ]
        return meta, res
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text, newline=""))
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        res = [CheckResult(n, i, _parse_num(mr), _parse_num(t), p == "true") for n, i, mr, t, p in reader]
        return {}, res
    raise ValueError(f"unknown report format {fmt!r}")


def _strip_timestamp(data: bytes, fmt: str) -> bytes:
    if fmt != "json":
        return data
    out = []
    for line in data.decode("utf-8").split("\n"):
        if line.startswith('  "timestamp": '):
            line = '  "timestamp": null,'
        out.append(line)
    return "\n".join(out).encode("utf-8")


def digest(data: bytes, fmt: str = "json") -> str:
    """SHA-256 of a report with the timestamp blanked."""
    return hashlib.sha256(_strip_timestamp(data, fmt)).hexdigest()


def same_report(a: bytes, b: bytes, fmt: str = "json") -> bool:
    """Golden comparison: byte equality after blanking timestamps."""
    return _strip_timestamp(a, fmt) == _strip_timestamp(b, fmt)


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in results)
