import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isogeo.report import CheckResult, all_passed, digest, emit, parse, same_report


def test_single_passing_check_json():
    data = emit([CheckResult.numeric("a", "x", 1e-12, 1e-9)], seed=42, timestamp="2026-01-01T00:00:00+00:00")
    obj = json.loads(data)
    assert obj["checks"][0]["pass"] is True
    assert obj["version"] == 1 and obj["seed"] == 42 and obj["timestamp_excluded_from_hash"] is True
    assert list(obj) == ["version", "seed", "timestamp", "timestamp_excluded_from_hash", "checks"]


def test_pass_invariant():
    assert not CheckResult.numeric("a", "x", 2e-9, 1e-9).passed
    assert CheckResult.numeric("a", "x", 1e-9, 1e-9).passed
    assert not CheckResult.numeric("a", "x", math.nan, 1e-9).passed
    assert CheckResult.exact("a", "x", True).max_residual == "exact"
    with pytest.raises(ValueError):
        CheckResult.numeric("a", "x", 0.0, 0.0)


def test_errors():
    with pytest.raises(ValueError):
        emit([])
    with pytest.raises(ValueError):
        emit([CheckResult.exact("a", "x", True)], fmt="xml")


def test_sorted_and_csv_header():
    rs = [CheckResult.exact("b", "1", True), CheckResult.numeric("a", "2", 0.5, 1.0), CheckResult.exact("a", "1", False)]
    csv = emit(rs, "csv").decode().splitlines()
    assert csv[0] == "name,instance,max_residual,tolerance,pass"
    assert [l.split(",")[:2] for l in csv[1:]] == [["a", "1"], ["a", "2"], ["b", "1"]]
    assert not all_passed(rs)


def test_golden_comparison_ignores_timestamp():
    rs = [CheckResult.numeric("a", "x", 0.1, 1.0)]
    a = emit(rs, seed=1, timestamp="2026-01-01T00:00:00+00:00")
    b = emit(rs, seed=1, timestamp="2026-02-02T00:00:00+00:00")
    assert a != b and same_report(a, b) and digest(a) == digest(b)
    assert digest(a) != digest(emit(rs, seed=2, timestamp=None))


residual = st.one_of(st.floats(allow_nan=False, allow_infinity=True), st.just(math.nan))
text = st.text(st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=12)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(text, text, residual, st.floats(1e-12, 1.0), st.booleans(), st.booleans(), text),
                min_size=1, max_size=8))
def test_roundtrip(rows):
    rs = []
    for name, inst, r, tol, is_exact, ok, wit in rows:
        rs.append(CheckResult.exact(name, inst, ok, wit) if is_exact else CheckResult.numeric(name, inst, r, tol, wit))
    for fmt in ("json", "csv"):
        data = emit(rs, fmt, seed=3)
        _, back = parse(data, fmt)
        exp = sorted(rs, key=CheckResult.key)
        assert len(back) == len(exp)
        for x, y in zip(back, exp):
            assert (x.name, x.instance, x.passed) == (y.name, y.instance, y.passed)
            for u, v in ((x.max_residual, y.max_residual), (x.tolerance, y.tolerance)):
                assert u == v or (isinstance(u, float) and math.isnan(u) and math.isnan(v))
            if fmt == "json":
                assert x.witness == y.witness
        assert emit(back, fmt, seed=3) == data or fmt == "csv"
