import numpy as np

from isogeo import battery
from isogeo.catalog import MT, family_to_dict


def test_stream_rng_is_keyed_by_name_and_index():
    a = battery.stream_rng(42, "x", 3).random(4)
    assert np.array_equal(a, battery.stream_rng(42, "x", 3).random(4))
    assert not np.array_equal(a, battery.stream_rng(42, "y", 3).random(4))
    assert not np.array_equal(a, battery.stream_rng(42, "x", 4).random(4))


def test_run_jobs_order_independent_of_workers():
    kw = {"samples": 20, "geo_samples": 2, "seed": 1, "tol": battery.DEFAULT_TOL}
    jobs = [("family", (family_to_dict(MT(n, 0.2)), ("iso", "angle"), kw)) for n in (3, 1, 2)]
    jobs.append(("clifford_checks", {"p_max": 2, "k_max": 1}))
    serial = battery.run_jobs(jobs, 1)
    parallel = battery.run_jobs(jobs, 3)
    assert serial == parallel
    assert [r.key() for r in serial] == sorted(r.key() for r in serial)


def test_instance_lists_cover_the_stated_ranges():
    labels = [f.label() for f in battery.iso_instances()]
    assert sum(l.startswith("MT(") for l in labels) == 7
    assert sum(l.startswith("GraphSH(") for l in labels) == 15
    assert sum(l.startswith("MTF(") for l in labels) == 9
