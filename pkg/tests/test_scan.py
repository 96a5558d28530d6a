import csv
from concurrent.futures import ThreadPoolExecutor

import pytest

from gardner_collocation.problems import preset
from gardner_collocation.scan import ScanSpec, error_at, objective_time_for, scan, write_trace_csv

SMALL = ScanSpec(lo=-0.05, hi=0.05, coarse_step=0.01, refine_rounds=2)


def test_degenerate_interval():
    p = preset("pulse")
    res = scan(p, ScanSpec(lo=0.0, hi=0.0))
    assert res.lambda_star == 0.0
    assert res.linf_star == error_at(p, 0.0, 2.5)
    assert len(res.trace) == 1


def test_best_dominates_trace_and_zero():
    p = preset("kink").with_overrides(n=100)
    res = scan(p, SMALL)
    assert all(res.linf_star <= e for _, e in res.trace)
    assert 0.0 in dict(res.trace)
    assert res.linf_star <= error_at(p, 0.0, res.objective_time)


def test_deterministic_and_order_independent():
    p = preset("kink").with_overrides(n=100)
    a = scan(p, SMALL)
    with ThreadPoolExecutor(3) as pool:
        b = scan(p, SMALL, map_fn=pool.map)
    assert (a.lambda_star, a.linf_star) == (b.lambda_star, b.linf_star)
    assert a.trace == b.trace


def test_objective_time():
    assert objective_time_for(preset("kink"), ScanSpec()) == 4.0
    assert objective_time_for(preset("kink"), ScanSpec(objective_time=12.0)) == 12.0


def test_trace_csv_round_trip(tmp_path):
    res = scan(preset("pulse"), ScanSpec(lo=-0.1, hi=0.1, coarse_step=0.05, refine_rounds=0))
    path = tmp_path / "trace.csv"
    write_trace_csv(res, path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["lambda", "linf"]
    values = [(float(a), float(b)) for a, b in rows[1:]]
    assert values == sorted(res.trace)
    assert [lam for lam, _ in values] == [-0.1, -0.05, 0.0, 0.05, 0.1]


def test_scan_needs_exact_solution():
    with pytest.raises(ValueError):
        scan(preset("generation"), SMALL)


@pytest.mark.parametrize("kwargs", [dict(lo=1, hi=0), dict(coarse_step=0), dict(refine_rounds=-1)])
def test_scanspec_validation(kwargs):
    with pytest.raises(ValueError):
        ScanSpec(**kwargs)


def test_kink_scan_reproduces_reference_parameter():
    p = preset("kink").with_overrides(n=100)
    res = scan(p)
    assert res.lambda_star == pytest.approx(-0.0185, abs=1e-3)
    assert error_at(p, res.lambda_star, 12.0) == pytest.approx(1.2e-5, rel=0.1)


def test_pulse_scan():
    p = preset("pulse").with_overrides(n=100)
    res = scan(p)
    assert -0.01 < res.lambda_star < -0.005
    assert error_at(p, res.lambda_star, 5.0) == pytest.approx(2.3e-5, rel=0.15)
