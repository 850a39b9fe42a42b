"""Suite runner: determinism, reports, reproduction, prospecting."""

import json
import time

import numpy as np
import pytest

import radineq.harness as harness
from radineq.cases import InequalityCase
from radineq.catalog import FAST_OPTIONS, evaluate_bound
from radineq.errors import BadKindError, BadParametersError, BadWindowError, ExampleMismatchError
from radineq.harness import (
    CSV_COLUMNS,
    REPORT_SCHEMA,
    SuiteConfig,
    prospect,
    reproduce_example_2x2,
    resolve_bounds,
    run_suite,
    thread_cap,
    write_report_json,
    write_summary_csv,
)

jsonschema = pytest.importorskip("jsonschema")


def _small_config(**kw):
    base = dict(bounds=("B-N1-SANDWICH", "B-MUNA6", "LEM-FURUTA"),
                trials=6, dims=(2, 3), seed=11)
    base.update(kw)
    return SuiteConfig(**base)


def test_resolve_bounds():
    all_ids = resolve_bounds("all")
    assert len(all_ids) == 55
    assert not any(x.endswith("-PRINTED") for x in all_ids)
    assert resolve_bounds(["B-POWER", "B-POWER", "B-MUNA6"]) == ("B-POWER", "B-MUNA6")
    explicit = resolve_bounds(["B-MUNA6-PRINTED"])
    assert explicit == ("B-MUNA6-PRINTED",)
    with pytest.raises(BadKindError):
        resolve_bounds(["B-NOPE"])


def test_run_suite_sandwich_all_hold():
    report = run_suite(SuiteConfig(bounds=("B-N1-SANDWICH",), trials=10, dims=(2, 3, 4), seed=42))
    (summary,) = report.summaries
    assert summary.trials == 10 and summary.holds == 10
    assert summary.violations == 0 and summary.pre_failed == 0
    assert len(report.records) == 10


def test_same_config_same_digest_and_slacks():
    a = run_suite(_small_config())
    b = run_suite(_small_config())
    assert a.digest == b.digest
    assert [r.slack for r in a.records] == [r.slack for r in b.records]
    assert [r.case_digest for r in a.records] == [r.case_digest for r in b.records]


def test_thread_count_does_not_change_results(monkeypatch):
    monkeypatch.delenv("RG_THREADS", raising=False)
    assert thread_cap() == 1
    serial = run_suite(_small_config())
    monkeypatch.setenv("RG_THREADS", "4")
    assert thread_cap() == 4
    threaded = run_suite(_small_config())
    assert serial.digest == threaded.digest
    assert [r.slack for r in serial.records] == [r.slack for r in threaded.records]


def test_report_schema_and_writers(tmp_path):
    report = run_suite(_small_config())
    payload = report.to_json_dict()
    jsonschema.validate(payload, REPORT_SCHEMA)

    out = tmp_path / "report.json"
    write_report_json(report, out)
    loaded = json.loads(out.read_text())
    jsonschema.validate(loaded, REPORT_SCHEMA)
    assert loaded["digest"] == report.digest

    csv_path = tmp_path / "summary.csv"
    write_summary_csv(report, csv_path)
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(report.summaries)


def test_violation_records_are_recheckable():
    report = run_suite(SuiteConfig(bounds=("B-MUNA6-PRINTED",), trials=40, dims=(2, 3), seed=0))
    (summary,) = report.summaries
    assert summary.violations > 0  # the as-printed variant is falsified
    bad = [r for r in report.records if r.status == "violated"]
    assert len(bad) == summary.violations
    rec = bad[0]
    case = InequalityCase.from_json_dict(rec.case_json)
    again = evaluate_bound("B-MUNA6-PRINTED", case, FAST_OPTIONS)
    assert again.status == "violated"
    assert again.slack == pytest.approx(rec.slack, rel=1e-12)


def test_reproduce_example_values_and_speed():
    t0 = time.perf_counter()
    out = reproduce_example_2x2()
    wall = time.perf_counter() - t0
    assert wall < 1.0
    assert out["w_sq"] == pytest.approx(1.0, abs=1e-9)
    assert out["norm_term"] == pytest.approx(16.0625, abs=1e-9)
    assert out["rhs"] == pytest.approx(7.94, rel=5e-3)
    assert out["check"]["status"] == "holds"


def test_reproduce_example_window_validation():
    with pytest.raises(BadWindowError):
        reproduce_example_2x2(delta=0.4, Delta=0.4)
    with pytest.raises(BadWindowError):
        reproduce_example_2x2(delta=0.5, Delta=0.3)


def test_reproduce_example_detects_perturbation(monkeypatch):
    bumped = harness.EXAMPLE_S.copy()
    bumped[0, 1] += 1e-3
    monkeypatch.setattr(harness, "EXAMPLE_S", bumped)
    with pytest.raises(ExampleMismatchError) as err:
        reproduce_example_2x2()
    assert err.value.measured  # measured values accompany the failure


def test_prospect_counts_and_determinism():
    hit = prospect("B-MUNA6-PRINTED", budget=80, seed=0, dims=(2, 3))
    assert hit["violations"] > 0
    assert hit["best_ratio"] > 1.0
    assert hit["first_violation"] is not None
    case = InequalityCase.from_json_dict(hit["first_violation"]["case"])
    res = evaluate_bound("B-MUNA6-PRINTED", case, FAST_OPTIONS)
    assert res.status == "violated"

    again = prospect("B-MUNA6-PRINTED", budget=80, seed=0, dims=(2, 3))
    assert again["best_ratio"] == hit["best_ratio"]
    assert again["violations"] == hit["violations"]

    clean = prospect("B-MUNA6", budget=60, seed=0, dims=(2, 3))
    assert clean["violations"] == 0
    assert clean["best_ratio"] is None or clean["best_ratio"] <= 1.0 + 1e-8


def test_prospect_unknown_bound():
    with pytest.raises(BadKindError):
        prospect("B-NOPE", budget=10)


def test_config_validation():
    with pytest.raises(BadParametersError):
        SuiteConfig(bounds=("B-POWER",), trials=0)
    with pytest.raises(BadParametersError):
        SuiteConfig(bounds=("B-POWER",), dims=(0, 2))
