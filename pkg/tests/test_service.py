"""HTTP layer: request validation, JSON shapes, error mapping, NaN hygiene."""

import json
import math

import numpy as np
import pytest

from radineq.catalog import FAST_OPTIONS, evaluate_bound
from radineq.generators import case_for_bound
from radineq.harness import REPORT_SCHEMA

jsonschema = pytest.importorskip("jsonschema")
httpx = pytest.importorskip("httpx")


@pytest.fixture(scope="module")
def client():
    from radineq.cli import _InProcessClient

    return _InProcessClient()


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["bounds"] == 58


def test_bounds_listing(client):
    rows = client.get("/bounds").json()
    assert len(rows) == 58
    by_id = {r["bound_id"]: r for r in rows}
    assert by_id["B-MUNA6-PRINTED"]["falsification_only"]
    assert by_id["TH-SCH1"]["has_correction"]
    assert all(r["formula"] for r in rows)


def test_schema_endpoint(client):
    schema = client.get("/schema/report").json()
    assert schema == REPORT_SCHEMA


def test_radius_endpoint_matches_direct_call(client):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    from radineq.linalg import matrix_to_json
    from radineq.radius import numerical_radius

    resp = client.post("/radius", json={"matrix": matrix_to_json(a), "tol": 1e-9}).json()
    direct = numerical_radius(a, tol=1e-9)
    assert resp["lo"] == direct.lo and resp["hi"] == direct.hi
    assert resp["converged"]
    assert abs(resp["hi"] - resp["lo"]) <= 1e-9


def test_evaluate_round_trip(client):
    rng = np.random.default_rng(1)
    case = case_for_bound("B-MUNA7-U", 3, rng)
    remote = client.post(
        "/evaluate", json={"bound_id": "B-MUNA7-U", "case": case.to_json_dict()}
    ).json()
    local = evaluate_bound("B-MUNA7-U", case)
    assert remote["status"] == local.status == "holds"
    assert remote["slack"] == pytest.approx(local.slack, rel=1e-12)


def test_evaluate_error_mapping(client):
    rng = np.random.default_rng(2)
    case = case_for_bound("B-POWER", 2, rng)
    assert client.post("/evaluate", json={"bound_id": "NOPE", "case": case.to_json_dict()}).status_code == 404
    malformed = {"bound_id": "B-POWER", "case": {"operators": {"A": {"dim": 2, "re": [[1.0]]}}}}
    assert client.post("/evaluate", json=malformed).status_code == 422


def test_evaluate_precondition_failure_serializes_nan_as_null(client):
    case_json = {
        "label": "LEM-HM-iii",
        "operators": {"T": {"dim": 2, "re": [[1.0, 0.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}},
        "params": {"r": -1.0},
        "vectors": {"xi": {"dim": 2, "re": [1.0, 0.0], "im": [0.0, 0.0]}},
    }
    body = client.post("/evaluate", json={"bound_id": "LEM-HM-iii", "case": case_json}).json()
    assert body["status"] == "precondition-failed"
    assert body["lhs"] is None and body["slack"] is None


def test_suite_endpoint_validates_and_reports(client):
    body = client.post("/suite", json={
        "bounds": ["B-MUNA6", "B-POWER"], "trials": 5, "dims": [2, 3], "seed": 9,
    }).json()
    jsonschema.validate(body, REPORT_SCHEMA)
    assert {s["bound_id"] for s in body["summaries"]} == {"B-MUNA6", "B-POWER"}
    assert all(s["violations"] == 0 for s in body["summaries"])
    # strict JSON round trip (would fail if NaN leaked anywhere)
    json.loads(json.dumps(body, allow_nan=False))


def test_suite_endpoint_bad_bounds(client):
    assert client.post("/suite", json={"bounds": ["NOPE"], "trials": 2}).status_code == 400
    assert client.post("/suite", json={"bounds": "all", "trials": 0}).status_code == 422


def test_reproduce_endpoint(client):
    ok = client.post("/reproduce", json={}).json()
    assert ok["ok"] is True
    assert math.isclose(ok["w_sq"], 1.0, abs_tol=1e-9)
    bad = client.post("/reproduce", json={"delta": 0.4, "Delta": 0.3})
    assert bad.status_code == 400
    assert bad.json()["error"] == "BadWindowError"
    assert client.post("/reproduce", json={"name": "other"}).status_code == 404


def test_prospect_endpoint(client):
    body = client.post("/prospect", json={"bound_id": "B-MUNA6-PRINTED", "budget": 60}).json()
    assert body["falsification_only"] is True
    assert body["violations"] > 0
    json.loads(json.dumps(body, allow_nan=False))
    assert client.post("/prospect", json={"bound_id": "NOPE", "budget": 5}).status_code == 404


def test_options_forwarding(client):
    rng = np.random.default_rng(3)
    case = case_for_bound("B-MUNA6", 2, rng)
    fast = client.post("/evaluate", json={
        "bound_id": "B-MUNA6",
        "case": case.to_json_dict(),
        "options": {"radius_grid": FAST_OPTIONS.radius_grid, "sphere_restarts": 4,
                    "sphere_presample": 128, "sphere_iters": 60, "sphere_polish": False},
    }).json()
    local = evaluate_bound("B-MUNA6", case, FAST_OPTIONS)
    assert fast["slack"] == pytest.approx(local.slack, rel=1e-12)
