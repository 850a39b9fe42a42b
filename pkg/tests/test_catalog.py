"""Registry semantics: statuses, chains, corrections, reductions, tightness."""

import math

import numpy as np
import pytest

from radineq.cases import InequalityCase
from radineq.catalog import (
    FAST_OPTIONS,
    HOLDS,
    PRE_FAILED,
    REGISTRY,
    EvalOptions,
    all_bound_ids,
    check_sandwich,
    compare_tightness,
    evaluate_bound,
)
from radineq.errors import BadKindError, BadWindowError
from radineq.generators import case_for_bound
from radineq.scalarfn import power

CORRECTION_BOUNDS = ("TH-SCH1", "TH-N1", "TH-N3", "TH-SCH2", "TH-MOHMMM", "TH-SUPQAD")
FALSIFICATION_ONLY = ("B-MUNA6-PRINTED", "B-WATFA1-PRINTED", "TH-A1-PRINTED")
SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def test_registry_shape():
    assert len(REGISTRY) == 58
    checkable = all_bound_ids()
    assert len(checkable) == 55
    assert set(all_bound_ids(include_falsification_only=True)) == set(REGISTRY)
    for bid in FALSIFICATION_ONLY:
        assert REGISTRY[bid].falsification_only
        assert bid not in checkable
    for bid in CORRECTION_BOUNDS:
        assert REGISTRY[bid].has_correction
    for bound in REGISTRY.values():
        assert bound.formula  # every entry documents its display form


def test_unknown_bound_rejected():
    rng = np.random.default_rng(0)
    case = case_for_bound("B-POWER", 2, rng)
    with pytest.raises(BadKindError):
        evaluate_bound("NOT-A-BOUND", case)


@pytest.mark.parametrize("bound_id", sorted(set(REGISTRY) - set(FALSIFICATION_ONLY)))
def test_every_bound_holds_on_samples(bound_id):
    rng = np.random.default_rng(1)
    for dim in (2, 3):
        case = case_for_bound(bound_id, dim, rng)
        res = evaluate_bound(bound_id, case, FAST_OPTIONS)
        assert res.status == HOLDS, (bound_id, dim, res.slack, res.details)
        assert res.slack >= -res.rel_tol * max(1.0, abs(res.rhs_net))
        assert res.holds


def test_chain_reports_binding_link():
    rng = np.random.default_rng(2)
    case = case_for_bound("B-N1-SANDWICH", 3, rng)
    res = evaluate_bound("B-N1-SANDWICH", case, FAST_OPTIONS)
    assert res.status == HOLDS
    links = res.details["links"]
    assert set(links) == {"lower", "upper"}
    assert res.details["binding"] in links
    for link in links.values():
        assert link["lhs"] <= link["rhs"] + res.rel_tol * max(1.0, abs(link["rhs"]))
        assert link["slack"] == pytest.approx(link["rhs"] - link["lhs"], abs=1e-14)


def test_precondition_failure_is_reported_not_raised():
    # positive-part window around a non-invertible operator
    case = InequalityCase(
        label="LEM-HM-iii",
        operators={"T": np.diag([1.0, 0.0]).astype(complex)},
        params={"r": -1.0},
        vectors={"xi": np.array([1.0, 0.0], dtype=complex)},
    )
    res = evaluate_bound("LEM-HM-iii", case, FAST_OPTIONS)
    assert res.status == PRE_FAILED
    assert math.isnan(res.lhs) and math.isnan(res.slack)
    assert "reason" in res.details
    assert not res.holds


def test_check_sandwich_error_shapes():
    x = np.diag([0.2, 0.25]).astype(complex)
    y = np.diag([0.5, 0.6]).astype(complex)
    swapped, margins = check_sandwich(x, y, 0.3, 0.4)
    assert not swapped
    with pytest.raises(BadWindowError):
        check_sandwich(x, y, 0.4, 0.4)  # empty window
    sw2, _ = check_sandwich(y, x, 0.3, 0.4)
    assert sw2  # the orientation flip is detected, not rejected


def test_nilpotent_shift_equality_case():
    # w([[0,1],[0,0]])^2 = 1/4 = ||A*A + AA*|| / 4: the lower bound is tight
    case = InequalityCase(label="shift", operators={"A": SHIFT})
    res = evaluate_bound("B-MUNA7-L", case, EvalOptions(radius_tol=1e-11))
    assert abs(res.slack) <= 1e-9
    ratios = compare_tightness([res])
    assert ratios[0][0] == "B-MUNA7-L"
    assert ratios[0][1] == pytest.approx(1.0, abs=1e-8)


def test_normal_operator_tightness():
    # for normal A the radius equals the norm: both chain links of the
    # norm sandwich pin w between ||A||/2 and ||A||, the top one tightly
    rng = np.random.default_rng(3)
    case = case_for_bound("B-PRODUCT-1", 3, rng)  # normal pair generator
    a = case.op("A")
    res = evaluate_bound("B-N1-SANDWICH", InequalityCase(label="normal", operators={"A": a}))
    assert res.status == HOLDS
    upper = res.details["links"]["upper"]
    assert abs(upper["lhs"] - upper["rhs"]) <= 1e-7 * max(1.0, upper["rhs"])


def test_compare_tightness_conventions():
    zero = InequalityCase(label="zero", operators={"A": np.zeros((2, 2), dtype=complex)})
    res_zero = evaluate_bound("B-MUNA6", zero, FAST_OPTIONS)
    assert res_zero.lhs == 0.0 and res_zero.rhs_net == 0.0

    rng = np.random.default_rng(4)
    live = evaluate_bound("B-MUNA6", case_for_bound("B-MUNA6", 2, rng), FAST_OPTIONS)
    ranked = compare_tightness([res_zero, live])
    # rhs_net = 0 rows are skipped entirely
    assert [bid for bid, _ in ranked] == ["B-MUNA6"]

    nil = evaluate_bound("B-MUNA6", InequalityCase(label="nil", operators={"A": SHIFT}))
    ranked = compare_tightness([nil, live])
    assert len(ranked) == 1  # same bound id aggregates to its max ratio
    assert ranked[0][1] <= 1.0 + 1e-8


@pytest.mark.parametrize("bound_id", CORRECTION_BOUNDS)
def test_corrections_nonnegative_and_recorded(bound_id):
    rng = np.random.default_rng(5)
    for dim in (2, 3):
        case = case_for_bound(bound_id, dim, rng)
        res = evaluate_bound(bound_id, case, FAST_OPTIONS)
        assert res.status == HOLDS
        assert res.correction >= 0.0  # clipped estimate
        assert res.rhs_net <= res.rhs_raw + 1e-15
        assert "infimum" in res.details  # raw optimizer value survives
        assert res.details["infimum"] >= -1e-12


def _lift_ok2_to_sch1(case):
    n = case.n_ops
    eye = np.eye(case.dim, dtype=complex)
    return InequalityCase(
        label="lift",
        operators={
            "X_i": tuple(eye.copy() for _ in range(n)),
            "A_i": tuple(m.copy() for m in case.ops("A_i")),
            "B_i": tuple(eye.copy() for _ in range(n)),
        },
        params=dict(case.params),
        functions=dict(case.functions),
    )


def _lift_cor32_to_th31(case):
    n = case.n_ops
    eye = np.eye(case.dim, dtype=complex)
    return InequalityCase(
        label="lift",
        operators={
            "A_i": tuple(eye.copy() for _ in range(n)),
            "C_i": tuple(m.copy() for m in case.ops("C_i")),
            "D_i": tuple(eye.copy() for _ in range(n)),
        },
        params=dict(case.params),
    )


def _lift_powers_to_cor32(case):
    return InequalityCase(
        label="lift",
        operators={"C_i": (case.op("C").copy(),)},
        params={"n_ops": 1, "m": case.params["m"], "r": case.params["r"]},
    )


def _lift_t2_to_t1(case):
    lifted = InequalityCase(
        label="lift",
        operators={k: v.copy() for k, v in case.operators.items()},
        params={"mu": case.params["mu"]},
        functions={"psi": power(case.params["r"])},
    )
    return lifted


REDUCTIONS = [
    ("COR-OK2", "TH-SCH1", _lift_ok2_to_sch1, 1e-12),
    ("COR-3.2", "TH-3.1", _lift_cor32_to_th31, 1e-12),
    ("COR-POWERS", "COR-3.2", _lift_powers_to_cor32, 1e-12),
    ("TH-RAHMA1-T2", "TH-RAHMA1-T1", _lift_t2_to_t1, 1e-10),
]


@pytest.mark.parametrize("small_id,big_id,lift,tol", REDUCTIONS)
def test_reduction_consistency(small_id, big_id, lift, tol):
    rng = np.random.default_rng(6)
    for k in range(12):
        dim = 2 + k % 2
        case = case_for_bound(small_id, dim, rng)
        a = evaluate_bound(small_id, case, FAST_OPTIONS)
        b = evaluate_bound(big_id, lift(case), FAST_OPTIONS)
        assert a.status == b.status == HOLDS
        for fld in ("lhs", "rhs_raw", "correction", "rhs_net", "slack"):
            va, vb = getattr(a, fld), getattr(b, fld)
            assert abs(va - vb) <= tol * max(1.0, abs(va), abs(vb)), (
                small_id, fld, va, vb,
            )


def test_lem_d1_equality_diagnostic():
    rng = np.random.default_rng(7)
    seen = 0
    for _ in range(12):
        case = case_for_bound("LEM-D1", 3, rng)
        res = evaluate_bound("LEM-D1", case, FAST_OPTIONS)
        assert res.status == HOLDS
        gap = res.details.get("equality_gap")
        if gap is not None:
            scale = max(1.0, abs(res.rhs_raw))
            assert abs(gap) <= 1e-9 * scale
            seen += 1
    assert seen >= 6  # the diagnostic fires for well-conditioned draws


def test_printed_variants_share_operands_with_primary():
    # the falsification-only rows evaluate without raising, on the same case
    rng = np.random.default_rng(8)
    case = case_for_bound("B-MUNA6", 3, rng)
    primary = evaluate_bound("B-MUNA6", case, FAST_OPTIONS)
    printed = evaluate_bound("B-MUNA6-PRINTED", case, FAST_OPTIONS)
    assert primary.status == HOLDS
    assert printed.status in (HOLDS, "violated")
    assert primary.lhs == printed.lhs  # identical left side, different right


def test_options_are_frozen_and_distinct():
    assert FAST_OPTIONS.radius_grid < EvalOptions().radius_grid
    with pytest.raises(Exception):
        FAST_OPTIONS.rel_tol = 0.5
