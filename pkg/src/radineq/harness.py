"""Batch verification: run registry bounds over random cases and report.

Determinism contract: a (seed, trial index, bound id) triple fully
determines the generated case — the bound id enters the seed stream as
a stable hash, trials cycle through the requested dimensions, and the
sphere searches inside evaluators run from a constant seed.  Results
are therefore identical for any thread count, and the report digest
(which covers case digests and slacks but no wall times) is a stable
fingerprint of the mathematical outcome.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from .cases import InequalityCase
from .catalog import (
    FAST_OPTIONS,
    PRE_FAILED,
    REGISTRY,
    VIOLATED,
    CheckResult,
    EvalOptions,
    all_bound_ids,
    evaluate_bound,
)
from .errors import (
    BadKindError,
    BadParametersError,
    BadWindowError,
    ExampleMismatchError,
    GenerationFailedError,
)
from .linalg import operator_norm, psd_power
from .radius import numerical_radius

SCHEMA_VERSION = 1
MAX_GENERATION_ATTEMPTS = 5


def thread_cap() -> int:
    """Worker count: the RG_THREADS environment variable, else 1."""
    raw = os.environ.get("RG_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _bound_key(bound_id: str) -> int:
    return int.from_bytes(hashlib.sha256(bound_id.encode()).digest()[:8], "big")


def _clean(obj):
    """Make numpy scalars/arrays JSON-friendly."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


@dataclass(frozen=True)
class SuiteConfig:
    bounds: tuple[str, ...]
    trials: int = 500
    dims: tuple[int, ...] = (2, 3, 4, 5, 6)
    seed: int = 0
    rel_tol: float = 1e-8
    options: EvalOptions = FAST_OPTIONS
    keep_all_records: bool = True

    def __post_init__(self) -> None:
        if not self.bounds:
            raise BadParametersError("no bounds selected")
        if self.trials < 1:
            raise BadParametersError("trials must be >= 1, got %d" % self.trials)
        if not self.dims or any(d < 1 or d > 64 for d in self.dims):
            raise BadParametersError("dims must lie in [1, 64], got %r" % (self.dims,))


@dataclass(frozen=True)
class TrialRecord:
    bound_id: str
    trial: int
    dim: int
    case_digest: str
    status: str
    lhs: float
    rhs_raw: float
    correction: float
    rhs_net: float
    slack: float
    wall_ms: float
    details: dict = field(default_factory=dict)
    case_json: Optional[dict] = None


@dataclass(frozen=True)
class BoundSummary:
    bound_id: str
    trials: int
    holds: int
    violations: int
    pre_failed: int
    min_slack: float
    max_ratio: float
    wall_ms: float


@dataclass
class Report:
    config: SuiteConfig
    summaries: list[BoundSummary]
    records: list[TrialRecord]
    digest: str
    wall_ms: float

    @property
    def total_violations(self) -> int:
        return sum(s.violations for s in self.summaries)

    def to_json_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg["options"] = asdict(self.config.options)
        cfg["bounds"] = list(self.config.bounds)
        cfg["dims"] = list(self.config.dims)
        return {
            "schema_version": SCHEMA_VERSION,
            "config": cfg,
            "summaries": [asdict(s) for s in self.summaries],
            "records": [_clean(asdict(r)) for r in self.records],
            "digest": self.digest,
            "wall_ms": self.wall_ms,
        }


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "verification suite report",
    "type": "object",
    "required": ["schema_version", "config", "summaries", "records", "digest", "wall_ms"],
    "properties": {
        "schema_version": {"type": "integer"},
        "config": {
            "type": "object",
            "required": ["bounds", "trials", "dims", "seed", "rel_tol"],
            "properties": {
                "bounds": {"type": "array", "items": {"type": "string"}},
                "trials": {"type": "integer", "minimum": 1},
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "seed": {"type": "integer"},
                "rel_tol": {"type": "number"},
                "options": {"type": "object"},
                "keep_all_records": {"type": "boolean"},
            },
        },
        "summaries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["bound_id", "trials", "holds", "violations", "pre_failed",
                             "min_slack", "max_ratio", "wall_ms"],
                "properties": {
                    "bound_id": {"type": "string"},
                    "trials": {"type": "integer"},
                    "holds": {"type": "integer"},
                    "violations": {"type": "integer"},
                    "pre_failed": {"type": "integer"},
                    "min_slack": {"type": ["number", "null"]},
                    "max_ratio": {"type": ["number", "null"]},
                    "wall_ms": {"type": "number"},
                },
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["bound_id", "trial", "dim", "case_digest", "status",
                             "lhs", "rhs_raw", "correction", "rhs_net", "slack"],
                "properties": {
                    "bound_id": {"type": "string"},
                    "trial": {"type": "integer"},
                    "dim": {"type": "integer"},
                    "case_digest": {"type": "string"},
                    "status": {"enum": ["holds", "violated", "precondition-failed"]},
                    "lhs": {"type": ["number", "null"]},
                    "rhs_raw": {"type": ["number", "null"]},
                    "correction": {"type": ["number", "null"]},
                    "rhs_net": {"type": ["number", "null"]},
                    "slack": {"type": ["number", "null"]},
                    "wall_ms": {"type": "number"},
                    "details": {"type": "object"},
                    "case_json": {"type": ["object", "null"]},
                },
            },
        },
        "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "wall_ms": {"type": "number"},
    },
}

CSV_COLUMNS = ("bound_id", "trials", "holds", "violations", "pre_failed",
               "min_slack", "max_ratio", "wall_ms")


def resolve_bounds(selector: str | list[str]) -> tuple[str, ...]:
    """Expand a bounds request; "all" covers every non-falsification entry."""
    if isinstance(selector, str):
        parts = [p.strip() for p in selector.split(",") if p.strip()]
    else:
        parts = list(selector)
    out: list[str] = []
    for p in parts:
        if p == "all":
            out.extend(all_bound_ids())
        elif p in REGISTRY:
            out.append(p)
        else:
            raise BadKindError("unknown bound %r (try list-bounds)" % p)
    seen = set()
    uniq = []
    for b in out:
        if b not in seen:
            seen.add(b)
            uniq.append(b)
    return tuple(uniq)


def _run_trial(bound_id: str, trial: int, dim: int, config: SuiteConfig,
               opts: EvalOptions) -> TrialRecord:
    bound = REGISTRY[bound_id]
    key = _bound_key(bound_id)
    case = None
    for attempt in range(MAX_GENERATION_ATTEMPTS):
        rng = np.random.default_rng(np.random.SeedSequence(
            entropy=[config.seed, trial, key, attempt]))
        try:
            case = bound.make_case(dim, rng)
            break
        except GenerationFailedError:
            continue
    if case is None:
        raise GenerationFailedError(
            "could not generate a case for %s (dim %d, trial %d) in %d attempts"
            % (bound_id, dim, trial, MAX_GENERATION_ATTEMPTS))
    t0 = time.perf_counter()
    res = evaluate_bound(bound_id, case, opts)
    wall = (time.perf_counter() - t0) * 1000.0
    case_json = None
    if res.status == VIOLATED:
        try:
            case_json = case.to_json_dict()
        except Exception:
            case_json = {"label": case.label, "note": "case not serializable"}
    return TrialRecord(
        bound_id=bound_id, trial=trial, dim=dim, case_digest=case.digest(),
        status=res.status, lhs=res.lhs, rhs_raw=res.rhs_raw, correction=res.correction,
        rhs_net=res.rhs_net, slack=res.slack, wall_ms=wall,
        details=_clean(res.details), case_json=case_json)


def _summarize(bound_id: str, records: list[TrialRecord]) -> BoundSummary:
    holds = sum(1 for r in records if r.status == "holds")
    violations = sum(1 for r in records if r.status == VIOLATED)
    pre = sum(1 for r in records if r.status == PRE_FAILED)
    slacks = [r.slack for r in records if r.status != PRE_FAILED and np.isfinite(r.slack)]
    ratios = [
        (0.0 if (r.lhs == 0.0 and r.rhs_net > 0.0) else r.lhs / r.rhs_net)
        for r in records
        if r.status != PRE_FAILED and r.rhs_net != 0.0 and np.isfinite(r.rhs_net)
    ]
    return BoundSummary(
        bound_id=bound_id, trials=len(records), holds=holds, violations=violations,
        pre_failed=pre,
        min_slack=float(min(slacks)) if slacks else float("nan"),
        max_ratio=float(max(ratios)) if ratios else float("nan"),
        wall_ms=float(sum(r.wall_ms for r in records)))


def _report_digest(records: list[TrialRecord]) -> str:
    """Order-independent fingerprint: case digests and exact slack bits."""
    payload: dict[str, list[list[str]]] = {}
    for r in sorted(records, key=lambda r: (r.bound_id, r.trial)):
        payload.setdefault(r.bound_id, []).append(
            [r.case_digest, r.status, float(r.slack).hex()])
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def run_suite(config: SuiteConfig) -> Report:
    opts = replace(config.options, rel_tol=config.rel_tol)
    tasks = [(bid, trial, config.dims[trial % len(config.dims)])
             for bid in config.bounds for trial in range(config.trials)]
    t0 = time.perf_counter()
    workers = thread_cap()
    if workers == 1:
        results = [_run_trial(bid, trial, dim, config, opts) for bid, trial, dim in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_trial, bid, trial, dim, config, opts)
                       for bid, trial, dim in tasks]
            results = [f.result() for f in futures]
    wall = (time.perf_counter() - t0) * 1000.0

    by_bound: dict[str, list[TrialRecord]] = {bid: [] for bid in config.bounds}
    for rec in results:
        by_bound[rec.bound_id].append(rec)
    summaries = [_summarize(bid, by_bound[bid]) for bid in config.bounds]
    records = results if config.keep_all_records else [
        r for r in results if r.status != "holds"]
    return Report(config=config, summaries=summaries, records=records,
                  digest=_report_digest(results), wall_ms=wall)


def write_report_json(report: Report, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_json_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def write_summary_csv(report: Report, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for s in report.summaries:
            writer.writerow([s.bound_id, s.trials, s.holds, s.violations, s.pre_failed,
                             repr(s.min_slack), repr(s.max_ratio), "%.3f" % s.wall_ms])


# -- the worked 2x2 example ------------------------------------------------------

EXAMPLE_S = np.array([[1.5, 0.5], [0.5, 1.5]])
EXAMPLE_T = np.eye(2) * 0.5
EXAMPLE_EXPECTED = {"w_sq": 1.0, "norm_term": 16.0625, "rhs": 7.94}


def reproduce_example_2x2(delta: float = 0.3, Delta: float = 0.4,
                          opts: Optional[EvalOptions] = None) -> dict:
    """The worked 2x2 instance of the windowed product bound.

    S = [[3/2, 1/2], [1/2, 3/2]], T = I/2, r = 2: w(S*T)^2 must equal 1,
    || |S|^4 + |T|^4 || must equal 257/16, and the right side
    sqrt(delta Delta)/(delta + Delta) * 257/16 lands near 7.94 for the
    default window.
    """
    if not 0.0 < delta < Delta:
        raise BadWindowError("need 0 < delta < Delta, got (%r, %r)" % (delta, Delta))
    # the reported w^2 is the bracket top squared, so the bracket must be
    # an order tighter than the 1e-9 the reproduction promises
    opts = opts or EvalOptions(radius_tol=1e-11)
    s, t = EXAMPLE_S, EXAMPLE_T
    br = numerical_radius(s.conj().T @ t, tol=opts.radius_tol, grid=opts.radius_grid)
    w_sq = br.hi ** 2
    norm_term = operator_norm(psd_power(s.conj().T @ s, 2.0) + psd_power(t.conj().T @ t, 2.0))
    coef = float(np.sqrt(delta * Delta) / (delta + Delta))
    rhs = coef * norm_term
    case = InequalityCase(operators={"S": s, "T": t},
                          params={"r": 2.0, "delta": delta, "Delta": Delta},
                          label="example-2x2")
    res = evaluate_bound("REM-R23-ii", case, opts)
    out = {
        "w_sq": float(w_sq),
        "w_bracket": [br.lo, br.hi],
        "norm_term": float(norm_term),
        "coef": coef,
        "rhs": float(rhs),
        "expected": dict(EXAMPLE_EXPECTED),
        "check": {
            "status": res.status, "lhs": res.lhs, "rhs_net": res.rhs_net,
            "slack": res.slack,
        },
    }
    errors = []
    if abs(w_sq - EXAMPLE_EXPECTED["w_sq"]) > 1e-9:
        errors.append("w_sq off: %r" % w_sq)
    if abs(norm_term - EXAMPLE_EXPECTED["norm_term"]) > 1e-9:
        errors.append("norm_term off: %r" % norm_term)
    if (delta, Delta) == (0.3, 0.4):
        if abs(rhs - EXAMPLE_EXPECTED["rhs"]) > 5e-3 * EXAMPLE_EXPECTED["rhs"]:
            errors.append("rhs off: %r" % rhs)
    if errors:
        raise ExampleMismatchError("; ".join(errors), measured=out)
    return out


# -- counterexample search -------------------------------------------------------


def _ratio_of(res: CheckResult) -> float:
    if res.status == PRE_FAILED or not np.isfinite(res.rhs_net) or res.rhs_net == 0.0:
        return float("-inf")
    if res.lhs == 0.0 and res.rhs_net > 0.0:
        return 0.0
    return res.lhs / res.rhs_net


def _perturb_case(case: InequalityCase, rng: np.random.Generator,
                  amount: float) -> InequalityCase:
    ops = {}
    for role, value in case.operators.items():
        if isinstance(value, tuple):
            ops[role] = [m + amount * operator_norm(m) *
                         (rng.standard_normal(m.shape) + 1j * rng.standard_normal(m.shape))
                         for m in value]
        else:
            m = value
            ops[role] = m + amount * max(operator_norm(m), 1e-3) * (
                rng.standard_normal(m.shape) + 1j * rng.standard_normal(m.shape))
    vecs = {}
    for name, v in case.vectors.items():
        w = v + amount * max(float(np.linalg.norm(v)), 1e-3) * (
            rng.standard_normal(v.shape) + 1j * rng.standard_normal(v.shape))
        if name == "eta" and np.linalg.norm(w) > 1.0:   # keep the lemma hypothesis
            w = w / np.linalg.norm(w)
        vecs[name] = w
    return replace(case, operators=ops, vectors=vecs)


def prospect(bound_id: str, budget: int = 2000, seed: int = 0,
             dims: tuple[int, ...] = (2, 3, 4),
             opts: Optional[EvalOptions] = None) -> dict:
    """Hunt for violations of one bound: random sampling, then greedy
    perturbation around the tightest case found.  Reports the best
    lhs/rhs_net ratio either way."""
    if bound_id not in REGISTRY:
        raise BadKindError("unknown bound %r" % bound_id)
    bound = REGISTRY[bound_id]
    opts = opts or FAST_OPTIONS
    key = _bound_key(bound_id)
    best_ratio, best_case, best_res = float("-inf"), None, None
    violations = 0
    first_violation = None
    explore = max(1, budget // 2)

    def consider(case, res):
        nonlocal best_ratio, best_case, best_res, violations, first_violation
        ratio = _ratio_of(res)
        if res.status == VIOLATED:
            violations += 1
            if first_violation is None:
                try:
                    cj = case.to_json_dict()
                except Exception:
                    cj = {"label": case.label, "note": "case not serializable"}
                first_violation = {
                    "case": cj, "lhs": res.lhs, "rhs_net": res.rhs_net,
                    "slack": res.slack, "digest": case.digest(),
                }
        if ratio > best_ratio:
            best_ratio, best_case, best_res = ratio, case, res

    evals = 0
    for i in range(explore):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=[seed, 0, key, i]))
        dim = dims[i % len(dims)]
        try:
            case = bound.make_case(dim, rng)
        except GenerationFailedError:
            continue
        consider(case, evaluate_bound(bound_id, case, opts))
        evals += 1

    polish_rng = np.random.default_rng(np.random.SeedSequence(entropy=[seed, 1, key]))
    amount = 0.25
    for _ in range(budget - explore):
        if best_case is None:
            break
        cand = _perturb_case(best_case, polish_rng, amount)
        res = evaluate_bound(bound_id, cand, opts)
        evals += 1
        prev = best_ratio
        consider(cand, res)
        if best_ratio <= prev:
            amount = max(amount * 0.7, 1e-3)

    out = {
        "bound_id": bound_id,
        "budget": budget,
        "evaluations": evals,
        "violations": violations,
        "best_ratio": best_ratio if np.isfinite(best_ratio) else None,
        "first_violation": first_violation,
    }
    if best_res is not None and best_case is not None:
        out["best"] = {
            "digest": best_case.digest(), "dim": best_case.dim,
            "lhs": best_res.lhs, "rhs_net": best_res.rhs_net, "slack": best_res.slack,
            "status": best_res.status,
        }
    return out
