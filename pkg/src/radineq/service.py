"""HTTP service exposing the verification toolkit.

The CLI mounts this app in-process by default, so every code path —
terminal or network — goes through the same request validation and the
same JSON shapes.  Payload floats are sanitized before the response
because strict JSON has no NaN token (precondition-failed checks carry
NaN sides; they become null on the wire, matching the report schema).
"""

from __future__ import annotations

import math
from typing import Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .cases import InequalityCase
from .catalog import REGISTRY, EvalOptions, FAST_OPTIONS, evaluate_bound
from .errors import (
    BadParametersError,
    ExampleMismatchError,
    GenerationFailedError,
    ToolkitError,
)
from .harness import (
    REPORT_SCHEMA,
    SuiteConfig,
    prospect,
    reproduce_example_2x2,
    resolve_bounds,
    run_suite,
)
from .linalg import matrix_from_json, vector_to_json
from .radius import numerical_radius


def _definan(obj):
    if isinstance(obj, dict):
        return {k: _definan(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_definan(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


class MatrixModel(BaseModel):
    dim: int = Field(ge=1)
    re: list[list[float]]
    im: list[list[float]]


class VectorModel(BaseModel):
    dim: int = Field(ge=1)
    re: list[float]
    im: list[float]


class FunctionModel(BaseModel):
    kind: str = "power"
    exponent: float


class CaseModel(BaseModel):
    label: str = ""
    operators: dict[str, Union[MatrixModel, list[MatrixModel]]] = {}
    params: dict[str, float] = {}
    functions: dict[str, FunctionModel] = {}
    vectors: dict[str, VectorModel] = {}

    def to_case(self) -> InequalityCase:
        return InequalityCase.from_json_dict(self.model_dump())


class OptionsModel(BaseModel):
    rel_tol: float = 1e-8
    radius_tol: float = 1e-9
    radius_grid: int = 720
    sphere_restarts: int = 24
    sphere_presample: int = 256
    sphere_iters: int = 500
    sphere_polish: bool = True
    sphere_seed: int = 0

    def to_options(self) -> EvalOptions:
        return EvalOptions(**self.model_dump())


class RadiusRequest(BaseModel):
    matrix: MatrixModel
    tol: float = 1e-9
    grid: int = Field(default=720, ge=8)


class RadiusResponse(BaseModel):
    lo: float
    hi: float
    width: float
    theta_star: float
    witness: VectorModel
    evals: int
    converged: bool


class EvaluateRequest(BaseModel):
    bound_id: str
    case: CaseModel
    options: Optional[OptionsModel] = None


class CheckResultModel(BaseModel):
    bound_id: str
    status: str
    lhs: Optional[float]
    rhs_raw: Optional[float]
    correction: Optional[float]
    rhs_net: Optional[float]
    slack: Optional[float]
    rel_tol: float
    details: dict


class SuiteRequest(BaseModel):
    bounds: Union[str, list[str]] = "all"
    trials: int = Field(default=500, ge=1)
    dims: list[int] = [2, 3, 4, 5, 6]
    seed: int = 0
    rel_tol: float = 1e-8
    fast: bool = True
    keep_all_records: bool = True
    options: Optional[OptionsModel] = None


class ReproduceRequest(BaseModel):
    name: str = "example-2x2"
    delta: float = 0.3
    Delta: float = 0.4


class ProspectRequest(BaseModel):
    bound_id: str
    budget: int = Field(default=2000, ge=1)
    seed: int = 0
    dims: list[int] = [2, 3, 4]


class BoundInfo(BaseModel):
    bound_id: str
    formula: str
    has_correction: bool
    falsification_only: bool


app = FastAPI(title="operator inequality verifier", version=__version__)


@app.exception_handler(ToolkitError)
async def _toolkit_error(request, exc: ToolkitError):
    from fastapi.responses import JSONResponse

    if isinstance(exc, GenerationFailedError):
        return JSONResponse(status_code=500,
                            content={"error": "generation-failed", "message": str(exc)})
    return JSONResponse(status_code=400,
                        content={"error": type(exc).__name__, "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__, "bounds": len(REGISTRY)}


@app.get("/bounds", response_model=list[BoundInfo])
def bounds() -> list[BoundInfo]:
    return [BoundInfo(bound_id=b.bound_id, formula=b.formula,
                      has_correction=b.has_correction,
                      falsification_only=b.falsification_only)
            for b in REGISTRY.values()]


@app.get("/schema/report")
def schema_report() -> dict:
    return REPORT_SCHEMA


@app.post("/radius", response_model=RadiusResponse)
def radius(req: RadiusRequest) -> RadiusResponse:
    a = matrix_from_json(req.matrix.model_dump())
    br = numerical_radius(a, tol=req.tol, grid=req.grid)
    return RadiusResponse(lo=br.lo, hi=br.hi, width=br.width, theta_star=br.theta_star,
                          witness=VectorModel(**vector_to_json(br.witness)),
                          evals=br.evals, converged=br.converged)


@app.post("/evaluate", response_model=CheckResultModel)
def evaluate(req: EvaluateRequest) -> CheckResultModel:
    if req.bound_id not in REGISTRY:
        raise HTTPException(status_code=404, detail="unknown bound %r" % req.bound_id)
    case = req.case.to_case()
    case.validate()
    opts = req.options.to_options() if req.options else EvalOptions()
    res = evaluate_bound(req.bound_id, case, opts)

    def opt(x: float) -> Optional[float]:
        return x if math.isfinite(x) else None

    return CheckResultModel(bound_id=res.bound_id, status=res.status, lhs=opt(res.lhs),
                            rhs_raw=opt(res.rhs_raw), correction=opt(res.correction),
                            rhs_net=opt(res.rhs_net), slack=opt(res.slack),
                            rel_tol=res.rel_tol, details=_definan(res.details))


@app.post("/suite")
def suite(req: SuiteRequest) -> dict:
    if req.options is not None:
        opts = req.options.to_options()
    else:
        opts = FAST_OPTIONS if req.fast else EvalOptions()
    config = SuiteConfig(
        bounds=resolve_bounds(req.bounds),
        trials=req.trials,
        dims=tuple(req.dims),
        seed=req.seed,
        rel_tol=req.rel_tol,
        options=opts,
        keep_all_records=req.keep_all_records,
    )
    report = run_suite(config)
    return _definan(report.to_json_dict())


@app.post("/reproduce")
def reproduce(req: ReproduceRequest) -> dict:
    if req.name != "example-2x2":
        raise HTTPException(status_code=404, detail="unknown reproduction %r" % req.name)
    try:
        out = reproduce_example_2x2(delta=req.delta, Delta=req.Delta)
    except ExampleMismatchError as exc:
        return {"ok": False, "error": str(exc), "measured": _definan(exc.measured)}
    return {"ok": True, **_definan(out)}


@app.post("/prospect")
def prospect_endpoint(req: ProspectRequest) -> dict:
    if req.bound_id not in REGISTRY:
        raise HTTPException(status_code=404, detail="unknown bound %r" % req.bound_id)
    if not req.dims:
        raise BadParametersError("dims must be nonempty")
    out = prospect(req.bound_id, budget=req.budget, seed=req.seed, dims=tuple(req.dims))
    out["falsification_only"] = REGISTRY[req.bound_id].falsification_only
    return _definan(out)
