"""FastAPI service wrapping the verification pipelines.

Every endpoint returns the versioned report envelope; invalid inputs map to
HTTP 422 (pydantic) or 400 (library precondition errors).  Verification
failures are not HTTP errors: the report carries its status and the exit
code a thin client should propagate.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, pipeline
from ..errors import MumfordTameError
from .schemas import (
    ConstructPolyRequest,
    ConstructRequest,
    ExcludedRequest,
    FrobeniusRequest,
    GoldbachRequest,
    HealthResponse,
    IgpRequest,
    ReportResponse,
    TableCheckRequest,
    TypeCheckRequest,
)

app = FastAPI(
    title="mumford-tame",
    version=__version__,
    description="Tame-torsion Mumford curve constructions, certificates, "
    "and the Goldbach/Frobenius toolkit",
)


def _envelope(report: dict) -> ReportResponse:
    status = report.get("status", pipeline.STATUS_VERIFIED)
    return ReportResponse(
        schema_version=report.get("schema", pipeline.SCHEMA),
        status=status,
        exit_code=pipeline.exit_code_for(status),
        report=report,
    )


def _run(fn, *args, **kwargs) -> ReportResponse:
    try:
        return _envelope(fn(*args, **kwargs))
    except MumfordTameError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _coeffs(f) -> list:
    if isinstance(f, str):
        return pipeline.parse_poly(f)
    return list(f)


@app.get("/v1/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(
        status="ok", schema_version=pipeline.SCHEMA, version=__version__
    )


@app.post("/v1/construct", response_model=ReportResponse)
def construct(req: ConstructRequest) -> ReportResponse:
    return _run(
        pipeline.construct_report, req.g, req.p, req.n, req.m, req.precision
    )


@app.post("/v1/igp", response_model=ReportResponse)
def igp(req: IgpRequest) -> ReportResponse:
    return _run(pipeline.igp_report, req.g, req.p, req.n)


@app.post("/v1/table-check", response_model=ReportResponse)
def table_check(req: TableCheckRequest) -> ReportResponse:
    return _run(
        pipeline.tablecheck_report, rows=req.rows, budget=req.budget, seed=req.seed
    )


@app.post("/v1/goldbach", response_model=ReportResponse)
def goldbach(req: GoldbachRequest) -> ReportResponse:
    return _run(pipeline.goldbach_report, req.n, req.double)


@app.post("/v1/excluded", response_model=ReportResponse)
def excluded(req: ExcludedRequest) -> ReportResponse:
    return _run(pipeline.excluded_report, req.g_max)


@app.post("/v1/type-check", response_model=ReportResponse)
def type_check(req: TypeCheckRequest) -> ReportResponse:
    return _run(
        pipeline.typecheck_report,
        _coeffs(req.f), req.p, req.t, req.blocks, req.precision,
    )


@app.post("/v1/construct-poly", response_model=ReportResponse)
def construct_poly(req: ConstructPolyRequest) -> ReportResponse:
    specs = [item.model_dump() for item in req.specs]
    return _run(pipeline.construct_poly_report, req.degree, specs)


@app.post("/v1/frobenius", response_model=ReportResponse)
def frobenius(req: FrobeniusRequest) -> ReportResponse:
    return _run(
        pipeline.frobenius_report,
        _coeffs(req.f), req.ell, req.genus,
        budget=req.budget, p=req.p, seed=req.seed,
    )
