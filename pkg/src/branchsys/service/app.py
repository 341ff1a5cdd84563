"""FastAPI application wrapping the report handlers.

Engine errors map to HTTP 400 with the same error JSON the CLI prints;
request-shape problems are FastAPI's usual 422. Handlers run in-process,
one request at a time per worker; there is no shared mutable state.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, reports
from ..errors import BranchSystemError
from .models import (
    AnalyzeRequest,
    BuildRequest,
    ConverseRequest,
    FaithfulRequest,
    HealthResponse,
    ReportResponse,
    ReproduceRequest,
    VerifyRequest,
)


def _dump(model) -> dict | None:
    return None if model is None else model.model_dump(mode="json")


def create_app() -> FastAPI:
    app = FastAPI(
        title="branchsys",
        version=__version__,
        description=(
            "Exact-arithmetic branching systems of directed graphs, the "
            "operators they induce on step functions, and faithfulness "
            "verdicts for the induced representations."
        ),
    )

    @app.exception_handler(BranchSystemError)
    async def _engine_error(request: Request, exc: BranchSystemError) -> JSONResponse:
        return JSONResponse(status_code=400, content=reports.error_report(exc))

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/analyze", response_model=ReportResponse)
    def analyze(req: AnalyzeRequest) -> ReportResponse:
        report, code = reports.analyze(_dump(req.graph))
        return ReportResponse(exit_code=code, report=report)

    @app.post("/build", response_model=ReportResponse)
    def build(req: BuildRequest) -> ReportResponse:
        report, code = reports.build(_dump(req.graph), _dump(req.config))
        return ReportResponse(exit_code=code, report=report)

    @app.post("/verify", response_model=ReportResponse)
    def verify(req: VerifyRequest) -> ReportResponse:
        payload = {
            "system": _dump(req.system),
            "graph": _dump(req.graph),
            "config": _dump(req.config),
        }
        report, code = reports.verify(payload, req.mode)
        return ReportResponse(exit_code=code, report=report)

    @app.post("/faithful", response_model=ReportResponse)
    def faithful(req: FaithfulRequest) -> ReportResponse:
        report, code = reports.faithful(
            _dump(req.graph), _dump(req.config), max_power=req.max_power
        )
        return ReportResponse(exit_code=code, report=report)

    @app.post("/converse", response_model=ReportResponse)
    def converse(req: ConverseRequest) -> ReportResponse:
        report, code = reports.converse(_dump(req.graph), req.variant)
        return ReportResponse(exit_code=code, report=report)

    @app.post("/reproduce", response_model=ReportResponse)
    def reproduce(req: ReproduceRequest) -> ReportResponse:
        report, code = reports.reproduce(req.name, max_power=req.max_power)
        return ReportResponse(exit_code=code, report=report)

    return app
