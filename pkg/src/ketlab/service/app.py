"""FastAPI application exposing evaluation, conformance runs, and JSON
document conversion over HTTP.

The service is a thin wrapper: every route parses its payload, calls the
same package functions the CLI uses, and serializes the result.  Domain
errors surface as HTTP 400 with a structured body instead of a stack
trace.
"""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .schemas import (
    CheckInfo,
    CheckRequest,
    CheckResponse,
    CheckRowModel,
    ConvertRequest,
    ConvertResponse,
    ErrorResponse,
    EvalRequest,
    EvalResponse,
    HealthResponse,
)
from .. import __version__
from ..dsl import format_value, parse_script, run_script, sort_of
from ..errors import KetlabError, PositionedError
from ..lemma_suite import REGISTRY, run_checks
from ..serde import dump_value, load_value


def create_app():
    app = FastAPI(title="ketlab", version=__version__)

    @app.exception_handler(KetlabError)
    async def _domain_error(request: Request, err: KetlabError):
        line = col = None
        if isinstance(err, PositionedError):
            line, col = err.position
        body = ErrorResponse.model_validate(
            {
                "error": {
                    "kind": type(err).__name__,
                    "message": str(err),
                    "line": line,
                    "col": col,
                }
            }
        )
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.get("/health", response_model=HealthResponse)
    async def health():
        return HealthResponse(status="ok")

    @app.get("/checks", response_model=list[CheckInfo])
    async def checks():
        return [
            CheckInfo(name=spec.name, dim_lo=spec.dims[0], dim_hi=spec.dims[1], trials=spec.trials)
            for spec in REGISTRY
        ]

    @app.post("/eval", response_model=EvalResponse, responses={400: {"model": ErrorResponse}})
    async def eval_expression(payload: EvalRequest):
        value = run_script(parse_script(payload.expression))
        return EvalResponse(
            sort=sort_of(value),
            value=dump_value(value)["value"],
            text=format_value(value, payload.precision),
        )

    @app.post("/check", response_model=CheckResponse, responses={400: {"model": ErrorResponse}})
    async def check(payload: CheckRequest):
        report = run_checks(payload.seed, payload.max_dim, payload.trials, filter_names=payload.only)
        rows = [CheckRowModel.model_validate(row) for row in report.to_json()["checks"]]
        return CheckResponse(all_pass=report.all_pass(), checks=rows)

    @app.post("/convert", response_model=ConvertResponse, responses={400: {"model": ErrorResponse}})
    async def convert(payload: ConvertRequest):
        return ConvertResponse(document=dump_value(load_value(payload.document)))

    return app
