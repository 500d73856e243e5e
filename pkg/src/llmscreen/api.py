"""HTTP JSON API over the screening engine.

Versioned under /v1; read-only; stateless over an immutable catalog loaded
at app construction.  Error bodies always have the shape
{"error": {"code", "message", "details?"}} with codes drawn from the
closed set documented in docs/api.md.  Every numeric in a success body
carries a unit, and every 200 body includes methodology_version so
published numbers stay traceable to a catalog snapshot.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import serialize
from .catalog import (
    AmbiguousModelError,
    Catalog,
    ModelNotFoundError,
    default_catalog_dir,
    load_catalog,
    lookup_model,
    methodology_version,
)
from .reporter import build_observatory, export_table, run_scenario
from .scenario import Scenario, ScenarioParseError, parse_scenario
from .training import estimate_training

CATALOG_DIR_ENV = "IMPACT_CATALOG_DIR"
BIND_ADDR_ENV = "IMPACT_BIND_ADDR"
DEFAULT_BIND_ADDR = "127.0.0.1:8151"

# Closed set of machine-readable error codes (see docs/api.md).
ERROR_CODES = (
    "unknown_version",
    "not_found",
    "model_not_found",
    "model_ambiguous",
    "invalid_format",
    "invalid_tokens",
    "invalid_volume",
    "invalid_country",
    "invalid_request",
    "empty_description",
    "parse_failed",
    "internal_error",
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: dict | None = None):
        assert code in ERROR_CODES
        self.status = status
        self.code = code
        self.message = message
        self.details = details
        super().__init__(message)


class ParseRequest(BaseModel):
    description: str = ""


class EstimateRequest(BaseModel):
    model: str
    request_type: str | None = None
    input_tokens: int | None = None
    output_tokens: int | None = None
    requests_per_month: int | None = None
    country: str | None = None


def resolve_catalog_dir(explicit: str | Path | None = None) -> Path:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(CATALOG_DIR_ENV)
    if env:
        return Path(env)
    return default_catalog_dir()


def create_app(catalog: Catalog | None = None, catalog_dir: str | Path | None = None) -> FastAPI:
    if catalog is None:
        catalog = load_catalog(resolve_catalog_dir(catalog_dir))

    app = FastAPI(title="llmscreen", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.catalog = catalog

    def error_response(status: int, code: str, message: str, details: dict | None = None) -> JSONResponse:
        return JSONResponse(
            status_code=status, content=serialize.error_payload(code, message, details)
        )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError) -> JSONResponse:
        return error_response(exc.status, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError) -> JSONResponse:
        details = {
            "errors": [
                {"loc": [str(part) for part in err.get("loc", ())], "msg": err.get("msg", "")}
                for err in exc.errors()
            ]
        }
        return error_response(400, "invalid_request", "malformed request body", details)

    @app.exception_handler(Exception)
    async def handle_unexpected(request: Request, exc: Exception) -> JSONResponse:
        # Never leak stack detail; the message stays generic by design.
        return error_response(500, "internal_error", "internal error")

    @app.get("/v1/models")
    def get_models() -> JSONResponse:
        return JSONResponse(serialize.models_payload(catalog))

    @app.post("/v1/parse")
    def post_parse(body: ParseRequest) -> JSONResponse:
        if not body.description.strip():
            raise ApiError(400, "empty_description", "description is empty")
        try:
            scenario = parse_scenario(body.description, catalog)
        except ScenarioParseError as exc:
            raise ApiError(
                422,
                "parse_failed",
                "could not extract a scenario from the description",
                {"diagnostics": serialize.diagnostics_payload(exc.diagnostics)},
            ) from exc
        return JSONResponse(serialize.parse_payload(catalog, scenario))

    @app.post("/v1/estimate")
    def post_estimate(body: EstimateRequest) -> JSONResponse:
        try:
            profile = lookup_model(catalog, body.model)
        except ModelNotFoundError as exc:
            raise ApiError(
                404,
                "model_not_found",
                str(exc),
                {"suggestions": list(exc.suggestions)},
            ) from exc
        except AmbiguousModelError as exc:
            raise ApiError(
                422,
                "model_ambiguous",
                str(exc),
                {"candidates": list(exc.candidates)},
            ) from exc

        request_type = body.request_type if body.request_type is not None else "generic"
        defaults = catalog.lexicon.token_defaults.get(request_type)
        if defaults is None:
            known = ", ".join(sorted(catalog.lexicon.token_defaults))
            raise ApiError(
                400, "invalid_request", f"unknown request_type {request_type!r}; known: {known}"
            )

        explicit_tokens = body.input_tokens is not None or body.output_tokens is not None
        input_tokens = body.input_tokens if body.input_tokens is not None else defaults.input_tokens
        output_tokens = (
            body.output_tokens if body.output_tokens is not None else defaults.output_tokens
        )
        if input_tokens < 0 or output_tokens < 0 or (input_tokens == 0 and output_tokens == 0):
            raise ApiError(
                422,
                "invalid_tokens",
                "token counts must be >= 0 and not both zero",
            )

        if body.requests_per_month is not None and body.requests_per_month < 1:
            raise ApiError(422, "invalid_volume", "requests_per_month must be >= 1")

        if body.country is not None and not catalog.has_country(body.country):
            raise ApiError(
                422,
                "invalid_country",
                f"country {body.country!r} is not in the catalog",
                {"known": [c.country_code for c in catalog.countries]},
            )

        scenario = Scenario(
            model_id=profile.id,
            request_type=request_type,
            input_tokens=input_tokens,
            output_tokens=output_tokens,
            requests_per_month=body.requests_per_month,
            country_code=body.country,
            field_provenance={
                "model": "explicit",
                "request_type": "explicit" if body.request_type is not None else "default",
                "token_load": "explicit" if explicit_tokens else "default",
                "requests_per_month": (
                    "explicit" if body.requests_per_month is not None else "default"
                ),
                "country": "explicit" if body.country is not None else "default",
            },
        )
        result = run_scenario(catalog, scenario)
        return JSONResponse(serialize.estimate_payload(catalog, result))

    @app.get("/v1/observatory")
    def get_observatory(format: str = "json") -> Response:
        if format not in ("json", "csv"):
            raise ApiError(400, "invalid_format", f"format must be json or csv, got {format!r}")
        rows = build_observatory(catalog)
        if format == "csv":
            return Response(
                content=export_table(rows, "csv"),
                media_type="text/csv; charset=utf-8",
                headers={"X-Methodology-Version": methodology_version(catalog)},
            )
        return JSONResponse(serialize.observatory_payload(catalog, rows))

    @app.get("/v1/models/{model_id}/training")
    def get_training(model_id: str) -> JSONResponse:
        try:
            profile = catalog.model(model_id)
        except ModelNotFoundError as exc:
            raise ApiError(
                404, "model_not_found", str(exc), {"suggestions": list(exc.suggestions)}
            ) from exc
        estimate = estimate_training(profile, catalog.training_anchor, catalog.factors)
        return JSONResponse(serialize.training_payload(catalog, profile, estimate))

    @app.api_route(
        "/{path:path}", methods=["GET", "POST", "PUT", "DELETE", "PATCH"], include_in_schema=False
    )
    def catch_all(path: str) -> JSONResponse:
        first = path.split("/", 1)[0]
        if first.startswith("v") and first[1:].isdigit() and first != "v1":
            raise ApiError(
                404, "unknown_version", f"API version {first!r} does not exist; use /v1"
            )
        raise ApiError(404, "not_found", f"no such route: /{path}")

    return app
