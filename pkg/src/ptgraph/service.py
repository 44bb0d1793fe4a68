"""HTTP facade over the analysis pipeline.

Endpoints accept graph text in the DSL and return exactly the JSON the
CLI would print for the same input (same builders, same serialization).
Bad input is a 400 with a structured error body; blowing the completion
cap is a 422 because the request is well-formed but too expensive.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, api, dsl
from .errors import ParseError, PtGraphError, TooManyUndirectedEdges, ValidationError

app = FastAPI(title="ptgraph", version=__version__)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


class AnalyzeRequest(BaseModel):
    graph_text: str
    completion_cap: Optional[int] = None
    c1_conditioning: str = "y0"


class MinsetsRequest(BaseModel):
    graph_text: str
    outcome: str
    completion_cap: Optional[int] = None


class SimulateRequest(BaseModel):
    graph_text: str
    seeds: int = Field(default=200, ge=1, le=10_000)
    coeff_range: tuple[float, float] = (0.2, 1.5)
    seed_start: int = 0


def _status(exc: PtGraphError) -> int:
    if isinstance(exc, (ParseError, ValidationError)):
        return 400
    if isinstance(exc, TooManyUndirectedEdges):
        return 422
    return 400


@app.exception_handler(PtGraphError)
async def _domain_error(_request: Request, exc: PtGraphError):
    return JSONResponse(status_code=_status(exc), content=api.error_payload(exc))


def _json_response(payload: dict) -> Response:
    # Serialized by the shared builder so body bytes match the CLI output.
    return Response(content=api.to_json(payload), media_type="application/json")


@app.get("/v1/health")
async def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/analyze")
async def analyze(req: AnalyzeRequest) -> Response:
    g = dsl.parse(req.graph_text)
    return _json_response(
        api.analyze_graph(g, req.completion_cap, req.c1_conditioning)
    )


@app.post("/v1/minsets")
async def minsets(req: MinsetsRequest) -> Response:
    g = dsl.parse(req.graph_text)
    return _json_response(api.minsets_payload(g, req.outcome, req.completion_cap))


@app.post("/v1/simulate")
async def simulate(req: SimulateRequest) -> Response:
    g = dsl.parse(req.graph_text)
    return _json_response(
        api.simulate_payload(g, req.seeds, tuple(req.coeff_range), req.seed_start)
    )
