"""HTTP service wrapping the bridge for the web UI and other local clients.

Endpoints mirror the bridge one-to-one; estimation and baseline runs stream
newline-delimited JSON (progress events, then the result event) so clients
can render live progress. The service is meant to run on localhost next to
the UI: dataset bytes never leave the machine.
"""
from __future__ import annotations

import json
import os
from typing import Iterator, Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .bridge import (
    EstimateRequest,
    ExactRequest,
    bridge_baseline,
    bridge_estimate,
    bridge_exact,
    bridge_parse,
)
from .dataset import to_fimi
from .datasets import DATASETS, build_dataset, load_exact_fixture

app = FastAPI(title="freqspec", version=__version__)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


class HealthResponse(BaseModel):
    status: str
    version: str


class ParseRequest(BaseModel):
    data: str


class ParseSummary(BaseModel):
    rows: int
    attrs: int


class DatasetEntry(BaseModel):
    name: str
    rows: int
    attrs: int
    description: str
    default_sigma_min: int
    default_sigma_max: int
    default_n_paths: int
    exact_sigma_min: Optional[int]


class ExactOverlay(BaseModel):
    sigma_min: int
    counts: list[tuple[int, int]]  # (sigma, count) pairs, ascending sigma


class DatasetDetail(DatasetEntry):
    exact: Optional[ExactOverlay]


def _status_for(error: dict) -> int:
    return 409 if error.get("code") == "cap_exceeded" else 400


def _entry(name: str) -> DatasetEntry:
    info = DATASETS[name]
    return DatasetEntry(
        name=info.name,
        rows=info.n_rows,
        attrs=info.n_attrs,
        description=info.description,
        default_sigma_min=info.default_sigma_min,
        default_sigma_max=info.default_sigma_max,
        default_n_paths=info.default_n_paths,
        exact_sigma_min=info.exact_sigma_min,
    )


@app.get("/api/health", response_model=HealthResponse)
def health():
    return HealthResponse(status="ok", version=__version__)


@app.get("/api/datasets", response_model=list[DatasetEntry])
def datasets():
    return [_entry(name) for name in DATASETS]


@app.get("/api/datasets/{name}", response_model=DatasetDetail)
def dataset_detail(name: str):
    if name not in DATASETS:
        return JSONResponse(
            {"type": "error", "error": {"code": "unknown_dataset", "message": f"unknown dataset {name!r}"}},
            status_code=404,
        )
    entry = _entry(name)
    overlay = None
    if entry.exact_sigma_min is not None:
        fixture = load_exact_fixture(name)
        overlay = ExactOverlay(
            sigma_min=fixture.sigma_min,
            counts=[
                (s, fixture.count_at(s))
                for s in range(fixture.sigma_min, fixture.n_rows + 1)
            ],
        )
    return DatasetDetail(**entry.model_dump(), exact=overlay)


@app.get("/api/datasets/{name}/fimi", response_class=PlainTextResponse)
def dataset_fimi(name: str):
    if name not in DATASETS:
        return PlainTextResponse(f"unknown dataset {name!r}\n", status_code=404)
    return PlainTextResponse(to_fimi(build_dataset(name)))


@app.post("/api/parse")
def parse(request: ParseRequest):
    event = bridge_parse(request.data)
    if event["type"] == "error":
        return JSONResponse(event, status_code=_status_for(event["error"]))
    return ParseSummary(**event["result"])


def _ndjson(events: Iterator[dict]):
    """Stream bridge events; turn an immediate error into a proper HTTP status."""
    first = next(events)
    if first["type"] == "error":
        return JSONResponse(first, status_code=_status_for(first["error"]))

    def gen():
        yield json.dumps(first) + "\n"
        for event in events:
            yield json.dumps(event) + "\n"

    return StreamingResponse(gen(), media_type="application/x-ndjson")


@app.post("/api/estimate")
def estimate(request: EstimateRequest):
    return _ndjson(bridge_estimate(request))


@app.post("/api/baseline")
def baseline(request: EstimateRequest):
    return _ndjson(bridge_baseline(request))


@app.post("/api/exact")
def exact(request: ExactRequest):
    event = bridge_exact(request)
    if event["type"] == "error":
        return JSONResponse(event, status_code=_status_for(event["error"]))
    return event


_ui_dir = os.environ.get("FREQSPEC_UI_DIR", os.path.join("frontend", "dist"))
if os.path.isdir(_ui_dir):
    app.mount("/", StaticFiles(directory=_ui_dir, html=True), name="ui")
