"""In-process boundary between the core pipeline and its front ends.

Requests and responses are plain data (pydantic models in, JSON-ready dicts
out), so the command line, the HTTP service and any embedding host drive the
exact same code path. Estimation runs stream progress events followed by one
result event; user-level failures become structured error events rather than
exceptions, so a host loop never has to guard against being torn down by bad
input.
"""
from __future__ import annotations

import json
import queue
import threading
import time
from typing import Iterator, Optional

from pydantic import BaseModel, Field, model_validator

from .dataset import TransactionDatabase, parse_fimi, randomize_marginals
from .datasets import DATASETS, build_dataset
from .errors import EnumerationCapExceeded, FimiParseError, FreqspecError, InvalidQueryError
from .spectrum import (
    DEFAULT_EXACT_CAP,
    SpectrumQuery,
    SpectrumResult,
    estimate_spectrum,
    exact_spectrum,
)

_U64_MAX = 2**64 - 1


class EstimateRequest(BaseModel):
    """One estimation (or baseline) run over inline FIMI text or a bundled dataset."""

    data: Optional[str] = None
    dataset: Optional[str] = None
    sigma_min: Optional[int] = Field(default=None, ge=1)
    sigma_max: Optional[int] = Field(default=None, ge=1)
    n_paths: int = Field(default=5000, ge=1)
    seed: int = Field(default=1, ge=0, le=_U64_MAX)
    include_empty_set: bool = True
    log_fit: bool = False
    progress_every: int = Field(default=100, ge=1)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.data is None) == (self.dataset is None):
            raise ValueError("provide exactly one of 'data' and 'dataset'")
        return self


class ExactRequest(BaseModel):
    """One exact-counting run."""

    data: Optional[str] = None
    dataset: Optional[str] = None
    sigma_min: int = Field(default=1, ge=1)
    include_empty_set: bool = True
    max_count: int = Field(default=DEFAULT_EXACT_CAP, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.data is None) == (self.dataset is None):
            raise ValueError("provide exactly one of 'data' and 'dataset'")
        return self


def resolve_database(request) -> TransactionDatabase:
    if request.data is not None:
        return parse_fimi(request.data)
    if request.dataset not in DATASETS:
        raise InvalidQueryError(
            f"unknown dataset {request.dataset!r}; available: {', '.join(DATASETS)}"
        )
    return build_dataset(request.dataset)


def effective_query(request: EstimateRequest, db: TransactionDatabase) -> SpectrumQuery:
    """Apply the default threshold interval [1, min(1000, n_rows)]."""
    sigma_min = 1 if request.sigma_min is None else request.sigma_min
    sigma_max = (
        min(1000, db.n_rows) if request.sigma_max is None else request.sigma_max
    )
    return SpectrumQuery(
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        n_paths=request.n_paths,
        master_seed=request.seed,
        include_empty_set=request.include_empty_set,
        log_fit=request.log_fit,
    )


def result_doc(result: SpectrumResult, kind: str) -> dict:
    """Serialize a run in the documented result schema.

    ``runtime_ms`` is the only field that may differ between two runs with
    identical config; everything else is reproducible from ``config`` alone.
    """
    q = result.query
    return {
        "config": {
            "kind": kind,
            "sigma_min": q.sigma_min,
            "sigma_max": q.sigma_max,
            "n_paths": q.n_paths,
            "seed": q.master_seed,
            "include_empty_set": q.include_empty_set,
            "log_fit": q.log_fit,
        },
        "dataset": {"rows": result.n_rows, "attrs": result.n_attrs},
        "points": [{"sigma": s, "estimate": e} for s, e in result.points],
        "curve": [
            {"sigma": b, "value": v}
            for b, v in zip(result.curve.breakpoints, result.curve.levels)
        ],
        "runtime_ms": result.runtime_ms,
    }


def error_event(exc: FreqspecError) -> dict:
    err: dict = {"message": str(exc)}
    if isinstance(exc, FimiParseError):
        err["code"] = "parse_error"
        err["line"] = exc.line
    elif isinstance(exc, EnumerationCapExceeded):
        err["code"] = "cap_exceeded"
        err["cap"] = exc.cap
        err["count"] = exc.count
    elif isinstance(exc, InvalidQueryError):
        err["code"] = "invalid_query"
    else:
        err["code"] = "error"
    return {"type": "error", "error": err}


def _stream_run(
    db: TransactionDatabase, request: EstimateRequest, kind: str
) -> Iterator[dict]:
    """Drive estimate_spectrum on a worker thread, relaying its progress ticks."""
    events: queue.Queue = queue.Queue()
    query = effective_query(request, db)

    def run():
        try:
            res = estimate_spectrum(
                db,
                query,
                workers=request.threads,
                progress=lambda done, total: events.put(("tick", done, total)),
                progress_every=request.progress_every,
            )
            events.put(("done", res))
        except BaseException as exc:  # relayed, not swallowed
            events.put(("raise", exc))

    worker = threading.Thread(target=run, daemon=True)
    worker.start()
    try:
        while True:
            item = events.get()
            if item[0] == "tick":
                yield {"type": "progress", "done": item[1], "total": item[2]}
            elif item[0] == "done":
                yield {"type": "result", "result": result_doc(item[1], kind)}
                return
            else:
                raise item[1]
    finally:
        worker.join()


def bridge_estimate(request: EstimateRequest) -> Iterator[dict]:
    """Progress events then one result event; user errors become error events."""
    try:
        db = resolve_database(request)
        yield from _stream_run(db, request, "estimate")
    except FreqspecError as exc:
        yield error_event(exc)


def bridge_baseline(request: EstimateRequest) -> Iterator[dict]:
    """Like bridge_estimate, on marginal-preserving randomized data.

    The run seed drives both the column shuffles and the path sampling.
    """
    try:
        db = randomize_marginals(resolve_database(request), request.seed)
        yield from _stream_run(db, request, "baseline")
    except FreqspecError as exc:
        yield error_event(exc)


def bridge_exact(request: ExactRequest) -> dict:
    """Exact counting as a single result or error event."""
    try:
        db = resolve_database(request)
        t0 = time.perf_counter()
        ex = exact_spectrum(
            db,
            sigma_min=request.sigma_min,
            max_count=request.max_count,
            include_empty_set=request.include_empty_set,
        )
        runtime_ms = (time.perf_counter() - t0) * 1000.0
    except FreqspecError as exc:
        return error_event(exc)
    doc = {
        "config": {
            "kind": "exact",
            "sigma_min": request.sigma_min,
            "include_empty_set": request.include_empty_set,
            "max_count": request.max_count,
        },
        "dataset": {"rows": db.n_rows, "attrs": db.n_attrs},
        "counts": [
            {"sigma": s, "count": ex.count_at(s)}
            for s in range(request.sigma_min, db.n_rows + 1)
        ],
        "runtime_ms": runtime_ms,
    }
    return {"type": "result", "result": doc}


def bridge_parse(text: str) -> dict:
    """Shape summary of inline FIMI text, or a structured parse error."""
    try:
        db = parse_fimi(text)
    except FimiParseError as exc:
        return error_event(exc)
    return {
        "type": "result",
        "result": {"rows": db.n_rows, "attrs": db.n_attrs},
    }


def canonical_json(doc: dict) -> str:
    """Key-sorted, whitespace-free serialization for byte comparisons."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def without_runtime(doc: dict) -> dict:
    """Copy of a result document with the non-deterministic field removed."""
    return {k: v for k, v in doc.items() if k != "runtime_ms"}
