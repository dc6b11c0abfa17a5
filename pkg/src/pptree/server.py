"""HTTP service exposing simulate / fit / boundary / bench as JSON.

State lives in an in-memory session store with TTL eviction (one hour);
dataset and model ids are opaque handles into it. Payload sizes are capped
(n <= 50000 points, grid resolution <= 501, benchmark repetitions <= 1000).
Schema violations return 400, unknown ids 404, fit failures 422, all as
{"code", "message"} objects.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .bench import error_rate, report_to_json, run_benchmark, spec_from_json
from .boundary import boundary_grid, data_bbox
from .errors import PPTreeError
from .projection import IndexConfig
from .simulate import SimSpec, simulate
from .tree import (
    FitConfig,
    depth,
    fit,
    n_internal,
    n_leaves,
    predict_batch,
    serialize,
)

SCHEMA_VERSION = 1
MAX_POINTS = 50_000
MAX_RESOLUTION = 501
MAX_REPETITIONS = 1_000
SESSION_TTL_SECONDS = 3600.0

PDA_DEFAULT_LAMBDA = 0.1


class SessionStore:
    """Thread-safe id -> value map whose entries expire after a TTL."""

    def __init__(self, ttl: float = SESSION_TTL_SECONDS, clock=time.monotonic):
        self._ttl = ttl
        self._clock = clock
        self._lock = threading.Lock()
        self._items: dict[str, tuple[float, object]] = {}

    def _evict(self, now: float) -> None:
        dead = [k for k, (expiry, _) in self._items.items() if expiry <= now]
        for k in dead:
            del self._items[k]

    def put(self, value) -> str:
        now = self._clock()
        key = uuid.uuid4().hex
        with self._lock:
            self._evict(now)
            self._items[key] = (now + self._ttl, value)
        return key

    def get(self, key: str):
        now = self._clock()
        with self._lock:
            self._evict(now)
            entry = self._items.get(key)
            if entry is None:
                return None
            # touching an entry renews it
            self._items[key] = (now + self._ttl, entry[1])
            return entry[1]

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)


class SimulateRequest(BaseModel):
    scenario: Literal["basic", "outlier", "mixture"]
    n: int = 300
    k: int = 3
    seed: int = 0
    separation: float = 6.0
    elongation: float = 1.0
    outlier_fraction: float = 0.15
    overlap: float = 0.0
    max_overlap: float | None = None


class FitRequest(BaseModel):
    dataset_id: str
    variant: Literal["original", "mod1", "mod2", "axis"] = "original"
    rule: int = 1
    index: Literal["lda", "pda"] = "lda"
    lambda_: float | None = Field(default=None, alias="lambda")
    min_node_size: int = 10
    entropy_threshold: float = 0.01
    max_depth: int = 30
    seed: int = 0

    model_config = {"populate_by_name": True}


class BoundaryRequest(BaseModel):
    model_id: str
    resolution: int = 201


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(ttl: float = SESSION_TTL_SECONDS, clock=time.monotonic) -> FastAPI:
    app = FastAPI(title="pptree", version=__version__)
    # the browser explorer is served as static files from another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    datasets = SessionStore(ttl=ttl, clock=clock)
    models = SessionStore(ttl=ttl, clock=clock)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        parts = []
        for err in exc.errors()[:3]:
            loc = ".".join(str(x) for x in err.get("loc", ()))
            parts.append(f"{loc}: {err.get('msg', 'invalid')}")
        return _error(400, "invalid_request", "; ".join(parts) or "invalid request")

    @app.exception_handler(PPTreeError)
    async def on_domain_error(request: Request, exc: PPTreeError):
        return _error(422, "fit_failed", str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok", "schema_version": SCHEMA_VERSION, "version": __version__}

    @app.post("/simulate")
    def simulate_endpoint(req: SimulateRequest):
        if req.n > MAX_POINTS:
            return _error(400, "invalid_request", f"n exceeds the limit of {MAX_POINTS}")
        try:
            spec = SimSpec(
                scenario=req.scenario,
                n=req.n,
                k=req.k,
                seed=req.seed,
                separation=req.separation,
                elongation=req.elongation,
                outlier_fraction=req.outlier_fraction,
                overlap=req.overlap,
                max_overlap=req.max_overlap,
            )
            data = simulate(spec)
        except ValueError as exc:
            return _error(400, "invalid_request", str(exc))
        dataset_id = datasets.put(data)
        return {
            "schema_version": SCHEMA_VERSION,
            "dataset_id": dataset_id,
            "n": data.n,
            "k": data.n_classes,
            "points": data.X.tolist(),
            "labels": data.y.tolist(),
            "bbox": [list(side) for side in data_bbox(data)],
        }

    @app.post("/fit")
    def fit_endpoint(req: FitRequest):
        data = datasets.get(req.dataset_id)
        if data is None:
            return _error(404, "unknown_id", f"no dataset with id {req.dataset_id!r}")
        lam = req.lambda_
        if lam is None:
            lam = PDA_DEFAULT_LAMBDA if req.index == "pda" else 0.0
        try:
            cfg = FitConfig(
                index=IndexConfig(kind=req.index, lambda_=lam),
                rule=req.rule,
                min_node_size=req.min_node_size,
                entropy_threshold=req.entropy_threshold,
                max_depth=req.max_depth,
                seed=req.seed,
            )
        except ValueError as exc:
            return _error(400, "invalid_request", str(exc))
        try:
            tree = fit(data, cfg, req.variant)
        except (PPTreeError, ValueError) as exc:
            return _error(422, "fit_failed", str(exc))
        model_id = models.put((tree, req.dataset_id))
        training_error = error_rate(predict_batch(tree, data.X), data.y)
        return {
            "schema_version": SCHEMA_VERSION,
            "model_id": model_id,
            "dataset_id": req.dataset_id,
            "variant": tree.variant,
            "classes": list(tree.classes),
            "training_error": training_error,
            "n_leaves": n_leaves(tree),
            "n_internal": n_internal(tree),
            "depth": depth(tree),
            "notes": list(tree.notes),
            "model": json.loads(serialize(tree)),
        }

    @app.post("/boundary")
    def boundary_endpoint(req: BoundaryRequest):
        entry = models.get(req.model_id)
        if entry is None:
            return _error(404, "unknown_id", f"no model with id {req.model_id!r}")
        if not (2 <= req.resolution <= MAX_RESOLUTION):
            return _error(
                400, "invalid_request",
                f"resolution must lie in 2..{MAX_RESOLUTION}",
            )
        tree, dataset_id = entry
        data = datasets.get(dataset_id)
        if data is None:
            return _error(
                404, "unknown_id",
                f"training dataset {dataset_id!r} has expired; fit again",
            )
        try:
            grid = boundary_grid(tree, data, req.resolution)
        except (PPTreeError, ValueError) as exc:
            return _error(422, "fit_failed", str(exc))
        return {
            "schema_version": SCHEMA_VERSION,
            "model_id": req.model_id,
            "dataset_id": dataset_id,
            "resolution": grid.resolution,
            "bbox": [list(side) for side in grid.bbox],
            "x1": grid.axis(0).tolist(),
            "x2": grid.axis(1).tolist(),
            "labels": grid.labels.reshape(-1).tolist(),
            "border": grid.border.reshape(-1).astype(int).tolist(),
        }

    @app.post("/bench")
    async def bench_endpoint(request: Request):
        try:
            body = await request.body()
            spec = spec_from_json(body.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            return _error(400, "invalid_request", str(exc))
        if spec.repetitions > MAX_REPETITIONS:
            return _error(
                400, "invalid_request",
                f"repetitions exceeds the limit of {MAX_REPETITIONS}",
            )
        for src in spec.datasets:
            if src.sim is not None and src.sim.n > MAX_POINTS:
                return _error(
                    400, "invalid_request",
                    f"dataset {src.name!r} exceeds the limit of {MAX_POINTS} points",
                )
        try:
            report = run_benchmark(spec)
        except (PPTreeError, ValueError, OSError) as exc:
            return _error(422, "fit_failed", str(exc))
        return {
            "schema_version": SCHEMA_VERSION,
            "report": json.loads(report_to_json(report)),
        }

    return app


app = create_app()
