"""HTTP JSON API over loaded corpora: events, barrier labels, the four
analyses (cached, byte-deterministic), and atomic snapshot reload."""
from __future__ import annotations

import hashlib
import sys
import threading
import time
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .analyses import (
    ANALYSES,
    AnalysisError,
    Snapshot,
    UnknownEvent,
    ValidationError,
    parse_request,
    run_analysis,
)
from .barriers import BarrierKind, assign_barrier, load_barriers_db
from .cache import ResultCache, cache_key
from .corpus import load_corpus
from .documents import canonical_json

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(Exception):
    pass


def load_config(path: str | Path) -> dict:
    try:
        with open(path, "rb") as fh:
            config = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad config {path}: {exc}") from exc
    for section in ("corpora", "barriers"):
        if section not in config:
            raise ConfigError(f"config missing [{section}] section")
    return config


def build_snapshot(config: dict) -> Snapshot:
    corpora = {
        event: load_corpus(path, event) for event, path in config["corpora"].items()
    }
    barriers_cfg = config["barriers"]
    db = load_barriers_db(
        barriers_cfg["publishers"],
        barriers_cfg["clusters"],
        barriers_cfg.get("prosperity"),
    )
    return Snapshot(corpora=corpora, db=db)


def snapshot_id(snapshot: Snapshot) -> str:
    digest = hashlib.sha256()
    for event in sorted(snapshot.corpora):
        digest.update(event.encode())
        for art in snapshot.corpora[event]:
            digest.update(art.id.encode())
            digest.update(art.published_at.isoformat().encode())
    return digest.hexdigest()


def _error_response(status: int, code: str, message: str, details: dict | None = None):
    return JSONResponse(
        status_code=status,
        content={"error": code, "message": message, "details": details or {}},
    )


def create_app(config: dict) -> FastAPI:
    app = FastAPI(title="newsbarriers", docs_url=None, redoc_url=None)
    app.state.config = config
    first = build_snapshot(config)
    app.state.snapshot_state = (first, snapshot_id(first))
    app.state.cache = ResultCache(
        config.get("cache_dir", ".newsbarriers-cache"),
        max_entries=int(config.get("cache_max_entries", 512)),
    )
    app.state.reload_lock = threading.Lock()

    @app.exception_handler(ValidationError)
    async def _validation(_req: Request, exc: ValidationError):
        status = 404 if isinstance(exc, UnknownEvent) else 400
        code = "unknown_event" if isinstance(exc, UnknownEvent) else "validation_error"
        return _error_response(status, code, str(exc))

    @app.exception_handler(AnalysisError)
    async def _analysis(_req: Request, exc: AnalysisError):
        return _error_response(500, "analysis_error", str(exc))

    @app.get("/api/events")
    def events():
        snapshot, _ = app.state.snapshot_state
        return sorted(snapshot.corpora)

    @app.get("/api/barriers/{kind}/labels")
    def labels(kind: str, event: str):
        try:
            barrier = BarrierKind(kind)
        except ValueError:
            raise ValidationError(f"unknown barrier kind {kind!r}")
        snapshot, _ = app.state.snapshot_state
        corpus = snapshot.corpus(event)
        counts: dict[str, int] = {}
        for art in corpus:
            label = assign_barrier(art, barrier, snapshot.db)
            counts[label] = counts.get(label, 0) + 1
        return [
            {"label": label, "articles": count}
            for label, count in sorted(counts.items())
        ]

    def _serve_analysis(analysis: str, params: dict) -> Response:
        request = parse_request({**params, "analysis": analysis})
        snapshot, snap_id = app.state.snapshot_state
        key = cache_key(snap_id, request.normalized())
        started = time.perf_counter()
        hit = app.state.cache.get(key) is not None

        def compute() -> bytes:
            return canonical_json(run_analysis(snapshot, request))

        body = app.state.cache.get_or_compute(key, compute)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        # timing and cache status live in headers so the body stays
        # byte-identical across repeated requests
        return Response(
            content=body,
            media_type="application/json",
            headers={
                "X-Cache": "hit" if hit else "miss",
                "X-Compute-Ms": f"{elapsed_ms:.3f}",
            },
        )

    @app.get("/api/analyses/{analysis}")
    def analysis_get(analysis: str, request: Request):
        if analysis not in ANALYSES:
            raise ValidationError(f"unknown analysis {analysis!r}")
        return _serve_analysis(analysis, dict(request.query_params))

    @app.post("/api/analyses/{analysis}")
    async def analysis_post(analysis: str, request: Request):
        if analysis not in ANALYSES:
            raise ValidationError(f"unknown analysis {analysis!r}")
        params = await request.json()
        if not isinstance(params, dict):
            raise ValidationError("request body must be a JSON object")
        return _serve_analysis(analysis, params)

    @app.post("/api/reload")
    def reload():
        with app.state.reload_lock:
            fresh = build_snapshot(app.state.config)
            fresh_id = snapshot_id(fresh)
            app.state.snapshot_state = (fresh, fresh_id)  # atomic swap
        return {"events": sorted(fresh.corpora), "snapshot": fresh_id}

    static_dir = config.get("static_dir")
    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def serve(config: dict) -> None:
    """Run the API with uvicorn until interrupted."""
    import uvicorn

    bind = config.get("bind", "127.0.0.1:8000")
    host, _, port = bind.partition(":")
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port or 8000))
