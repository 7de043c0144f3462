"""HTTP API over the annotation store, consumed by the browser UI.

All bodies are JSON; errors carry a machine-readable ``code`` and ``message``.
The built UI bundle, when present, is served as static files from ``/``.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .annotation import AnnotationError, AnnotationRecord, AnnotationStore, agreement_filter
from .generator import pair_to_dict


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(store: AnnotationStore, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="npschallenge annotation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/api/tasks/next")
    def next_task(annotator: str = ""):
        if not annotator:
            return _error(400, "missing_annotator", "query parameter 'annotator' is required")
        pair = store.next_task(annotator)
        if pair is None:
            return Response(status_code=204)
        return JSONResponse(pair_to_dict(pair))

    @app.post("/api/annotations")
    async def post_annotation(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "invalid_json", "request body must be a JSON object")
        if not isinstance(body, dict):
            return _error(400, "invalid_json", "request body must be a JSON object")
        makes_sense = body.get("makes_sense")
        if not isinstance(makes_sense, bool):
            return _error(400, "invalid_makes_sense", "'makes_sense' must be a JSON boolean")
        try:
            rec = AnnotationRecord(
                pair_id=str(body.get("pair_id") or ""),
                annotator_id=str(body.get("annotator_id") or ""),
                makes_sense=makes_sense,
                label=str(body.get("label") or ""),
                timestamp=str(body.get("timestamp") or ""),
            )
            store.record(rec)
        except AnnotationError as err:
            if "unknown pair id" in str(err):
                return _error(404, "unknown_pair", str(err))
            return _error(400, "invalid_annotation", str(err))
        return JSONResponse(status_code=201, content={"status": "recorded", "pair_id": rec.pair_id})

    @app.get("/api/progress")
    def progress():
        counts = store.counts()
        return JSONResponse(
            {
                "pairs": [
                    {"pair_id": p.id, "n_annotations": counts[p.id]} for p in store.pairs
                ],
                "total_pairs": len(store.pairs),
                "total_annotations": sum(counts.values()),
                "fully_annotated": sum(1 for n in counts.values() if n >= 3),
            }
        )

    @app.get("/api/decisions")
    def decisions():
        _, decs = agreement_filter(store, store.pairs)
        return JSONResponse(
            {
                "decisions": [d.to_dict() for d in decs],
                "kept_count": sum(1 for d in decs if d.kept),
            }
        )

    if static_dir:
        index_path = os.path.join(static_dir, "index.html")

        @app.get("/")
        def index():
            return FileResponse(index_path)

        app.mount("/", StaticFiles(directory=static_dir), name="static")

    return app
