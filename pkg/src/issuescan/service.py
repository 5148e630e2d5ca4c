"""HTTP detection endpoint for the companion browser extension.

``POST /detect`` accepts a draft issue body, runs the full pipeline, and
returns every candidate with its score so clients can highlight spans.
``GET /health`` reports liveness and the loaded model schema.  The app is
stateless: patterns, rules, and model are loaded once at startup and
shared read-only, and nothing submitted is logged verbatim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .pipeline import DetectionPipeline

DEFAULT_MAX_BODY_BYTES = 256 * 1024


@dataclass
class ServiceConfig:
    pipeline: DetectionPipeline = field(default_factory=DetectionPipeline)
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES
    # CORS stays restricted to the configured extension origin.
    allowed_origin: str = "*"


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="issuescan detection service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.allowed_origin],
        allow_methods=["POST", "GET"],
        allow_headers=["*"],
    )
    pipeline = config.pipeline

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model_schema_version": pipeline.model.schema_version,
        }

    @app.post("/detect")
    async def detect(request: Request):
        raw = await request.body()
        if len(raw) > config.max_body_bytes:
            return JSONResponse(
                status_code=413,
                content={"error": f"body exceeds {config.max_body_bytes} bytes"},
            )
        try:
            payload = json.loads(raw)
        except (ValueError, UnicodeDecodeError):
            return JSONResponse(
                status_code=400, content={"error": "request body must be JSON"}
            )
        if not isinstance(payload, dict) or "text" not in payload:
            return JSONResponse(
                status_code=400, content={"error": "missing required field 'text'"}
            )
        text = payload["text"]
        if not isinstance(text, str):
            return JSONResponse(
                status_code=400, content={"error": "'text' must be a string"}
            )
        try:
            cleaned, verdicts = pipeline.detect(text)
        except Exception:  # pipeline failure must not leak the submitted text
            return JSONResponse(
                status_code=500, content={"error": "internal pipeline failure"}
            )
        return {
            "breach": any(v.is_breach for v in verdicts),
            "candidates": [
                {
                    "start": v.candidate.span[0],
                    "end": v.candidate.span[1],
                    "matched": v.candidate.text,
                    "pattern": v.candidate.pattern_name,
                    "score": v.score,
                }
                for v in verdicts
            ],
            "cleaned_text_length": len(cleaned),
        }

    return app
