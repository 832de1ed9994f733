"""HTTP surface of the guardrail service."""

from __future__ import annotations

import socket

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..errors import (
    AuthMissing,
    BackendEmpty,
    BackendError,
    BackendTimeout,
    BackendUnavailable,
    ConflictingFragment,
    EmptyQuery,
    FragmentNotFound,
    LexguardError,
    MalformedDocument,
    QuerySyntaxError,
    SchemaViolation,
    TemplateInvalid,
)
from ..kg.documents import parse_legislation
from ..kg.ids import FragmentId
from ..search.engine import execute_query
from ..search.queries import SearchQuery, parse_query_text
from .config import ServiceConfig
from .pipeline import GuardrailPipeline
from .schemas import (
    ChatRequestBody,
    QueryRequestBody,
    answer_to_body,
    fragment_to_body,
    hits_to_body,
    report_to_body,
)

_ERROR_MAP: list[tuple[type, str, int]] = [
    (QuerySyntaxError, "QUERY_SYNTAX", 400),
    (EmptyQuery, "EMPTY_QUERY", 400),
    (MalformedDocument, "MALFORMED_DOCUMENT", 400),
    (SchemaViolation, "SCHEMA_VIOLATION", 400),
    (ConflictingFragment, "CONFLICTING_FRAGMENT", 409),
    (FragmentNotFound, "NOT_FOUND", 404),
    (TemplateInvalid, "TEMPLATE_INVALID", 400),
    (AuthMissing, "AUTH_MISSING", 500),
    (BackendTimeout, "BACKEND_TIMEOUT", 504),
    (BackendEmpty, "BACKEND_EMPTY", 502),
    (BackendUnavailable, "BACKEND_UNAVAILABLE", 502),
    (BackendError, "BACKEND_ERROR", 502),
]


class ServiceStartupError(LexguardError):
    """The service could not start (busy port, unreadable KG, bad config)."""


def _error_response(code: str, message: str, status: int) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def create_app(
    config: ServiceConfig | None = None, pipeline: GuardrailPipeline | None = None
) -> FastAPI:
    if pipeline is None:
        if config is None:
            raise ValueError("create_app needs a config or a pipeline")
        pipeline = config.build_pipeline()

    app = FastAPI(title="lexguard", version="0.1.0")
    app.state.pipeline = pipeline
    app.state.config = config
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(LexguardError)
    async def lexguard_error_handler(request: Request, exc: LexguardError):
        for etype, code, status in _ERROR_MAP:
            if isinstance(exc, etype):
                return _error_response(code, str(exc), status)
        return _error_response("INTERNAL", str(exc), 500)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return _error_response("VALIDATION", str(exc), 400)

    @app.get("/health")
    def health():
        snapshot = pipeline.snapshot
        return {
            "status": "ok",
            "snapshot_built_at": snapshot.built_at.isoformat(),
            "fragments": snapshot.doc_count,
        }

    @app.post("/v1/chat")
    def chat(body: ChatRequestBody):
        if not body.prompt.strip():
            return _error_response("EMPTY_PROMPT", "prompt must not be empty", 400)
        answer = pipeline.handle_chat(body.prompt, body.jurisdiction)
        return answer_to_body(answer)

    @app.post("/v1/query")
    def query(body: QueryRequestBody):
        if body.q is not None:
            parsed = parse_query_text(body.q, pipeline.lexicon)
            if body.limit is not None:
                parsed = SearchQuery(
                    parsed.terms, parsed.modality, parsed.jurisdiction, body.limit
                )
        else:
            if body.terms is None and not body.modality:
                return _error_response(
                    "EMPTY_QUERY", "provide q or terms/modality", 400
                )
            parsed = SearchQuery(
                tuple(body.terms or ()),
                tuple(body.modality),
                body.jurisdiction,
                body.limit if body.limit is not None else 5,
            )
        hits = execute_query(parsed, pipeline.snapshot)
        return hits_to_body(hits)

    @app.get("/v1/fragments/{fragment_id:path}")
    def get_fragment(fragment_id: str):
        fid = FragmentId.parse(fragment_id)
        return fragment_to_body(pipeline.store.get_fragment(fid))

    @app.post("/v1/ingest")
    async def ingest(request: Request):
        document = parse_legislation(await request.body())
        report = pipeline.store.ingest(document)
        config_ = app.state.config
        if config_ is not None and config_.kg_path:
            pipeline.store.save(config_.kg_path)
        return report_to_body(report)

    @app.post("/v1/reindex")
    def reindex():
        snapshot = pipeline.reindex()
        return {
            "status": "ok",
            "built_at": snapshot.built_at.isoformat(),
            "fragments": snapshot.doc_count,
        }

    return app


def serve(
    config: ServiceConfig, port: int | None = None, host: str = "127.0.0.1"
) -> None:
    """Run the service until interrupted.

    Binds the socket up front so a busy port fails fast; port 0 asks the
    OS for a free port, printed on startup.
    """
    try:
        app = create_app(config=config)
    except Exception as exc:
        raise ServiceStartupError(f"cannot initialize service: {exc}") from exc

    chosen = port if port is not None else config.port
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, chosen))
    except OSError as exc:
        sock.close()
        raise ServiceStartupError(f"cannot bind {host}:{chosen}: {exc}") from None
    actual = sock.getsockname()[1]
    print(f"lexguard service listening on http://{host}:{actual}", flush=True)

    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
