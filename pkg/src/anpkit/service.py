"""HTTP API for elicitation sessions.

Localhost-facing FastAPI application wrapping a :class:`SessionStore`.
Domain errors surface as ``{"error": code, "detail": ...}`` with a 4xx
status. The web client's static build, when present, is served under
``/ui``.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import (
    AnpError,
    ConsistencyGateFailed,
    Incomplete,
    InvalidModel,
    UnknownContext,
    UnknownExpert,
    UnknownPair,
    UnknownSession,
    ValueNotOnScale,
)
from .network import network_to_dict
from .session import SessionStore, questionnaire

_STATUS = {
    UnknownSession.code: 404,
    UnknownExpert.code: 404,
    UnknownContext.code: 404,
    UnknownPair.code: 404,
    ValueNotOnScale.code: 422,
    Incomplete.code: 409,
    ConsistencyGateFailed.code: 422,
    InvalidModel.code: 400,
}


class CreateSessionBody(BaseModel):
    model: dict | str
    experts: list[str]


class JudgmentBody(BaseModel):
    expert: str
    context: str
    row: str
    col: str
    value: str


def create_app(store: SessionStore, ui_dir: str | Path | None = None, model_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="anpkit elicitation service")

    @app.exception_handler(AnpError)
    async def _domain_error(request: Request, exc: AnpError):
        status = _STATUS.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": exc.code, "detail": exc.detail if exc.detail is not None else str(exc)},
        )

    def _resolve_model(spec: dict | str) -> dict:
        if isinstance(spec, dict):
            return spec
        base = Path(model_dir) if model_dir else Path.cwd()
        path = Path(spec)
        if not path.is_absolute():
            path = base / path
        if not path.exists():
            raise InvalidModel(f"model file not found: {spec}")
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InvalidModel(f"model file is not valid JSON: {exc}")

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = store.create(_resolve_model(body.model), body.experts)
        return {"session_id": session.session_id}

    @app.get("/sessions/{session_id}/questionnaire")
    def get_questionnaire(session_id: str):
        session = store.load(session_id)
        questions = questionnaire(session.net)
        return {
            "session_id": session.session_id,
            "model": network_to_dict(session.net),
            "experts": session.experts,
            "questions": questions,
            "total": len(questions),
            "expected_per_expert": session.expected_per_expert,
        }

    @app.put("/sessions/{session_id}/judgments")
    def put_judgment(session_id: str, body: JudgmentBody):
        with store.lock(session_id):
            session = store.load(session_id)
            result = session.submit(body.expert, body.context, body.row, body.col, body.value)
            store.save(session)
        return result.__dict__

    @app.get("/sessions/{session_id}/consistency")
    def get_consistency(session_id: str):
        session = store.load(session_id)
        return session.consistency_snapshot()

    @app.post("/sessions/{session_id}/compute")
    def compute(session_id: str):
        with store.lock(session_id):
            session = store.load(session_id)
            report = session.compute()
            store.save(session)
        return {k: v for k, v in report.items() if not k.startswith("_")}

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        session = store.load(session_id)
        if session.report_json is None:
            return JSONResponse(status_code=404, content={"error": "not_computed", "detail": "no report computed yet"})
        return json.loads(session.report_json)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
