"""The JSON HTTP service the browser UI consumes.

Domain failures are reported inside the JSON envelope with HTTP 200:
``{"ok": false, "error": {"type": "parse|eval|limit", "message", "line",
"col"}}``. Successful runs return ``{"ok": true, "result": {...}}``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.staticfiles import StaticFiles

from ..core import EvalError, ParseError
from .languages import default_registry
from .registry import LimitError, Registry, StepsWidget, widget_kind
from .sessions import SessionError, SessionStore, StaleStepError


def _widget_info(widget) -> dict:
    info = {"name": widget.name, "kind": widget_kind(widget)}
    if isinstance(widget.spec, StepsWidget):
        # How a step widget's state body should be displayed.
        info["view"] = widget.spec.kind
    return info


def _error(kind: str, message: str, line=None, col=None) -> dict:
    return {
        "ok": False,
        "error": {"type": kind, "message": message, "line": line, "col": col},
    }


def _guard(fn):
    try:
        return fn()
    except ParseError as err:
        return _error("parse", err.message, err.line, err.col)
    except EvalError as err:
        return _error("eval", str(err))
    except LimitError as err:
        return _error("limit", str(err))
    except (SessionError, ValueError) as err:
        return _error("eval", str(err))


def create_app(registry: Registry | None = None, ui_dir: Path | None = None) -> FastAPI:
    registry = registry or default_registry()
    sessions = SessionStore(registry)
    app = FastAPI(title="sosw", version="0.1.0")

    @app.get("/api/languages")
    def languages():
        return [
            {
                "id": config.id,
                "name": config.language_name,
                "examples": [
                    {
                        "name": example.name,
                        "program": example.program,
                        "description": example.description,
                    }
                    for example in config.examples
                ],
                "widgets": [_widget_info(widget) for widget in config.widgets],
            }
            for config in registry.languages()
        ]

    @app.post("/api/run")
    def run(payload: dict = Body(...)):
        def go():
            result = registry.run_widget(
                payload.get("language", ""),
                payload.get("widget", ""),
                payload.get("program", ""),
                payload.get("params") or {},
            )
            body = {"kind": result.kind, "body": result.body}
            if result.code_language:
                body["language"] = result.code_language
            if result.data is not None:
                body["data"] = result.data
            if result.limit_hit:
                body["limitHit"] = True
            return {"ok": True, "result": body}

        return _guard(go)

    @app.post("/api/session")
    def create_session(payload: dict = Body(...)):
        def go():
            session = sessions.create(
                payload.get("language", ""), payload.get("program", "")
            )
            return {"sessionId": session.id}

        return _guard(go)

    def _session_op(session_id: str, payload: dict, op: str):
        widget = payload.get("widget", "")

        def go():
            session = sessions.get(session_id)
            if op == "step":
                try:
                    return session.step(
                        widget, payload.get("choice", -1), payload.get("version")
                    )
                except StaleStepError as err:
                    # Hand back the current snapshot so the client can
                    # refresh its successor list without another round trip.
                    rejection = _error("eval", str(err))
                    rejection["snapshot"] = session.peek(widget)
                    return rejection
            if op == "undo":
                return session.undo(widget)
            return session.reset(widget)

        return _guard(go)

    @app.post("/api/session/{session_id}/step")
    def step(session_id: str, payload: dict = Body(...)):
        return _session_op(session_id, payload, "step")

    @app.post("/api/session/{session_id}/undo")
    def undo(session_id: str, payload: dict = Body(...)):
        return _session_op(session_id, payload, "undo")

    @app.post("/api/session/{session_id}/reset")
    def reset(session_id: str, payload: dict = Body(...)):
        return _session_op(session_id, payload, "reset")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
