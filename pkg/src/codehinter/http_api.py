"""Local HTTP service exposing sessions to the web UI and to scripts.

Thin by design: every endpoint serializes arguments, calls one session
service operation, and serializes the result. Mutating endpoints append
session events through dispatch; GET endpoints never append. The quiz
endpoint withholds correct_index and per-option validation so the browser
cannot cheat; answers round-trip through the server.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from codehinter import __version__
from codehinter.assist.patch import PatchProposal
from codehinter.assist.prints import plan_as_proposal
from codehinter.runner import snapshot_source
from codehinter.errors import (
    AdapterFailure,
    BindFailure,
    AdapterTimeout,
    CodeHinterError,
    ConfigInvalid,
    CorpusInvalid,
    IllegalTransition,
    IndexOutOfRange,
    MalformedLocation,
    NoOpReveal,
    RevealGated,
    SchemaMismatch,
    SessionNotFound,
    UnknownFormula,
    ValidationError,
)
from codehinter.runner import ProjectConfig
from codehinter.session.service import SessionService

UI_DIR_ENV = "CODEHINTER_UI_DIR"

_STATUS_BY_ERROR = {
    SessionNotFound: 404,
    RevealGated: 403,
    IllegalTransition: 409,
    IndexOutOfRange: 400,
    ConfigInvalid: 400,
    ValidationError: 400,
    SchemaMismatch: 400,
    MalformedLocation: 400,
    UnknownFormula: 400,
    CorpusInvalid: 400,
    AdapterFailure: 502,
    AdapterTimeout: 504,
}


def _status_for(exc: CodeHinterError) -> int:
    for klass, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, klass):
            return status
    return 409  # state/domain conflicts by default


class CreateSessionBody(BaseModel):
    config: dict


class AnswerBody(BaseModel):
    choice: int


class PatchBody(BaseModel):
    proposal: dict | None = None
    proposal_id: str | None = None


class ChatBody(BaseModel):
    text: str


def _public_card(card) -> dict:
    """Card as the browser may see it: no correct_index, no validation."""
    return {
        "question": card.question,
        "options": [
            {
                "index": i,
                "proposal_id": option.proposal.key(),
                "edits": [e.to_jsonable() for e in option.proposal.edits],
            }
            for i, option in enumerate(card.options)
        ],
    }


def _find_proposal(service: SessionService, session_id: str, proposal_id: str):
    """Resolve a proposal_id against everything this session was shown."""
    for event in reversed(service.events(session_id)):
        candidates = []
        if event.kind == "quiz_issued":
            candidates = [o["proposal"] for o in event.payload["card"]["options"]]
        elif event.kind == "solution_revealed":
            candidates = [event.payload["proposal"]]
        for obj in candidates:
            proposal = PatchProposal.from_jsonable(obj)
            if proposal.key() == proposal_id:
                return proposal
    raise SessionNotFound(f"no proposal {proposal_id!r} was issued in this session")


def create_app(service: SessionService, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="codehinter", version=__version__)

    @app.exception_handler(CodeHinterError)
    async def _domain_error(_req: Request, exc: CodeHinterError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "details": exc.details},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if set(body.config) == {"root"}:
            # root-only shorthand: read codehinter.json / defaults from disk
            config = ProjectConfig.load(body.config["root"])
        else:
            config = ProjectConfig.from_jsonable(body.config)
        session = service.create(config)
        return {"session_id": session.session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = service.open(session_id)
        return {
            "session_id": session_id,
            "seq": len(service.events(session_id)),
            **session.state.to_jsonable(),
        }

    @app.post("/sessions/{session_id}/e2e")
    def run_e2e(session_id: str):
        return service.run_e2e(session_id).to_jsonable()

    @app.post("/sessions/{session_id}/helpers/locate")
    def locate(session_id: str):
        return {"locations": [l.to_jsonable() for l in service.locate(session_id)]}

    @app.post("/sessions/{session_id}/helpers/quiz")
    def quiz(session_id: str):
        return _public_card(service.quiz(session_id))

    @app.post("/sessions/{session_id}/quiz/answer")
    def quiz_answer(session_id: str, body: AnswerBody):
        is_correct, explanation = service.answer(session_id, body.choice)
        return {"is_correct": is_correct, "explanation": explanation}

    @app.post("/sessions/{session_id}/helpers/prints")
    def prints(session_id: str):
        plan = service.prints(session_id)
        session = service.open(session_id)
        body = plan.to_jsonable()
        # the paste-to-apply action: POST /patch with this proposal
        body["apply_proposal"] = (
            plan_as_proposal(plan, snapshot_source(session.config)).to_jsonable()
            if plan.insertions
            else None
        )
        return body

    @app.post("/sessions/{session_id}/helpers/prints/run")
    def prints_run(session_id: str):
        return service.prints_run(session_id).to_jsonable()

    @app.post("/sessions/{session_id}/patch")
    def patch(session_id: str, body: PatchBody):
        if body.proposal is not None:
            proposal = PatchProposal.from_jsonable(body.proposal)
        elif body.proposal_id:
            proposal = _find_proposal(service, session_id, body.proposal_id)
        else:
            raise ConfigInvalid("provide either proposal or proposal_id")
        return {"diff": service.patch(session_id, proposal)}

    @app.post("/sessions/{session_id}/solution")
    def solution(session_id: str):
        try:
            proposal = service.reveal(session_id)
        except NoOpReveal as exc:
            return {"notice": exc.code, "message": str(exc), "proposal": None}
        return {
            "proposal": proposal.to_jsonable(),
            "proposal_id": proposal.key(),
            "notice": None,
        }

    @app.get("/sessions/{session_id}/pseudocode")
    def get_pseudocode(session_id: str):
        return {"text": service.pseudocode(session_id, log=False)}

    @app.get("/sessions/{session_id}/visualizer-url")
    def get_visualizer(session_id: str):
        return {"url": service.visualizer(session_id, log=False)}

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str):
        return {"events": [e.to_jsonable() for e in service.events(session_id)]}

    @app.get("/sessions/{session_id}/report/usage")
    def get_usage(session_id: str):
        return service.report_usage(session_id).to_jsonable()

    @app.post("/sessions/{session_id}/chat")
    def chat(session_id: str, body: ChatBody):
        return {"reply": service.chat(session_id, body.text)}

    ui = ui_dir or os.environ.get(UI_DIR_ENV) or _bundled_ui_dir()
    if ui and os.path.isdir(ui):
        app.mount("/ui", StaticFiles(directory=ui, html=True), name="ui")

    return app


def _bundled_ui_dir() -> str | None:
    """frontend/dist next to a source checkout, when built."""
    here = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    candidate = os.path.join(here, "frontend", "dist")
    return candidate if os.path.isdir(candidate) else None


def serve(bind_address: str, data_dir: str, ui_dir: str | None = None) -> None:
    """Run the service until interrupted; loopback by default."""
    import uvicorn

    from codehinter.assist.provider import default_provider

    host, _, port_text = bind_address.rpartition(":")
    host = host or "127.0.0.1"
    port = int(port_text)
    service = SessionService(data_dir, provider=default_provider())
    app = create_app(service, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except OSError as exc:
        raise BindFailure(f"cannot bind {bind_address}: {exc}") from None
