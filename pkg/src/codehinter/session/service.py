"""Session service: the actions hosts call, each one core operation + one event.

All state changes go through dispatch; reads never append. One lock per
session serializes mutations, so concurrent requests see a total order and no
event is ever lost.
"""

from __future__ import annotations

from dataclasses import dataclass

from codehinter.assist.helpers import locate_and_explain, pseudocode, visualizer_url
from codehinter.assist.patch import PatchProposal, apply_patch, reveal_solution, write_snapshot
from codehinter.assist.prints import DebugOutput, PrintPlan, run_instrumented, suggest_prints
from codehinter.assist.provider import StubProvider, SuggestionProvider
from codehinter.assist.quiz import QuizCard, answer_quiz, make_quiz
from codehinter.errors import IllegalTransition, ProviderUnavailable, SessionNotFound
from codehinter.runner import ProjectConfig, run_end_to_end, snapshot_source
from codehinter.session.machine import (
    SessionEvent,
    SessionState,
    UsageReport,
    check_legal,
    fold,
    replay,
    usage_report,
)
from codehinter.session.store import EventStore
from codehinter.trace import TestReport, spectrum_to_jsonable


@dataclass
class Session:
    session_id: str
    config: ProjectConfig
    state: SessionState


class SessionService:
    def __init__(self, data_dir: str, provider: SuggestionProvider | None = None):
        self.store = EventStore(data_dir)
        self.provider = provider if provider is not None else StubProvider()
        self._cache: dict[str, Session] = {}

    # lifecycle

    def create(self, config: ProjectConfig) -> Session:
        session_id = self.store.create_session(config)
        session = Session(session_id, config, SessionState())
        self._cache[session_id] = session
        return session

    def open(self, session_id: str) -> Session:
        if session_id not in self._cache:
            config = self.store.load_config(session_id)
            state = replay(self.store.events(session_id))
            self._cache[session_id] = Session(session_id, config, state)
        return self._cache[session_id]

    def events(self, session_id: str) -> list[SessionEvent]:
        if not self.store.exists(session_id):
            raise SessionNotFound(f"no session {session_id!r}")
        return self.store.events(session_id)

    def report_usage(self, session_id: str) -> UsageReport:
        return usage_report(self.events(session_id))

    def _dispatch(self, session: Session, kind: str, payload: dict) -> SessionState:
        """Fold first (validating legality), then append; replay equality is
        by construction because both paths fold the identical payload. The
        fold only reads kind and payload, so seq/at placeholders are fine."""
        new_state = fold(session.state, SessionEvent(seq=1, at="", kind=kind, payload=payload))
        self.store.append(session.session_id, kind, payload)
        session.state = new_state
        return new_state

    # actions (each appends exactly one event)

    def run_e2e(self, session_id: str) -> TestReport:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "run_e2e")
            pre_hash = snapshot_source(session.config).combined_hash()
            external_edit = (
                session.state.snapshot_hash is not None
                and session.state.snapshot_hash != pre_hash
            )
            report, spectrum, snapshot = run_end_to_end(session.config)
            payload = {
                "report": report.to_jsonable(),
                "spectrum": spectrum_to_jsonable(spectrum),
                "snapshot_hash": snapshot.combined_hash(),
                "external_edit": external_edit,
            }
            self._dispatch(session, "run_e2e", payload)
            return report

    def _require_spectrum(self, session: Session):
        if session.state.spectrum is None:
            raise IllegalTransition(session.state.state, "helper", "run the tests first")
        return session.state.spectrum

    def locate(self, session_id: str):
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "locate")
            spectrum = self._require_spectrum(session)
            located = locate_and_explain(
                spectrum, snapshot_source(session.config), self.provider,
                session.config.exercise,
            )
            self._dispatch(
                session, "locate", {"locations": [l.to_jsonable() for l in located]}
            )
            return located

    def quiz(self, session_id: str) -> QuizCard:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "quiz_issued")
            spectrum = self._require_spectrum(session)
            card = make_quiz(
                spectrum, snapshot_source(session.config), self.provider, session.config
            )
            self._dispatch(session, "quiz_issued", {"card": card.to_jsonable()})
            return card

    def answer(self, session_id: str, choice: int) -> tuple[bool, str]:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "quiz_answered")
            is_correct, explanation = answer_quiz(session.state.active_quiz, choice)
            self._dispatch(
                session,
                "quiz_answered",
                {"choice": choice, "is_correct": is_correct, "explanation": explanation},
            )
            return is_correct, explanation

    def prints(self, session_id: str) -> PrintPlan:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "prints_suggested")
            spectrum = self._require_spectrum(session)
            plan = suggest_prints(
                spectrum, snapshot_source(session.config), self.provider, session.config
            )
            self._dispatch(session, "prints_suggested", {"plan": plan.to_jsonable()})
            return plan

    def prints_run(self, session_id: str) -> DebugOutput:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "prints_run")
            output = run_instrumented(session.state.active_plan, session.config)
            self._dispatch(session, "prints_run", {"output": output.to_jsonable()})
            return output

    def patch(self, session_id: str, proposal: PatchProposal) -> str:
        """The one mutating action: apply an explicit proposal to the
        student's files and return the diff."""
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "patch_applied")
            snapshot = snapshot_source(session.config)
            patched, diff = apply_patch(snapshot, proposal)
            write_snapshot(patched, session.config.root)
            self._dispatch(
                session,
                "patch_applied",
                {
                    "proposal": proposal.to_jsonable(),
                    "diff": diff,
                    "snapshot_hash_after": patched.combined_hash(),
                },
            )
            return diff

    def visualizer(self, session_id: str, log: bool = True) -> str:
        session = self.open(session_id)
        with self.store.lock(session_id):
            if log:
                check_legal(session.state, "visualizer_opened")
            url = visualizer_url(
                snapshot_source(session.config), session.config.subject_files[0]
            )
            if log:
                self._dispatch(session, "visualizer_opened", {"url": url})
            return url

    def pseudocode(self, session_id: str, log: bool = True) -> str:
        session = self.open(session_id)
        with self.store.lock(session_id):
            if log:
                check_legal(session.state, "pseudocode")
            text = pseudocode(session.config.exercise, self.provider)
            if log:
                self._dispatch(session, "pseudocode", {"text": text})
            return text

    def reveal(self, session_id: str) -> PatchProposal:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "solution_revealed")
            proposal = reveal_solution(
                session.config.exercise,
                snapshot_source(session.config),
                session.config.subject_files[0],
            )
            self._dispatch(
                session, "solution_revealed", {"proposal": proposal.to_jsonable()}
            )
            return proposal

    def chat(self, session_id: str, text: str) -> str:
        session = self.open(session_id)
        with self.store.lock(session_id):
            check_legal(session.state, "chat")
            reply = self._chat_reply(text)
            self._dispatch(session, "chat", {"text": text, "reply": reply})
            return reply

    def _chat_reply(self, text: str) -> str:
        chat = getattr(self.provider, "chat", None)
        if callable(chat):
            try:
                return chat(text)
            except ProviderUnavailable:
                pass
        return StubProvider().chat(text)
