"""The session state machine: states, legal transitions, fold, reports.

State is a pure fold over the append-only event log; replaying a log
reproduces exactly the state produced live. Every user-visible action is one
event; anything outside the transition table raises IllegalTransition and
appends nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from codehinter.assist.prints import PrintPlan
from codehinter.assist.quiz import QuizCard
from codehinter.errors import CorruptLog, IllegalTransition, RevealGated
from codehinter.trace import CoverageSpectrum, TestReport, spectrum_from_jsonable

CREATED = "CREATED"
SYNTAX_ERROR = "SYNTAX_ERROR"
TESTS_FAILED = "TESTS_FAILED"
TESTS_PASSED = "TESTS_PASSED"
SOLUTION_REVEALED = "SOLUTION_REVEALED"

STATES = (CREATED, SYNTAX_ERROR, TESTS_FAILED, TESTS_PASSED, SOLUTION_REVEALED)

EVENT_KINDS = (
    "run_e2e",
    "locate",
    "quiz_issued",
    "quiz_answered",
    "prints_suggested",
    "prints_run",
    "patch_applied",
    "visualizer_opened",
    "pseudocode",
    "solution_revealed",
    "chat",
)

# the four on-failure helpers; using any of them opens the reveal gate
HELPER_EVENTS = frozenset(
    {"locate", "quiz_issued", "quiz_answered", "prints_suggested", "prints_run",
     "visualizer_opened"}
)

TRANSITIONS: dict[str, frozenset[str]] = {
    CREATED: frozenset({"run_e2e", "pseudocode", "chat"}),
    SYNTAX_ERROR: frozenset(
        {"run_e2e", "quiz_issued", "quiz_answered", "patch_applied", "pseudocode", "chat"}
    ),
    TESTS_FAILED: frozenset(EVENT_KINDS),
    TESTS_PASSED: frozenset({"run_e2e", "chat"}),
    SOLUTION_REVEALED: frozenset({"run_e2e", "chat"}),
}


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    at: str
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.seq < 1:
            raise ValueError("seq starts at 1")

    def to_jsonable(self) -> dict:
        return {"seq": self.seq, "at": self.at, "kind": self.kind, "payload": self.payload}

    @classmethod
    def from_jsonable(cls, obj: dict) -> "SessionEvent":
        try:
            return cls(obj["seq"], obj["at"], obj["kind"], obj["payload"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptLog(f"malformed event: {exc}") from None


@dataclass(frozen=True)
class SessionState:
    state: str = CREATED
    report: TestReport | None = None
    spectrum: CoverageSpectrum | None = None
    snapshot_hash: str | None = None
    active_quiz: QuizCard | None = None
    active_plan: PrintPlan | None = None
    runs: int = 0
    helper_used: bool = False

    def to_jsonable(self) -> dict:
        return {
            "state": self.state,
            "report": self.report.to_jsonable() if self.report else None,
            "snapshot_hash": self.snapshot_hash,
            "has_active_quiz": self.active_quiz is not None,
            "has_active_plan": self.active_plan is not None,
            "runs": self.runs,
            "helper_used": self.helper_used,
        }


def check_legal(state: SessionState, kind: str) -> None:
    """Raise unless ``kind`` may be dispatched in ``state`` right now."""
    if kind not in EVENT_KINDS:
        raise IllegalTransition(state.state, kind, "unknown event kind")
    if kind not in TRANSITIONS[state.state]:
        raise IllegalTransition(state.state, kind)
    if kind == "quiz_answered" and state.active_quiz is None:
        raise IllegalTransition(state.state, kind, "no active quiz card")
    if kind == "prints_run" and state.active_plan is None:
        raise IllegalTransition(state.state, kind, "no active print plan")
    if kind == "solution_revealed" and not (state.runs >= 1 and state.helper_used):
        raise RevealGated(
            "the solution unlocks after at least one end-to-end run and one helper "
            "tool use; try the helpers first"
        )


def _route(report: TestReport) -> str:
    if report.has_syntax_error:
        return SYNTAX_ERROR
    if report.failed or report.errored:
        return TESTS_FAILED
    return TESTS_PASSED


def fold(state: SessionState, event: SessionEvent) -> SessionState:
    """Apply one event; pure, shared by live dispatch and replay."""
    check_legal(state, event.kind)
    kind, payload = event.kind, event.payload
    if kind == "run_e2e":
        report = TestReport.from_jsonable(payload["report"])
        spectrum = spectrum_from_jsonable(payload["spectrum"])
        new_hash = payload["snapshot_hash"]
        invalidate = state.snapshot_hash is not None and state.snapshot_hash != new_hash
        return replace(
            state,
            state=_route(report),
            report=report,
            spectrum=spectrum,
            snapshot_hash=new_hash,
            runs=state.runs + 1,
            active_quiz=None if invalidate else state.active_quiz,
            active_plan=None if invalidate else state.active_plan,
        )
    helper_used = state.helper_used or kind in HELPER_EVENTS
    if kind == "quiz_issued":
        return replace(
            state, active_quiz=QuizCard.from_jsonable(payload["card"]), helper_used=helper_used
        )
    if kind == "quiz_answered":
        return replace(state, active_quiz=None, helper_used=helper_used)
    if kind == "prints_suggested":
        return replace(
            state, active_plan=PrintPlan.from_jsonable(payload["plan"]), helper_used=helper_used
        )
    if kind == "patch_applied":
        return replace(
            state,
            active_quiz=None,
            active_plan=None,
            snapshot_hash=payload.get("snapshot_hash_after", state.snapshot_hash),
        )
    if kind == "solution_revealed":
        return replace(state, state=SOLUTION_REVEALED)
    # locate, prints_run, visualizer_opened, pseudocode, chat: no state change
    return replace(state, helper_used=helper_used)


def replay(events: list[SessionEvent]) -> SessionState:
    """Fold an entire log; the empty log is a fresh CREATED session."""
    state = SessionState()
    for i, event in enumerate(events, start=1):
        if event.seq != i:
            raise CorruptLog(f"event log has a gap: expected seq {i}, found {event.seq}")
        try:
            state = fold(state, event)
        except (IllegalTransition, RevealGated) as exc:
            raise CorruptLog(f"log replays an illegal event at seq {event.seq}: {exc}") from None
    return state


@dataclass(frozen=True)
class UsageReport:
    """Per-feature tallies over one session's event log."""

    counts: dict[str, int]
    distinct_features: int
    quiz_answered: int
    quiz_correct: int

    @property
    def quiz_accuracy(self) -> float | None:
        if self.quiz_answered == 0:
            return None
        return self.quiz_correct / self.quiz_answered

    def to_jsonable(self) -> dict:
        return {
            "counts": dict(self.counts),
            "distinct_features": self.distinct_features,
            "quiz_answered": self.quiz_answered,
            "quiz_correct": self.quiz_correct,
            "quiz_accuracy": self.quiz_accuracy,
        }


def usage_report(events: list[SessionEvent]) -> UsageReport:
    counts = {kind: 0 for kind in EVENT_KINDS}
    answered = correct = 0
    for event in events:
        counts[event.kind] += 1
        if event.kind == "quiz_answered":
            answered += 1
            if event.payload.get("is_correct"):
                correct += 1
    return UsageReport(
        counts=counts,
        distinct_features=sum(1 for v in counts.values() if v),
        quiz_answered=answered,
        quiz_correct=correct,
    )
