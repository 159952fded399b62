"""Session lifecycle: state machine, event log persistence, action service."""

from codehinter.session.machine import (
    CREATED,
    EVENT_KINDS,
    SOLUTION_REVEALED,
    STATES,
    SYNTAX_ERROR,
    TESTS_FAILED,
    TESTS_PASSED,
    TRANSITIONS,
    SessionEvent,
    SessionState,
    UsageReport,
    check_legal,
    fold,
    replay,
    usage_report,
)
from codehinter.session.service import Session, SessionService
from codehinter.session.store import EventStore

__all__ = [
    "CREATED",
    "EVENT_KINDS",
    "EventStore",
    "SOLUTION_REVEALED",
    "STATES",
    "SYNTAX_ERROR",
    "Session",
    "SessionEvent",
    "SessionService",
    "SessionState",
    "TESTS_FAILED",
    "TESTS_PASSED",
    "TRANSITIONS",
    "UsageReport",
    "check_legal",
    "fold",
    "replay",
    "usage_report",
]
