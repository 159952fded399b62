"""Domain error hierarchy.

Every error carries a stable machine ``code`` so the HTTP and CLI hosts can
map failures onto wire responses without string matching. Codes mirror the
error cases of the module that raises them.
"""

from __future__ import annotations


class CodeHinterError(Exception):
    """Base class for all domain errors."""

    code = "internal_error"

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


# spectrum / ranking

class EmptySpectrum(CodeHinterError):
    code = "empty_spectrum"


class MalformedLocation(CodeHinterError):
    code = "malformed_location"


class UnknownFormula(CodeHinterError):
    code = "unknown_formula"


class NoFailingTests(CodeHinterError):
    code = "no_failing_tests"


# trace wire format

class SchemaMismatch(CodeHinterError):
    code = "schema_mismatch"


class ValidationError(CodeHinterError):
    """Invariant violation in a trace payload; ``json_path`` names the field."""

    code = "trace_validation"

    def __init__(self, message: str, json_path: str):
        super().__init__(message, {"json_path": json_path})
        self.json_path = json_path


class SubjectMismatch(CodeHinterError):
    code = "subject_mismatch"


# runner / adapter

class ConfigInvalid(CodeHinterError):
    code = "config_invalid"


class AdapterFailure(CodeHinterError):
    code = "adapter_failure"


class AdapterTimeout(CodeHinterError):
    code = "adapter_timeout"


class TraceInvalid(CodeHinterError):
    code = "trace_invalid"


class IoError(CodeHinterError):
    code = "io_error"


# assist engine

class ProviderUnavailable(CodeHinterError):
    code = "provider_unavailable"


class NoValidatedFix(CodeHinterError):
    code = "no_validated_fix"


class ValidationBudgetExceeded(CodeHinterError):
    code = "validation_budget_exceeded"


class IndexOutOfRange(CodeHinterError):
    code = "index_out_of_range"


class StaleProposal(CodeHinterError):
    code = "stale_proposal"


class SnapshotDrift(CodeHinterError):
    code = "snapshot_drift"


class SourceTooLarge(CodeHinterError):
    code = "source_too_large"


class NoReferenceSolution(CodeHinterError):
    code = "no_reference_solution"


class NoOpReveal(CodeHinterError):
    """Snapshot already equals the reference; hosts render this as a notice."""

    code = "no_op_reveal"


# interface host

class BindFailure(CodeHinterError):
    code = "bind_failure"


# session engine

class IllegalTransition(CodeHinterError):
    code = "illegal_transition"

    def __init__(self, state: str, event: str, reason: str = ""):
        msg = f"event {event!r} is not legal in state {state!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg, {"state": state, "event": event})
        self.state = state
        self.event = event


class RevealGated(CodeHinterError):
    """Solution reveal requested before the nudge gate is satisfied."""

    code = "reveal_gated"


class CorruptLog(CodeHinterError):
    code = "corrupt_log"


class SessionNotFound(CodeHinterError):
    code = "session_not_found"


# corpus

class CorpusInvalid(CodeHinterError):
    code = "corpus_invalid"
