"""Trace wire format: how test-runner adapters report outcomes and coverage.

The on-disk form is UTF-8 JSON with schema version "codehinter-trace/1".
Canonical serialization uses sorted keys, compact separators, and sorted
covered lists; ``serialize_trace(parse_trace(x))`` is byte-identical for
canonically formatted input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

from codehinter import TRACE_SCHEMA_VERSION
from codehinter.errors import MalformedLocation, SchemaMismatch, SubjectMismatch, ValidationError
from codehinter.locations import SourceLocation, validate_relative_path

OUTCOMES = ("pass", "fail", "error")
FAILING_OUTCOMES = ("fail", "error")


@dataclass(frozen=True)
class SyntaxErrorInfo:
    file: str
    line: int
    message: str


@dataclass(frozen=True)
class TestRecord:
    """One test's verdict plus the subject lines it executed."""

    __test__ = False  # domain class, not a pytest collectable

    test_id: str
    outcome: str
    message: str | None
    covered: tuple[SourceLocation, ...]

    def __post_init__(self):
        if not self.test_id:
            raise ValueError("test_id must be non-empty")
        if self.outcome not in OUTCOMES:
            raise ValueError(f"outcome must be one of {OUTCOMES}, got {self.outcome!r}")

    @classmethod
    def create(
        cls,
        test_id: str,
        outcome: str,
        message: str | None = None,
        covered: list[SourceLocation] | None = None,
    ) -> "TestRecord":
        """Build a record, deduplicating and sorting the covered list."""
        return cls(test_id, outcome, message, tuple(sorted(set(covered or []))))

    @property
    def failing(self) -> bool:
        return self.outcome in FAILING_OUTCOMES


@dataclass(frozen=True)
class CoverageSpectrum:
    """All test records for one run plus the files coverage may point into."""

    records: tuple[TestRecord, ...]
    subject_files: tuple[str, ...]
    syntax_error: SyntaxErrorInfo | None = None

    def __post_init__(self):
        if self.syntax_error is not None and self.records:
            raise ValueError("a spectrum with a syntax error cannot carry test records")
        subjects = set(self.subject_files)
        seen_ids = set()
        for rec in self.records:
            if rec.test_id in seen_ids:
                raise ValueError(f"duplicate test_id {rec.test_id!r}")
            seen_ids.add(rec.test_id)
            for loc in rec.covered:
                if loc.file not in subjects:
                    raise ValueError(f"covered file {loc.file!r} not in subject_files")

    @property
    def total_failing(self) -> int:
        return sum(1 for r in self.records if r.failing)

    @property
    def total_passing(self) -> int:
        return sum(1 for r in self.records if not r.failing)

    def failing_ids(self) -> list[str]:
        return [r.test_id for r in self.records if r.failing]


@dataclass(frozen=True)
class TraceFile:
    spectrum: CoverageSpectrum
    created_at: str
    adapter: str
    schema_version: str = TRACE_SCHEMA_VERSION


@dataclass(frozen=True)
class FailingTest:
    test_id: str
    outcome: str
    message: str | None


@dataclass(frozen=True)
class TestReport:
    """What the UI shows after an end-to-end test run."""

    __test__ = False  # domain class, not a pytest collectable

    passed: int
    failed: int
    errored: int
    failing: tuple[FailingTest, ...]
    syntax_error: SyntaxErrorInfo | None = None

    @property
    def has_syntax_error(self) -> bool:
        return self.syntax_error is not None

    @property
    def all_passed(self) -> bool:
        return not self.has_syntax_error and self.failed == 0 and self.errored == 0

    def to_jsonable(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "errored": self.errored,
            "failing": [
                {"test_id": f.test_id, "outcome": f.outcome, "message": f.message}
                for f in self.failing
            ],
            "syntax_error": None
            if self.syntax_error is None
            else {
                "file": self.syntax_error.file,
                "line": self.syntax_error.line,
                "message": self.syntax_error.message,
            },
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "TestReport":
        syntax = obj.get("syntax_error")
        return cls(
            passed=obj["passed"],
            failed=obj["failed"],
            errored=obj["errored"],
            failing=tuple(
                FailingTest(f["test_id"], f["outcome"], f["message"]) for f in obj["failing"]
            ),
            syntax_error=SyntaxErrorInfo(**syntax) if syntax else None,
        )


def utc_now_rfc3339() -> str:
    return datetime.now(timezone.utc).isoformat()


def _check_rfc3339(value, path: str) -> str:
    if not isinstance(value, str):
        raise ValidationError("timestamp must be a string", path)
    text = value[:-1] + "+00:00" if value.endswith(("Z", "z")) else value
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise ValidationError(f"not an RFC-3339 timestamp: {value!r}", path) from None
    if parsed.tzinfo is None:
        raise ValidationError("timestamp must carry a UTC offset", path)
    return value


def _require_keys(obj: dict, keys: tuple[str, ...], path: str) -> None:
    unknown = set(obj) - set(keys)
    if unknown:
        first = sorted(unknown)[0]
        raise ValidationError(f"unknown field {first!r}", f"{path}.{first}" if path else first)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(
            f"missing field {missing[0]!r}", f"{path}.{missing[0]}" if path else missing[0]
        )


def _check_str(value, path: str, allow_empty: bool = True) -> str:
    if not isinstance(value, str) or (not allow_empty and not value):
        raise ValidationError("expected a non-empty string" if not allow_empty else "expected a string", path)
    return value


def _parse_location(obj, subjects: set[str], path: str) -> SourceLocation:
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", path)
    _require_keys(obj, ("file", "line"), path)
    file = _check_str(obj["file"], f"{path}.file", allow_empty=False)
    line = obj["line"]
    if not isinstance(line, int) or isinstance(line, bool) or line < 1:
        raise ValidationError("line must be an integer >= 1", f"{path}.line")
    if file not in subjects:
        raise ValidationError(f"covered file {file!r} not in subject_files", f"{path}.file")
    try:
        return SourceLocation(file, line)
    except MalformedLocation as exc:
        raise ValidationError(str(exc), f"{path}.file") from None


def _parse_record(obj, subjects: set[str], path: str) -> TestRecord:
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", path)
    _require_keys(obj, ("test_id", "outcome", "message", "covered"), path)
    test_id = _check_str(obj["test_id"], f"{path}.test_id", allow_empty=False)
    outcome = _check_str(obj["outcome"], f"{path}.outcome")
    if outcome not in OUTCOMES:
        raise ValidationError(f"outcome must be one of {OUTCOMES}", f"{path}.outcome")
    message = obj["message"]
    if message is not None and not isinstance(message, str):
        raise ValidationError("message must be a string or null", f"{path}.message")
    if not isinstance(obj["covered"], list):
        raise ValidationError("covered must be a list", f"{path}.covered")
    covered = []
    for i, loc_obj in enumerate(obj["covered"]):
        covered.append(_parse_location(loc_obj, subjects, f"{path}.covered[{i}]"))
    keys = [(loc.file, loc.line) for loc in covered]
    if keys != sorted(set(keys)):
        raise ValidationError("covered list must be deduplicated and sorted", f"{path}.covered")
    return TestRecord(test_id, outcome, message, tuple(covered))


def parse_trace(data: bytes | str) -> TraceFile:
    """Parse and validate a trace file; rejects unknown fields.

    Raises SchemaMismatch on a wrong schema_version and ValidationError
    (carrying the JSON path of the offending field) on any other violation.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise ValidationError("input is not UTF-8", "$") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc.msg}", "$") from None
    if not isinstance(obj, dict):
        raise ValidationError("top level must be an object", "$")

    version = obj.get("schema_version")
    if version != TRACE_SCHEMA_VERSION:
        raise SchemaMismatch(
            f"expected schema_version {TRACE_SCHEMA_VERSION!r}, got {version!r}"
        )
    _require_keys(obj, ("schema_version", "created_at", "adapter", "spectrum"), "")
    created_at = _check_rfc3339(obj["created_at"], "created_at")
    adapter = _check_str(obj["adapter"], "adapter")

    spec_obj = obj["spectrum"]
    if not isinstance(spec_obj, dict):
        raise ValidationError("expected an object", "spectrum")
    _require_keys(spec_obj, ("subject_files", "syntax_error", "records"), "spectrum")

    if not isinstance(spec_obj["subject_files"], list):
        raise ValidationError("subject_files must be a list", "spectrum.subject_files")
    subject_files = []
    for i, name in enumerate(spec_obj["subject_files"]):
        path = f"spectrum.subject_files[{i}]"
        _check_str(name, path, allow_empty=False)
        try:
            validate_relative_path(name)
        except MalformedLocation as exc:
            raise ValidationError(str(exc), path) from None
        if name in subject_files:
            raise ValidationError(f"duplicate subject file {name!r}", path)
        subject_files.append(name)
    subjects = set(subject_files)

    syntax_obj = spec_obj["syntax_error"]
    syntax_error = None
    if syntax_obj is not None:
        if not isinstance(syntax_obj, dict):
            raise ValidationError("syntax_error must be an object or null", "spectrum.syntax_error")
        _require_keys(syntax_obj, ("file", "line", "message"), "spectrum.syntax_error")
        sfile = _check_str(syntax_obj["file"], "spectrum.syntax_error.file", allow_empty=False)
        try:
            validate_relative_path(sfile)
        except MalformedLocation as exc:
            raise ValidationError(str(exc), "spectrum.syntax_error.file") from None
        sline = syntax_obj["line"]
        if not isinstance(sline, int) or isinstance(sline, bool) or sline < 1:
            raise ValidationError("line must be an integer >= 1", "spectrum.syntax_error.line")
        smsg = _check_str(syntax_obj["message"], "spectrum.syntax_error.message")
        syntax_error = SyntaxErrorInfo(sfile, sline, smsg)

    if not isinstance(spec_obj["records"], list):
        raise ValidationError("records must be a list", "spectrum.records")
    if syntax_error is not None and spec_obj["records"]:
        raise ValidationError(
            "records must be empty when syntax_error is present", "spectrum.records"
        )
    records = []
    seen_ids = set()
    for i, rec_obj in enumerate(spec_obj["records"]):
        rec = _parse_record(rec_obj, subjects, f"spectrum.records[{i}]")
        if rec.test_id in seen_ids:
            raise ValidationError(
                f"duplicate test_id {rec.test_id!r}", f"spectrum.records[{i}].test_id"
            )
        seen_ids.add(rec.test_id)
        records.append(rec)

    spectrum = CoverageSpectrum(tuple(records), tuple(subject_files), syntax_error)
    return TraceFile(spectrum=spectrum, created_at=created_at, adapter=adapter)


def trace_to_jsonable(trace: TraceFile) -> dict:
    spectrum = trace.spectrum
    return {
        "schema_version": trace.schema_version,
        "created_at": trace.created_at,
        "adapter": trace.adapter,
        "spectrum": {
            "subject_files": list(spectrum.subject_files),
            "syntax_error": None
            if spectrum.syntax_error is None
            else {
                "file": spectrum.syntax_error.file,
                "line": spectrum.syntax_error.line,
                "message": spectrum.syntax_error.message,
            },
            "records": [
                {
                    "test_id": rec.test_id,
                    "outcome": rec.outcome,
                    "message": rec.message,
                    "covered": [{"file": loc.file, "line": loc.line} for loc in rec.covered],
                }
                for rec in spectrum.records
            ],
        },
    }


def spectrum_to_jsonable(spectrum: CoverageSpectrum) -> dict:
    return trace_to_jsonable(
        TraceFile(spectrum=spectrum, created_at="1970-01-01T00:00:00+00:00", adapter="")
    )["spectrum"]


def spectrum_from_jsonable(obj: dict) -> CoverageSpectrum:
    syntax = obj.get("syntax_error")
    return CoverageSpectrum(
        records=tuple(
            TestRecord(
                rec["test_id"],
                rec["outcome"],
                rec["message"],
                tuple(SourceLocation(c["file"], c["line"]) for c in rec["covered"]),
            )
            for rec in obj["records"]
        ),
        subject_files=tuple(obj["subject_files"]),
        syntax_error=SyntaxErrorInfo(**syntax) if syntax else None,
    )


def serialize_trace(trace: TraceFile) -> bytes:
    """Canonical bytes: sorted keys, compact separators, trailing newline."""
    text = json.dumps(
        trace_to_jsonable(trace), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    )
    return (text + "\n").encode("utf-8")


def merge_traces(a: TraceFile, b: TraceFile) -> TraceFile:
    """Overlay run ``b`` onto run ``a``; records from b replace same-id records.

    Supports re-running only the failed subset: the merged trace reflects b's
    verdict wherever b ran a test and keeps a's verdict elsewhere. Metadata
    (created_at, adapter) is taken from b. A syntax error in b supersedes
    everything, since nothing from a ran against the now-broken code.
    """
    if a.spectrum.subject_files != b.spectrum.subject_files:
        raise SubjectMismatch(
            f"subject files differ: {list(a.spectrum.subject_files)} vs "
            f"{list(b.spectrum.subject_files)}"
        )
    if b.spectrum.syntax_error is not None or a.spectrum.syntax_error is not None:
        merged = b.spectrum
    else:
        by_id = {rec.test_id: rec for rec in b.spectrum.records}
        records = [by_id.pop(rec.test_id, rec) for rec in a.spectrum.records]
        records.extend(rec for rec in b.spectrum.records if rec.test_id in by_id)
        merged = CoverageSpectrum(tuple(records), a.spectrum.subject_files, None)
    return TraceFile(spectrum=merged, created_at=b.created_at, adapter=b.adapter)


def summarize(spectrum: CoverageSpectrum) -> TestReport:
    """Counts plus failing-test detail; the payload shown after a run."""
    if spectrum.syntax_error is not None:
        return TestReport(0, 0, 0, (), spectrum.syntax_error)
    passed = sum(1 for r in spectrum.records if r.outcome == "pass")
    failed = sum(1 for r in spectrum.records if r.outcome == "fail")
    errored = sum(1 for r in spectrum.records if r.outcome == "error")
    failing = tuple(
        FailingTest(r.test_id, r.outcome, r.message) for r in spectrum.records if r.failing
    )
    return TestReport(passed, failed, errored, failing, None)
