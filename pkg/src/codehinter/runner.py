"""End-to-end test orchestration.

Snapshots the student's source, invokes the configured test-runner adapter as
a subprocess with a fresh trace output path, ingests the trace, and summarizes
it into the report that routes the session flow. The orchestrator never edits
student files.
"""

from __future__ import annotations

import hashlib
import json
import os
import subprocess
import sys
import tempfile
from dataclasses import dataclass, field, replace

from codehinter.errors import (
    AdapterFailure,
    AdapterTimeout,
    CodeHinterError,
    ConfigInvalid,
    IoError,
    MalformedLocation,
    TraceInvalid,
)
from codehinter.locations import validate_relative_path
from codehinter.trace import CoverageSpectrum, TestReport, parse_trace, summarize

DEFAULT_TIMEOUT = 60.0
PROJECT_CONFIG_FILENAME = "codehinter.json"
DEBUG_FILE_ENV = "CODEHINTER_DEBUG_FILE"


def builtin_adapter_command(subject_files: list[str] | tuple[str, ...]) -> tuple[str, ...]:
    """Command template for the bundled adapter, covering the given subjects."""
    cmd = [
        sys.executable,
        "-m",
        "codehinter.builtin_adapter",
        "--project-root",
        "{PROJECT_ROOT}",
        "--trace-out",
        "{TRACE_OUT}",
    ]
    for rel in subject_files:
        cmd += ["--subject", rel]
    return tuple(cmd)


@dataclass(frozen=True)
class ExerciseSpec:
    """Problem statement plus the gated reference solution for one exercise."""

    statement: str
    reference_solution: str | None = None
    max_buggy_lines: int = 2

    def __post_init__(self):
        if self.max_buggy_lines < 1:
            raise ConfigInvalid("max_buggy_lines must be >= 1")

    def to_jsonable(self) -> dict:
        return {
            "statement": self.statement,
            "reference_solution": self.reference_solution,
            "max_buggy_lines": self.max_buggy_lines,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "ExerciseSpec":
        return cls(
            statement=obj.get("statement", ""),
            reference_solution=obj.get("reference_solution"),
            max_buggy_lines=obj.get("max_buggy_lines", 2),
        )


@dataclass(frozen=True)
class ProjectConfig:
    """Everything the one-click end-to-end test needs to run a project."""

    root: str
    subject_files: tuple[str, ...]
    adapter_command: tuple[str, ...] = ()
    timeout: float = DEFAULT_TIMEOUT
    exercise: ExerciseSpec | None = None

    def __post_init__(self):
        if not os.path.isdir(self.root):
            raise ConfigInvalid(f"project root does not exist: {self.root}")
        if not self.subject_files:
            raise ConfigInvalid("subject_files must be non-empty")
        for rel in self.subject_files:
            try:
                validate_relative_path(rel)
            except MalformedLocation as exc:
                raise ConfigInvalid(str(exc)) from None
        if self.timeout <= 0:
            raise ConfigInvalid("timeout must be positive")
        if not self.adapter_command:
            object.__setattr__(
                self, "adapter_command", builtin_adapter_command(self.subject_files)
            )

    def with_root(self, new_root: str) -> "ProjectConfig":
        """Same project relocated (shadow copies for validation runs)."""
        return replace(self, root=new_root)

    def to_jsonable(self) -> dict:
        return {
            "root": self.root,
            "subject_files": list(self.subject_files),
            "adapter_command": list(self.adapter_command),
            "timeout": self.timeout,
            "exercise": self.exercise.to_jsonable() if self.exercise else None,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "ProjectConfig":
        if not isinstance(obj, dict) or "root" not in obj:
            raise ConfigInvalid("project config must be an object with a 'root' field")
        exercise = obj.get("exercise")
        return cls(
            root=obj["root"],
            subject_files=tuple(obj.get("subject_files", ())),
            adapter_command=tuple(obj.get("adapter_command", ())),
            timeout=obj.get("timeout", DEFAULT_TIMEOUT),
            exercise=ExerciseSpec.from_jsonable(exercise) if exercise else None,
        )

    @classmethod
    def load(cls, root: str) -> "ProjectConfig":
        """Read ``codehinter.json`` from the project root; default to every
        top-level .py file as a subject when no config file exists."""
        cfg_path = os.path.join(root, PROJECT_CONFIG_FILENAME)
        if os.path.isfile(cfg_path):
            try:
                with open(cfg_path, "r", encoding="utf-8") as fh:
                    obj = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigInvalid(f"cannot read {cfg_path}: {exc}") from None
            obj.setdefault("root", root)
            obj["root"] = root
            return cls.from_jsonable(obj)
        subjects = tuple(
            sorted(
                name
                for name in os.listdir(root)
                if name.endswith(".py") and not name.startswith("test_")
            )
        )
        return cls(root=root, subject_files=subjects)


@dataclass(frozen=True)
class FileVersion:
    content: str
    sha256: str


@dataclass(frozen=True)
class SourceSnapshot:
    """Content and hash of every subject file at one instant."""

    files: dict[str, FileVersion] = field(default_factory=dict)

    def hash_of(self, rel: str) -> str:
        return self.files[rel].sha256

    def combined_hash(self) -> str:
        h = hashlib.sha256()
        for rel in sorted(self.files):
            h.update(rel.encode("utf-8"))
            h.update(b"\0")
            h.update(self.files[rel].sha256.encode("ascii"))
            h.update(b"\0")
        return h.hexdigest()

    def lines_of(self, rel: str) -> list[str]:
        return self.files[rel].content.splitlines()


def _hash_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def snapshot_source(config: ProjectConfig) -> SourceSnapshot:
    files = {}
    for rel in config.subject_files:
        path = os.path.join(config.root, rel)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                content = fh.read()
        except OSError as exc:
            raise IoError(f"cannot read subject file {rel!r}: {exc}") from None
        files[rel] = FileVersion(content, _hash_text(content))
    return SourceSnapshot(files)


def _substitute(template: tuple[str, ...], trace_out: str, root: str) -> list[str]:
    return [
        arg.replace("{TRACE_OUT}", trace_out).replace("{PROJECT_ROOT}", root)
        for arg in template
    ]


def run_end_to_end(
    config: ProjectConfig, *, extra_env: dict[str, str] | None = None
) -> tuple[TestReport, CoverageSpectrum, SourceSnapshot]:
    """Run the adapter, parse its trace, and summarize.

    Raises AdapterTimeout when the subprocess exceeds the configured limit,
    AdapterFailure on nonzero exit or a missing trace, and TraceInvalid when
    the emitted trace does not conform to the wire format.
    """
    snapshot = snapshot_source(config)
    root = os.path.abspath(config.root)
    with tempfile.TemporaryDirectory(prefix="codehinter-run-") as tmp:
        trace_out = os.path.join(tmp, "trace.json")
        cmd = _substitute(config.adapter_command, trace_out, root)
        env = dict(os.environ)
        if extra_env:
            env.update(extra_env)
        try:
            proc = subprocess.run(
                cmd,
                cwd=root,
                timeout=config.timeout,
                capture_output=True,
                text=True,
                env=env,
            )
        except subprocess.TimeoutExpired:
            raise AdapterTimeout(
                f"adapter exceeded the {config.timeout:g}s limit"
            ) from None
        except OSError as exc:
            raise AdapterFailure(f"cannot launch adapter: {exc}") from None
        if proc.returncode != 0:
            tail = (proc.stderr or proc.stdout or "").strip().splitlines()[-5:]
            raise AdapterFailure(
                f"adapter exited with code {proc.returncode}: " + " | ".join(tail)
            )
        if not os.path.isfile(trace_out):
            raise AdapterFailure("adapter exited 0 but wrote no trace file")
        with open(trace_out, "rb") as fh:
            raw = fh.read()
    try:
        trace = parse_trace(raw)
    except CodeHinterError as exc:
        raise TraceInvalid(f"adapter wrote an invalid trace: {exc}") from None
    if tuple(trace.spectrum.subject_files) != tuple(config.subject_files):
        raise TraceInvalid(
            "trace subject_files do not match the project config: "
            f"{list(trace.spectrum.subject_files)} vs {list(config.subject_files)}"
        )
    return summarize(trace.spectrum), trace.spectrum, snapshot
