"""Print-statement instrumentation plans.

A plan proposes up to three diagnostic prints next to suspicious lines. The
student's files are never modified: runs happen on a shadow copy, and the
diagnostics write to stderr (the debug stream) so tests that compare standard
output keep their verdicts. Each inserted line carries a ``[ch-print:N]``
marker so output can be traced back to its insertion.
"""

from __future__ import annotations

import json
import os
import re
import shutil
import tempfile
from dataclasses import dataclass

from codehinter.assist.provider import ProviderContext, SuggestionProvider, build_context
from codehinter.errors import NoFailingTests, ProviderUnavailable, SnapshotDrift
from codehinter.runner import (
    DEBUG_FILE_ENV,
    ProjectConfig,
    SourceSnapshot,
    run_end_to_end,
    snapshot_source,
)
from codehinter.trace import CoverageSpectrum, TestReport

MAX_INSERTIONS = 3
MARKER_RE = re.compile(r"^\[ch-print:(\d+)\]")
SHADOW_IGNORE = shutil.ignore_patterns("__pycache__", "*.pyc", ".git", ".codehinter")


@dataclass(frozen=True)
class PrintInsertion:
    marker: int
    file: str
    line_after: int
    variable: str
    reason: str

    def to_jsonable(self) -> dict:
        return {
            "marker": self.marker,
            "file": self.file,
            "line_after": self.line_after,
            "variable": self.variable,
            "reason": self.reason,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "PrintInsertion":
        return cls(obj["marker"], obj["file"], obj["line_after"], obj["variable"], obj["reason"])


@dataclass(frozen=True)
class RenderedFile:
    text: str
    inserted_lines: tuple[int, ...]  # 1-based line numbers in the instrumented text

    def to_jsonable(self) -> dict:
        return {"text": self.text, "inserted_lines": list(self.inserted_lines)}

    @classmethod
    def from_jsonable(cls, obj: dict) -> "RenderedFile":
        return cls(obj["text"], tuple(obj["inserted_lines"]))


@dataclass(frozen=True)
class PrintPlan:
    insertions: tuple[PrintInsertion, ...]
    rendered: dict[str, RenderedFile]
    base_hashes: dict[str, str]

    def to_jsonable(self) -> dict:
        return {
            "insertions": [i.to_jsonable() for i in self.insertions],
            "rendered": {f: r.to_jsonable() for f, r in self.rendered.items()},
            "base_hashes": dict(self.base_hashes),
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "PrintPlan":
        return cls(
            insertions=tuple(PrintInsertion.from_jsonable(i) for i in obj["insertions"]),
            rendered={
                f: RenderedFile.from_jsonable(r) for f, r in obj["rendered"].items()
            },
            base_hashes=dict(obj["base_hashes"]),
        )


@dataclass(frozen=True)
class DebugLine:
    test_id: str
    marker: int
    text: str


@dataclass(frozen=True)
class DebugOutput:
    lines: tuple[DebugLine, ...]
    report: TestReport
    outcomes: dict[str, str]

    def lines_for(self, test_id: str) -> list[DebugLine]:
        return [l for l in self.lines if l.test_id == test_id]

    def to_jsonable(self) -> dict:
        return {
            "lines": [
                {"test_id": l.test_id, "marker": l.marker, "text": l.text}
                for l in self.lines
            ],
            "report": self.report.to_jsonable(),
            "outcomes": dict(self.outcomes),
        }


def _diagnostic_line(indent: str, marker: int, variable: str) -> str:
    return (
        f'{indent}print("[ch-print:{marker}] {variable} =", repr({variable}), '
        'file=__import__("sys").stderr)'
    )


def _indent_for(lines: list[str], anchor: int) -> str:
    anchor_text = lines[anchor - 1]
    indent = anchor_text[: len(anchor_text) - len(anchor_text.lstrip())]
    if anchor_text.rstrip().endswith(":"):
        for follow in lines[anchor:]:
            if follow.strip():
                return follow[: len(follow) - len(follow.lstrip())]
        return indent + "    "
    return indent


def render_plan(
    snapshot: SourceSnapshot, suggestions: list[tuple[int, str, int, str, str]]
) -> PrintPlan:
    """suggestions: (marker, file, line_after, variable, reason), already capped."""
    insertions = tuple(PrintInsertion(*s) for s in suggestions)
    rendered: dict[str, RenderedFile] = {}
    by_file: dict[str, list[PrintInsertion]] = {}
    for ins in insertions:
        by_file.setdefault(ins.file, []).append(ins)
    for rel, file_insertions in by_file.items():
        lines = snapshot.lines_of(rel)
        # bottom-up so earlier anchors keep their numbering while we splice
        out = list(lines)
        for ins in sorted(file_insertions, key=lambda i: i.line_after, reverse=True):
            anchor = min(max(ins.line_after, 1), len(lines))
            out.insert(anchor, _diagnostic_line(_indent_for(lines, anchor), ins.marker, ins.variable))
        clamped = sorted(min(max(i.line_after, 1), len(lines)) for i in file_insertions)
        inserted_at = [a + 1 + k for k, a in enumerate(clamped)]
        text = "\n".join(out)
        if snapshot.files[rel].content.endswith("\n"):
            text += "\n"
        rendered[rel] = RenderedFile(text, tuple(inserted_at))
    hashes = {rel: v.sha256 for rel, v in snapshot.files.items()}
    return PrintPlan(insertions=insertions, rendered=rendered, base_hashes=hashes)


def suggest_prints(
    spectrum: CoverageSpectrum,
    snapshot: SourceSnapshot,
    provider: SuggestionProvider,
    config: ProjectConfig | None = None,
    context: ProviderContext | None = None,
) -> PrintPlan:
    """Up to three diagnostic prints targeting variables assigned near the
    top-ranked lines. Falls back to the deterministic rule when the provider
    is unavailable."""
    if spectrum.total_failing == 0:
        raise NoFailingTests("print suggestions need at least one failing test")
    exercise = config.exercise if config else None
    ctx = context or build_context(spectrum, snapshot, exercise)
    try:
        suggestions = provider.propose_prints(ctx)
    except ProviderUnavailable:
        from codehinter.assist.provider import StubProvider

        suggestions = StubProvider().propose_prints(ctx)
    capped = []
    seen = set()
    for s in suggestions:
        key = (s.file, s.line, s.variable)
        if key in seen or s.file not in snapshot.files:
            continue
        seen.add(key)
        capped.append((len(capped) + 1, s.file, s.line, s.variable, s.reason))
        if len(capped) == MAX_INSERTIONS:
            break
    return render_plan(snapshot, capped)


def strip_instrumentation(rendered: RenderedFile) -> str:
    """Remove the inserted lines; must reproduce the original text."""
    lines = rendered.text.splitlines()
    keep = [l for n, l in enumerate(lines, start=1) if n not in set(rendered.inserted_lines)]
    text = "\n".join(keep)
    if rendered.text.endswith("\n") and text:
        text += "\n"
    return text


def plan_as_proposal(plan: PrintPlan, snapshot: SourceSnapshot):
    """The plan as an explicit patch proposal (the paste-to-apply action).

    Each insertion becomes a replacement of its anchor line with the anchor
    plus the diagnostic line, so applying and then restoring the
    before-snapshot is exact like any other patch.
    """
    from codehinter.assist.patch import Edit, PatchProposal

    by_anchor: dict[tuple[str, int], list[PrintInsertion]] = {}
    for ins in plan.insertions:
        lines = snapshot.lines_of(ins.file)
        anchor = min(max(ins.line_after, 1), len(lines))
        by_anchor.setdefault((ins.file, anchor), []).append(ins)
    edits = []
    for (rel, anchor), group in sorted(by_anchor.items()):
        lines = snapshot.lines_of(rel)
        anchor_text = lines[anchor - 1]
        diagnostics = [
            _diagnostic_line(_indent_for(lines, anchor), ins.marker, ins.variable)
            for ins in sorted(group, key=lambda i: i.marker)
        ]
        edits.append(Edit(rel, anchor, anchor_text, "\n".join([anchor_text, *diagnostics])))
    return PatchProposal(
        edits=tuple(edits),
        rationale="Insert the suggested diagnostic print statements.",
        origin="provider",
    )


def run_instrumented(plan: PrintPlan, config: ProjectConfig) -> DebugOutput:
    """Run the suite on a shadow copy carrying the plan's instrumentation.

    Diagnostic stderr lines are grouped per test and tagged with the
    insertion that produced them. Raises SnapshotDrift when the student
    edited any subject file after the plan was made.
    """
    current = snapshot_source(config)
    for rel, expected in plan.base_hashes.items():
        if rel not in current.files or current.files[rel].sha256 != expected:
            raise SnapshotDrift(
                f"{rel} changed since this print plan was created; re-run the tests "
                "and request a fresh plan"
            )
    with tempfile.TemporaryDirectory(prefix="codehinter-prints-") as tmp:
        shadow = os.path.join(tmp, "shadow")
        shutil.copytree(config.root, shadow, ignore=SHADOW_IGNORE)
        for rel, rendered in plan.rendered.items():
            path = os.path.join(shadow, rel)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(rendered.text)
        debug_path = os.path.join(tmp, "debug.jsonl")
        report, spectrum, _ = run_end_to_end(
            config.with_root(shadow), extra_env={DEBUG_FILE_ENV: debug_path}
        )
        lines: list[DebugLine] = []
        if os.path.isfile(debug_path):
            with open(debug_path, "r", encoding="utf-8") as fh:
                for raw in fh:
                    try:
                        entry = json.loads(raw)
                    except json.JSONDecodeError:
                        continue
                    match = MARKER_RE.match(entry.get("line", ""))
                    if match:
                        lines.append(
                            DebugLine(entry["test_id"], int(match.group(1)), entry["line"])
                        )
    outcomes = {rec.test_id: rec.outcome for rec in spectrum.records}
    return DebugOutput(lines=tuple(lines), report=report, outcomes=outcomes)
