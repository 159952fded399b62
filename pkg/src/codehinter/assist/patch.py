"""Line-oriented patch proposals: apply, diff rendering, solution reveal.

Edits are line-granular with exact old-text matching; there is no fuzzy
application. ``new_text`` may span multiple lines (joined with newlines) or
be None to delete the line, which keeps arbitrary line diffs expressible
while the common case stays a one-line replacement.
"""

from __future__ import annotations

import difflib
import hashlib
import json
import os
from dataclasses import dataclass

from codehinter.errors import NoOpReveal, NoReferenceSolution, StaleProposal
from codehinter.runner import ExerciseSpec, FileVersion, SourceSnapshot, _hash_text

ORIGINS = ("provider", "mutation", "solution")


@dataclass(frozen=True)
class Edit:
    file: str
    line: int
    old_text: str
    new_text: str | None  # None deletes the line

    def to_jsonable(self) -> dict:
        return {
            "file": self.file,
            "line": self.line,
            "old_text": self.old_text,
            "new_text": self.new_text,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "Edit":
        return cls(obj["file"], obj["line"], obj["old_text"], obj["new_text"])


@dataclass(frozen=True)
class PatchProposal:
    edits: tuple[Edit, ...]
    rationale: str
    origin: str

    def __post_init__(self):
        if not self.edits:
            raise ValueError("a patch proposal needs at least one edit")
        if self.origin not in ORIGINS:
            raise ValueError(f"origin must be one of {ORIGINS}, got {self.origin!r}")

    def key(self) -> str:
        """Stable content id, used by the HTTP host to reference proposals."""
        payload = json.dumps(
            [e.to_jsonable() for e in self.edits], sort_keys=True, separators=(",", ":")
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]

    def to_jsonable(self) -> dict:
        return {
            "edits": [e.to_jsonable() for e in self.edits],
            "rationale": self.rationale,
            "origin": self.origin,
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "PatchProposal":
        return cls(
            edits=tuple(Edit.from_jsonable(e) for e in obj["edits"]),
            rationale=obj.get("rationale", ""),
            origin=obj.get("origin", "provider"),
        )


def _apply_edits_to_lines(lines: list[str], edits: list[Edit], file: str) -> list[str]:
    for edit in edits:
        if not 1 <= edit.line <= len(lines):
            raise StaleProposal(
                f"{file}:{edit.line} is out of range (file has {len(lines)} lines)"
            )
        if lines[edit.line - 1] != edit.old_text:
            raise StaleProposal(
                f"{file}:{edit.line} no longer matches the proposal: "
                f"expected {edit.old_text!r}, found {lines[edit.line - 1]!r}"
            )
    out = list(lines)
    for edit in sorted(edits, key=lambda e: e.line, reverse=True):
        if edit.new_text is None:
            del out[edit.line - 1]
        else:
            out[edit.line - 1 : edit.line] = edit.new_text.split("\n")
    return out


def render_unified_diff(before: SourceSnapshot, after: SourceSnapshot) -> str:
    """Unified diff over every file that changed between two snapshots."""
    chunks = []
    for rel in sorted(set(before.files) | set(after.files)):
        old = before.files[rel].content.splitlines() if rel in before.files else []
        new = after.files[rel].content.splitlines() if rel in after.files else []
        diff = list(
            difflib.unified_diff(old, new, fromfile=f"a/{rel}", tofile=f"b/{rel}", lineterm="")
        )
        if diff:
            chunks.append("\n".join(diff))
    return ("\n".join(chunks) + "\n") if chunks else ""


def apply_patch(
    snapshot: SourceSnapshot, proposal: PatchProposal
) -> tuple[SourceSnapshot, str]:
    """Apply all edits, returning the new snapshot and its unified diff.

    Validates every edit before changing anything, so a StaleProposal leaves
    no partial application. Reverting is snapshot restoration: callers keep
    the before-value and write it back.
    """
    by_file: dict[str, list[Edit]] = {}
    for edit in proposal.edits:
        if edit.file not in snapshot.files:
            raise StaleProposal(f"proposal edits unknown file {edit.file!r}")
        by_file.setdefault(edit.file, []).append(edit)
    new_files = dict(snapshot.files)
    for rel, edits in by_file.items():
        lines = snapshot.lines_of(rel)
        new_lines = _apply_edits_to_lines(lines, edits, rel)
        content = "\n".join(new_lines)
        if content and snapshot.files[rel].content.endswith("\n"):
            content += "\n"
        new_files[rel] = FileVersion(content, _hash_text(content))
    after = SourceSnapshot(new_files)
    return after, render_unified_diff(snapshot, after)


def write_snapshot(snapshot: SourceSnapshot, root: str) -> None:
    """Write snapshot contents to disk (apply and revert both use this)."""
    for rel, version in snapshot.files.items():
        path = os.path.join(root, rel)
        os.makedirs(os.path.dirname(path) or root, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(version.content)


def reveal_solution(
    exercise: ExerciseSpec | None, snapshot: SourceSnapshot, entry_file: str
) -> PatchProposal:
    """Minimal line-level repair from the snapshot to the reference solution.

    Only for explicit, gated reveals; the caller records the reveal event.
    """
    if exercise is None or exercise.reference_solution is None:
        raise NoReferenceSolution("this exercise ships no reference solution")
    current = snapshot.lines_of(entry_file)
    reference = exercise.reference_solution.splitlines()
    if current == reference:
        raise NoOpReveal("the current code already matches the reference solution")
    sm = difflib.SequenceMatcher(a=current, b=reference, autojunk=False)
    edits: list[Edit] = []
    for tag, i1, i2, j1, j2 in sm.get_opcodes():
        if tag == "equal":
            continue
        if tag in ("replace", "delete"):
            width = i2 - i1
            new_side = reference[j1:j2]
            for k in range(width):
                line_no = i1 + k + 1
                if k < len(new_side):
                    text = new_side[k]
                    if k == width - 1 and len(new_side) > width:
                        text = "\n".join([text, *new_side[width:]])
                    edits.append(Edit(entry_file, line_no, current[i1 + k], text))
                else:
                    edits.append(Edit(entry_file, line_no, current[i1 + k], None))
        else:  # insert
            inserted = "\n".join(reference[j1:j2])
            if i1 == 0:
                edits.append(Edit(entry_file, 1, current[0], inserted + "\n" + current[0]))
            else:
                anchor = current[i1 - 1]
                edits.append(Edit(entry_file, i1, anchor, anchor + "\n" + inserted))
    return PatchProposal(
        edits=tuple(edits),
        rationale="Reference solution for this exercise.",
        origin="solution",
    )
