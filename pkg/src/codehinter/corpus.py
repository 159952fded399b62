"""Seeded-bug exercise corpus: loading, validation, project materialization.

Directory layout per exercise:

    exercises/<id>/
        statement.md
        solution/            reference files (pass every test)
        buggy/<variant>/     files differing from the reference in <= 2 lines
        tests/               plain-assert test files for the bundled adapter
        meta.json            {"id", "entry_file", "known_lines": {variant: [...]}}

``load_corpus`` verifies every invariant by actually running the adapter:
the reference must be green, every buggy variant red, the line diff within
the budget and matching meta.json, and each known buggy line executed by at
least one failing test (so fault localization always has signal).
"""

from __future__ import annotations

import difflib
import json
import os
import tempfile
from dataclasses import dataclass

from codehinter.errors import CorpusInvalid
from codehinter.locations import SourceLocation
from codehinter.runner import (
    ExerciseSpec,
    ProjectConfig,
    builtin_adapter_command,
    run_end_to_end,
)

MAX_BUGGY_LINES = 2


def default_corpus_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "exercises")


@dataclass(frozen=True)
class Exercise:
    id: str
    statement: str
    entry_file: str
    solution: dict[str, str]
    variants: dict[str, dict[str, str]]
    tests: dict[str, str]
    known_lines: dict[str, tuple[SourceLocation, ...]]

    @property
    def subject_files(self) -> tuple[str, ...]:
        return tuple(sorted(self.solution))

    def materialize(self, target_dir: str, variant: str | None = None) -> ProjectConfig:
        """Write a runnable project (solution or buggy variant) into
        ``target_dir`` and return its config."""
        files = self.solution if variant is None else self.variants[variant]
        os.makedirs(target_dir, exist_ok=True)
        for rel, content in files.items():
            path = os.path.join(target_dir, rel)
            os.makedirs(os.path.dirname(path) or target_dir, exist_ok=True)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(content)
        tests_dir = os.path.join(target_dir, "tests")
        os.makedirs(tests_dir, exist_ok=True)
        for rel, content in self.tests.items():
            with open(os.path.join(tests_dir, rel), "w", encoding="utf-8") as fh:
                fh.write(content)
        exercise = ExerciseSpec(
            statement=self.statement,
            reference_solution=self.solution[self.entry_file],
            max_buggy_lines=MAX_BUGGY_LINES,
        )
        # tight per-test timeout: candidate fixes that loop forever should
        # surface as quick 'error' records during quiz validation
        adapter = builtin_adapter_command(self.subject_files) + ("--test-timeout", "1")
        config = ProjectConfig(
            root=target_dir,
            subject_files=self.subject_files,
            adapter_command=adapter,
            exercise=exercise,
        )
        # make the project self-describing so the CLI and service can load it
        manifest = config.to_jsonable()
        del manifest["root"]
        with open(os.path.join(target_dir, "codehinter.json"), "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
        return config


def diff_line_numbers(reference: str, variant: str) -> list[int]:
    """Variant-side line numbers that differ from the reference."""
    sm = difflib.SequenceMatcher(
        a=reference.splitlines(), b=variant.splitlines(), autojunk=False
    )
    lines: set[int] = set()
    for tag, _i1, _i2, j1, j2 in sm.get_opcodes():
        if tag == "equal":
            continue
        if j2 > j1:
            lines.update(range(j1 + 1, j2 + 1))
        else:
            lines.add(max(j1, 1))
    return sorted(lines)


def _read_files(base: str) -> dict[str, str]:
    files = {}
    for dirpath, _dirs, names in os.walk(base):
        for name in sorted(names):
            path = os.path.join(dirpath, name)
            rel = os.path.relpath(path, base).replace(os.sep, "/")
            with open(path, "r", encoding="utf-8") as fh:
                files[rel] = fh.read()
    return files


def _load_exercise(base: str, ex_id: str) -> Exercise:
    meta_path = os.path.join(base, "meta.json")
    for required in ("statement.md", "solution", "tests", "meta.json"):
        if not os.path.exists(os.path.join(base, required)):
            raise CorpusInvalid(f"{ex_id}: missing {required}")
    with open(meta_path, "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    with open(os.path.join(base, "statement.md"), "r", encoding="utf-8") as fh:
        statement = fh.read()
    solution = _read_files(os.path.join(base, "solution"))
    tests = _read_files(os.path.join(base, "tests"))
    variants = {}
    buggy_base = os.path.join(base, "buggy")
    if os.path.isdir(buggy_base):
        for vname in sorted(os.listdir(buggy_base)):
            variants[vname] = _read_files(os.path.join(buggy_base, vname))
    if not variants:
        raise CorpusInvalid(f"{ex_id}: no buggy variants")
    entry_file = meta.get("entry_file", "main.py")
    if entry_file not in solution:
        raise CorpusInvalid(f"{ex_id}: entry_file {entry_file!r} not in solution files")
    known_lines = {
        vname: tuple(SourceLocation(loc["file"], loc["line"]) for loc in locs)
        for vname, locs in meta.get("known_lines", {}).items()
    }
    return Exercise(
        id=ex_id,
        statement=statement,
        entry_file=entry_file,
        solution=solution,
        variants=variants,
        tests=tests,
        known_lines=known_lines,
    )


def _validate_exercise(exercise: Exercise) -> None:
    with tempfile.TemporaryDirectory(prefix="codehinter-corpus-") as tmp:
        ref_dir = os.path.join(tmp, "solution")
        report, _, _ = run_end_to_end(exercise.materialize(ref_dir))
        if not report.all_passed:
            raise CorpusInvalid(
                f"{exercise.id}: reference solution does not pass its tests "
                f"(failed={report.failed}, errored={report.errored})"
            )
        for vname, files in exercise.variants.items():
            for rel, content in files.items():
                budget = diff_line_numbers(exercise.solution[rel], content)
                if len(budget) > MAX_BUGGY_LINES:
                    raise CorpusInvalid(
                        f"{exercise.id}/{vname}: differs from the reference in "
                        f"{len(budget)} lines of {rel} (max {MAX_BUGGY_LINES})"
                    )
                expected = tuple(
                    loc for loc in exercise.known_lines.get(vname, ()) if loc.file == rel
                )
                if tuple(SourceLocation(rel, n) for n in budget) != expected:
                    raise CorpusInvalid(
                        f"{exercise.id}/{vname}: meta known_lines disagree with the "
                        f"computed diff for {rel}: {budget} vs {[l.line for l in expected]}"
                    )
            var_dir = os.path.join(tmp, f"buggy-{vname}")
            report, spectrum, _ = run_end_to_end(exercise.materialize(var_dir, vname))
            if report.all_passed:
                raise CorpusInvalid(f"{exercise.id}/{vname}: buggy variant passes all tests")
            failing_cover: set[SourceLocation] = set()
            for rec in spectrum.records:
                if rec.failing:
                    failing_cover.update(rec.covered)
            for loc in exercise.known_lines.get(vname, ()):
                if loc not in failing_cover:
                    raise CorpusInvalid(
                        f"{exercise.id}/{vname}: known buggy line {loc} is not executed "
                        "by any failing test"
                    )


def load_corpus(directory: str | None = None, *, validate: bool = True) -> list[Exercise]:
    """Load every exercise; with ``validate`` (the default) run the adapter
    to enforce the corpus invariants, raising CorpusInvalid naming the
    violated invariant and exercise id."""
    base = directory or default_corpus_dir()
    if not os.path.isdir(base):
        raise CorpusInvalid(f"corpus directory does not exist: {base}")
    exercises = []
    for ex_id in sorted(os.listdir(base)):
        ex_dir = os.path.join(base, ex_id)
        if not os.path.isdir(ex_dir):
            continue
        exercises.append(_load_exercise(ex_dir, ex_id))
    if not exercises:
        raise CorpusInvalid(f"no exercises under {base}")
    if validate:
        for exercise in exercises:
            _validate_exercise(exercise)
    return exercises
