"""Runtime-validated hint quizzes.

Every candidate fix is validated by applying it to a shadow copy of the
project and re-running the full test suite. A card carries exactly three
options: one whose validation is all-pass (the correct answer) and two
distractors whose validation is anything else. Answering never touches the
student's files.
"""

from __future__ import annotations

import dataclasses
import hashlib
import os
import shutil
import tempfile
from dataclasses import dataclass

from codehinter.assist.patch import Edit, PatchProposal, apply_patch, write_snapshot
from codehinter.assist.provider import ProviderContext, SuggestionProvider, build_context
from codehinter.errors import (
    AdapterTimeout,
    IndexOutOfRange,
    NoFailingTests,
    NoValidatedFix,
    StaleProposal,
    ValidationBudgetExceeded,
)
from codehinter.runner import ProjectConfig, SourceSnapshot, run_end_to_end, snapshot_source
from codehinter.trace import CoverageSpectrum

ALL_PASS = "all-pass"
STILL_FAILING = "still-failing"
NEW_FAILURES = "new-failures"
SYNTAX_ERROR = "syntax-error"

DEFAULT_MAX_CANDIDATES = 16
DEFAULT_VALIDATION_TIMEOUT = 10.0
SHADOW_IGNORE = shutil.ignore_patterns("__pycache__", "*.pyc", ".git", ".codehinter")


@dataclass(frozen=True)
class ValidationResult:
    applied: bool
    outcome: str
    failing_after: tuple[str, ...]

    def __post_init__(self):
        if self.outcome == ALL_PASS and self.failing_after:
            raise ValueError("an all-pass validation cannot list failing tests")

    def to_jsonable(self) -> dict:
        return {
            "applied": self.applied,
            "outcome": self.outcome,
            "failing_after": list(self.failing_after),
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "ValidationResult":
        return cls(obj["applied"], obj["outcome"], tuple(obj["failing_after"]))


@dataclass(frozen=True)
class QuizOption:
    proposal: PatchProposal
    explanation: str

    def to_jsonable(self) -> dict:
        return {"proposal": self.proposal.to_jsonable(), "explanation": self.explanation}

    @classmethod
    def from_jsonable(cls, obj: dict) -> "QuizOption":
        return cls(PatchProposal.from_jsonable(obj["proposal"]), obj["explanation"])


@dataclass(frozen=True)
class QuizCard:
    question: str
    options: tuple[QuizOption, ...]
    correct_index: int
    validation: tuple[ValidationResult, ...]

    def __post_init__(self):
        if len(self.options) != 3 or len(self.validation) != 3:
            raise ValueError("a quiz card carries exactly three validated options")
        passing = [i for i, v in enumerate(self.validation) if v.outcome == ALL_PASS]
        if passing != [self.correct_index]:
            raise ValueError(
                "exactly one option must validate all-pass and correct_index must "
                f"point to it (all-pass at {passing}, correct_index {self.correct_index})"
            )

    def to_jsonable(self) -> dict:
        return {
            "question": self.question,
            "options": [o.to_jsonable() for o in self.options],
            "correct_index": self.correct_index,
            "validation": [v.to_jsonable() for v in self.validation],
        }

    @classmethod
    def from_jsonable(cls, obj: dict) -> "QuizCard":
        return cls(
            question=obj["question"],
            options=tuple(QuizOption.from_jsonable(o) for o in obj["options"]),
            correct_index=obj["correct_index"],
            validation=tuple(ValidationResult.from_jsonable(v) for v in obj["validation"]),
        )


def validate_proposal(
    proposal: PatchProposal,
    config: ProjectConfig,
    snapshot: SourceSnapshot,
    baseline_failing: set[str],
    timeout: float | None = None,
) -> ValidationResult:
    """Apply the proposal on a shadow copy, re-run the adapter, classify.

    The student's project is never touched; the shadow copy is discarded.
    ``timeout`` caps the re-run below the project timeout: candidate fixes
    that loop forever should give up quickly, not stall the quiz.
    """
    patched, _diff = apply_patch(snapshot, proposal)  # StaleProposal propagates
    shadow_config = config
    if timeout is not None:
        shadow_config = dataclasses.replace(config, timeout=min(config.timeout, timeout))
    with tempfile.TemporaryDirectory(prefix="codehinter-validate-") as tmp:
        shadow = os.path.join(tmp, "shadow")
        shutil.copytree(config.root, shadow, ignore=SHADOW_IGNORE)
        write_snapshot(patched, shadow)
        report, _spectrum, _snap = run_end_to_end(shadow_config.with_root(shadow))
    if report.has_syntax_error:
        return ValidationResult(applied=True, outcome=SYNTAX_ERROR, failing_after=())
    failing_after = tuple(sorted(f.test_id for f in report.failing))
    if not failing_after:
        return ValidationResult(applied=True, outcome=ALL_PASS, failing_after=())
    outcome = STILL_FAILING if set(failing_after) <= baseline_failing else NEW_FAILURES
    return ValidationResult(applied=True, outcome=outcome, failing_after=failing_after)


def _outcome_sentence(result: ValidationResult, total_tests: int) -> str:
    if result.outcome == ALL_PASS:
        return f"Re-running the suite after this change makes all {total_tests} tests pass."
    if result.outcome == SYNTAX_ERROR:
        return "This change breaks the file: the code no longer parses."
    if result.outcome == NEW_FAILURES:
        return (
            "This change makes things worse: re-running the suite fails "
            f"{len(result.failing_after)} test(s), including ones that passed before."
        )
    return (
        "After this change the suite still fails "
        f"{len(result.failing_after)} test(s): {', '.join(result.failing_after)}."
    )


def _stable_index(proposal: PatchProposal, modulo: int = 3) -> int:
    digest = hashlib.sha256(proposal.key().encode("ascii")).digest()
    return digest[0] % modulo


def make_quiz(
    spectrum: CoverageSpectrum,
    snapshot: SourceSnapshot,
    provider: SuggestionProvider,
    config: ProjectConfig,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    context: ProviderContext | None = None,
    validation_timeout: float = DEFAULT_VALIDATION_TIMEOUT,
) -> QuizCard:
    """Gather candidate fixes, validate each by apply-and-rerun, and build a
    three-option card with exactly one all-pass option.

    Raises NoValidatedFix when the candidate pool is exhausted without an
    all-pass candidate (or without two distractors), and
    ValidationBudgetExceeded when ``max_candidates`` validations were spent
    before a card could be assembled.
    """
    if spectrum.syntax_error is None and spectrum.total_failing == 0:
        raise NoFailingTests("a quiz needs a failing run or a syntax error")
    ctx = context or build_context(spectrum, snapshot, config.exercise)
    baseline = set(spectrum.failing_ids())
    total_tests = len(spectrum.records)

    candidates = provider.propose_fixes(ctx, limit=max(max_candidates * 2, 24))
    correct: tuple[PatchProposal, ValidationResult, str] | None = None
    distractors: list[tuple[PatchProposal, ValidationResult, str]] = []
    validated = 0
    for suggestion in candidates:
        if correct is not None and len(distractors) >= 2:
            break
        if validated >= max_candidates:
            raise ValidationBudgetExceeded(
                f"spent the validation budget of {max_candidates} re-runs without "
                "assembling a full card"
            )
        proposal = PatchProposal(
            edits=(
                Edit(suggestion.file, suggestion.line, suggestion.old_text, suggestion.new_text),
            ),
            rationale=suggestion.explanation,
            origin=suggestion.origin,
        )
        try:
            result = validate_proposal(
                proposal, config, snapshot, baseline, timeout=validation_timeout
            )
        except StaleProposal:
            continue  # hallucinated old_text; not a real candidate
        except AdapterTimeout:
            validated += 1  # a hanging candidate burned budget but proved nothing
            continue
        validated += 1
        if result.outcome == ALL_PASS:
            if correct is None:
                correct = (proposal, result, suggestion.explanation)
        elif len(distractors) < 2:
            distractors.append((proposal, result, suggestion.explanation))
    if correct is None:
        raise NoValidatedFix(
            f"none of the {validated} validated candidates makes the whole suite pass"
        )
    if len(distractors) < 2:
        raise NoValidatedFix(
            "a validated fix exists but the candidate pool yields fewer than two "
            "distractors"
        )

    correct_index = _stable_index(correct[0])
    slots: list[tuple[PatchProposal, ValidationResult, str]] = list(distractors)
    slots.insert(correct_index, correct)
    options = tuple(
        QuizOption(
            proposal=proposal,
            explanation=f"{explanation} {_outcome_sentence(result, total_tests)}",
        )
        for proposal, result, explanation in slots
    )
    validation = tuple(result for _, result, _ in slots)
    if spectrum.syntax_error is not None:
        question = (
            f"The code does not parse ({spectrum.syntax_error.message} at "
            f"{spectrum.syntax_error.file}:{spectrum.syntax_error.line}). "
            "Which change repairs it?"
        )
    else:
        question = (
            f"{spectrum.total_failing} test(s) fail. Which change fixes the code? "
            "Exactly one of these edits makes every test pass."
        )
    return QuizCard(
        question=question,
        options=options,
        correct_index=correct_index,
        validation=validation,
    )


def answer_quiz(card: QuizCard, choice: int) -> tuple[bool, str]:
    """Check an answer; returns (is_correct, explanation). Never edits files."""
    if not isinstance(choice, int) or isinstance(choice, bool) or not 0 <= choice <= 2:
        raise IndexOutOfRange(f"choice must be 0..2, got {choice!r}")
    return choice == card.correct_index, card.options[choice].explanation


def revalidate_option(
    card: QuizCard,
    index: int,
    config: ProjectConfig,
    spectrum: CoverageSpectrum,
    timeout: float = DEFAULT_VALIDATION_TIMEOUT,
) -> ValidationResult:
    """Re-run validation for one option (used by the soundness checks)."""
    snapshot = snapshot_source(config)
    return validate_proposal(
        card.options[index].proposal,
        config,
        snapshot,
        set(spectrum.failing_ids()),
        timeout=timeout,
    )
