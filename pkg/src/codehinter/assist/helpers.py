"""Grounded explanations, the visualizer redirect, and pseudo-code."""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import quote

from codehinter.assist.provider import (
    ProviderContext,
    SuggestionProvider,
    build_context,
    structural_steps,
)
from codehinter.errors import ConfigInvalid, ProviderUnavailable, SourceTooLarge
from codehinter.locations import SourceLocation
from codehinter.runner import ExerciseSpec, SourceSnapshot
from codehinter.sbfl import DEFAULT_FORMULA, DEFAULT_TOP_K
from codehinter.trace import CoverageSpectrum

VISUALIZER_BASE = "https://pythontutor.com/visualize.html#code="
VISUALIZER_SUFFIX = "&cumulative=false&mode=edit&py=3&rawInputLstJSON=%5B%5D"
DEFAULT_MAX_URL_LEN = 8000


@dataclass(frozen=True)
class LocatedExplanation:
    location: SourceLocation
    score: float
    explanation: str
    context: str = ""  # +/-3-line window, the marked line prefixed with ">"

    def to_jsonable(self) -> dict:
        return {
            "file": self.location.file,
            "line": self.location.line,
            "score": self.score,
            "explanation": self.explanation,
            "context": self.context,
        }


def _fallback_text(located) -> str:
    return (
        f"Line {located.location.line} of {located.location.file} is covered by "
        f"{located.ef} failing / {located.ep} passing tests."
    )


def locate_and_explain(
    spectrum: CoverageSpectrum,
    snapshot: SourceSnapshot,
    provider: SuggestionProvider,
    exercise: ExerciseSpec | None = None,
    k: int = DEFAULT_TOP_K,
    formula: str = DEFAULT_FORMULA,
    context: ProviderContext | None = None,
) -> list[LocatedExplanation]:
    """Rank, take the top-k locations, and attach one explanation per location.

    Explanations are grounded: whatever the provider returns, only the ranked
    locations are explained, and a missing or offline provider degrades to a
    count-based template rather than failing.
    """
    ctx = context or build_context(spectrum, snapshot, exercise, k=k, formula=formula)
    by_location: dict[tuple[str, int], str] = {}
    try:
        for item in provider.explain_locations(ctx):
            by_location[(item.file, item.line)] = item.text
    except ProviderUnavailable:
        by_location = {}
    out = []
    for located in ctx.locations:
        key = (located.location.file, located.location.line)
        out.append(
            LocatedExplanation(
                location=located.location,
                score=located.score,
                explanation=by_location.get(key) or _fallback_text(located),
                context=located.window,
            )
        )
    return out


def visualizer_url(
    snapshot: SourceSnapshot, entry_file: str, max_url_len: int = DEFAULT_MAX_URL_LEN
) -> str:
    """Deterministic visualizer link embedding the percent-encoded source."""
    if entry_file not in snapshot.files:
        raise ConfigInvalid(f"entry file {entry_file!r} is not a subject file")
    url = VISUALIZER_BASE + quote(snapshot.files[entry_file].content, safe="") + VISUALIZER_SUFFIX
    if len(url) > max_url_len:
        raise SourceTooLarge(
            f"{entry_file} produces a {len(url)}-character URL; the visualizer "
            f"limit is {max_url_len}"
        )
    return url


def pseudocode(
    exercise: ExerciseSpec | None,
    provider: SuggestionProvider,
    context: ProviderContext | None = None,
) -> str:
    """Numbered pseudo-code for the exercise statement.

    The stub (and the offline fallback) derive steps from the reference
    solution's control structure when one exists, otherwise from the
    statement itself.
    """
    if exercise is None or not exercise.statement.strip():
        raise ConfigInvalid("pseudocode needs an exercise with a non-empty statement")
    ctx = context or ProviderContext(
        statement=exercise.statement,
        failing=(),
        locations=(),
        reference_solution=exercise.reference_solution,
    )
    try:
        steps = provider.pseudocode(ctx)
    except ProviderUnavailable:
        steps = structural_steps(exercise.statement, exercise.reference_solution)
    return "\n".join(f"{i}. {step}" for i, step in enumerate(steps, start=1))
