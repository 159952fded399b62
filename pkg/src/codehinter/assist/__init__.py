"""Helper tools: explanations, quizzes, prints, patches, visualizer, pseudo-code."""

from codehinter.assist.helpers import LocatedExplanation, locate_and_explain, pseudocode, visualizer_url
from codehinter.assist.patch import Edit, PatchProposal, apply_patch, render_unified_diff, reveal_solution, write_snapshot
from codehinter.assist.prints import DebugOutput, PrintPlan, run_instrumented, suggest_prints
from codehinter.assist.provider import (
    HttpChatProvider,
    ProviderContext,
    StubProvider,
    SuggestionProvider,
    build_context,
    default_provider,
)
from codehinter.assist.quiz import QuizCard, QuizOption, ValidationResult, answer_quiz, make_quiz, validate_proposal

__all__ = [
    "DebugOutput",
    "Edit",
    "HttpChatProvider",
    "LocatedExplanation",
    "PatchProposal",
    "PrintPlan",
    "ProviderContext",
    "QuizCard",
    "QuizOption",
    "StubProvider",
    "SuggestionProvider",
    "ValidationResult",
    "answer_quiz",
    "apply_patch",
    "build_context",
    "default_provider",
    "locate_and_explain",
    "make_quiz",
    "pseudocode",
    "render_unified_diff",
    "reveal_solution",
    "run_instrumented",
    "suggest_prints",
    "validate_proposal",
    "visualizer_url",
    "write_snapshot",
]
