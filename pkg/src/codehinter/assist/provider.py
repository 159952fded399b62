"""Suggestion providers: the deterministic rule/mutation stub and the live
chat-completion client.

Both speak the same structured context: failing tests, the top-ranked
locations with +/-3-line code windows, the exercise statement, and any syntax
error. Every test in this repository uses the stub; the live client reads its
endpoint from CODEHINTER_LLM_URL / CODEHINTER_LLM_MODEL / CODEHINTER_LLM_KEY.
"""

from __future__ import annotations

import ast
import json
import os
from dataclasses import dataclass
from typing import Protocol

from codehinter.assist.mutations import enumerate_line_mutations, syntax_repair_candidates
from codehinter.errors import ProviderUnavailable
from codehinter.locations import SourceLocation
from codehinter.runner import ExerciseSpec, SourceSnapshot
from codehinter.sbfl import DEFAULT_FORMULA, DEFAULT_TOP_K, derive_counts, rank, top_k
from codehinter.trace import CoverageSpectrum, FailingTest, SyntaxErrorInfo

ENV_LLM_URL = "CODEHINTER_LLM_URL"
ENV_LLM_MODEL = "CODEHINTER_LLM_MODEL"
ENV_LLM_KEY = "CODEHINTER_LLM_KEY"

WINDOW = 3


@dataclass(frozen=True)
class LocatedLine:
    location: SourceLocation
    score: float
    ef: int
    ep: int
    line_text: str
    window: str


@dataclass(frozen=True)
class ProviderContext:
    statement: str | None
    failing: tuple[FailingTest, ...]
    locations: tuple[LocatedLine, ...]
    syntax_error: SyntaxErrorInfo | None = None
    reference_solution: str | None = None
    totals: tuple[int, int] = (0, 0)

    def to_jsonable(self) -> dict:
        return {
            "statement": self.statement,
            "failing_tests": [
                {"test_id": f.test_id, "outcome": f.outcome, "message": f.message}
                for f in self.failing
            ],
            "locations": [
                {
                    "file": loc.location.file,
                    "line": loc.location.line,
                    "score": loc.score,
                    "text": loc.line_text,
                    "window": loc.window,
                }
                for loc in self.locations
            ],
            "syntax_error": None
            if self.syntax_error is None
            else {
                "file": self.syntax_error.file,
                "line": self.syntax_error.line,
                "message": self.syntax_error.message,
            },
            "totals": {"failing": self.totals[0], "passing": self.totals[1]},
        }


@dataclass(frozen=True)
class FixSuggestion:
    file: str
    line: int
    old_text: str
    new_text: str
    explanation: str
    origin: str = "provider"


@dataclass(frozen=True)
class PrintSuggestion:
    file: str
    line: int
    variable: str
    reason: str


@dataclass(frozen=True)
class LocationExplanation:
    file: str
    line: int
    text: str


def _render_window(lines: list[str], line_no: int) -> str:
    lo = max(1, line_no - WINDOW)
    hi = min(len(lines), line_no + WINDOW)
    out = []
    for n in range(lo, hi + 1):
        marker = ">" if n == line_no else " "
        out.append(f"{marker} {n:>4} | {lines[n - 1]}")
    return "\n".join(out)


def build_context(
    spectrum: CoverageSpectrum,
    snapshot: SourceSnapshot,
    exercise: ExerciseSpec | None = None,
    k: int = DEFAULT_TOP_K,
    formula: str = DEFAULT_FORMULA,
) -> ProviderContext:
    """Assemble the grounded context block handed to any provider."""
    statement = exercise.statement if exercise else None
    if spectrum.syntax_error is not None:
        err = spectrum.syntax_error
        located = ()
        if err.file in snapshot.files:
            lines = snapshot.lines_of(err.file)
            line_no = min(err.line, len(lines)) if lines else 0
            if line_no:
                located = (
                    LocatedLine(
                        location=SourceLocation(err.file, line_no),
                        score=0.0,
                        ef=0,
                        ep=0,
                        line_text=lines[line_no - 1],
                        window=_render_window(lines, line_no),
                    ),
                )
        return ProviderContext(
            statement=statement, failing=(), locations=located, syntax_error=err
        )
    ranking = rank(spectrum, formula)
    counts = derive_counts(spectrum)
    located = []
    for loc, score in top_k(ranking, k):
        lines = snapshot.lines_of(loc.file) if loc.file in snapshot.files else []
        text = lines[loc.line - 1] if loc.line <= len(lines) else ""
        located.append(
            LocatedLine(
                location=loc,
                score=score,
                ef=counts[loc].ef,
                ep=counts[loc].ep,
                line_text=text,
                window=_render_window(lines, loc.line) if lines else "",
            )
        )
    failing = tuple(
        FailingTest(r.test_id, r.outcome, r.message) for r in spectrum.records if r.failing
    )
    return ProviderContext(
        statement=statement,
        failing=failing,
        locations=tuple(located),
        totals=(spectrum.total_failing, spectrum.total_passing),
    )


class SuggestionProvider(Protocol):
    """Capability set every provider offers."""

    def explain_locations(self, ctx: ProviderContext) -> list[LocationExplanation]: ...

    def propose_fixes(self, ctx: ProviderContext, limit: int) -> list[FixSuggestion]: ...

    def propose_prints(self, ctx: ProviderContext) -> list[PrintSuggestion]: ...

    def pseudocode(self, ctx: ProviderContext) -> list[str]: ...


def assigned_names(line_text: str) -> list[str]:
    """Names bound on a single source line (assignments, aug-assigns, loop
    targets). Block headers parse with a `pass` body appended."""
    stripped = line_text.strip()
    if not stripped:
        return []
    for candidate in (stripped, stripped + " pass", stripped + "\n    pass"):
        try:
            tree = ast.parse(candidate)
            break
        except SyntaxError:
            tree = None
    if tree is None or not tree.body:
        return []
    stmt = tree.body[0]
    targets: list[ast.expr] = []
    if isinstance(stmt, ast.Assign):
        targets = list(stmt.targets)
    elif isinstance(stmt, (ast.AugAssign, ast.AnnAssign, ast.For)):
        targets = [stmt.target]
    names = []
    for target in targets:
        for node in ast.walk(target):
            if isinstance(node, ast.Name) and node.id not in names:
                names.append(node.id)
    return names


def structural_steps(statement: str, reference_solution: str | None) -> list[str]:
    """Pseudo-code steps: the reference solution's control structure when
    available, otherwise the statement split into imperative steps."""
    if reference_solution:
        try:
            tree = ast.parse(reference_solution)
        except SyntaxError:
            tree = None
        if tree is not None:
            steps: list[str] = []

            def walk(body, depth):
                indent = "  " * depth
                for node in body:
                    if isinstance(node, ast.FunctionDef):
                        args = ", ".join(a.arg for a in node.args.args)
                        steps.append(f"{indent}Define {node.name}({args}).")
                        walk(node.body, depth + 1)
                    elif isinstance(node, ast.For):
                        steps.append(
                            f"{indent}Loop with {ast.unparse(node.target)} over "
                            f"{ast.unparse(node.iter)}:"
                        )
                        walk(node.body, depth + 1)
                    elif isinstance(node, ast.While):
                        steps.append(f"{indent}Repeat while {ast.unparse(node.test)}:")
                        walk(node.body, depth + 1)
                    elif isinstance(node, ast.If):
                        steps.append(f"{indent}If {ast.unparse(node.test)}:")
                        walk(node.body, depth + 1)
                        if node.orelse:
                            steps.append(f"{indent}Otherwise:")
                            walk(node.orelse, depth + 1)
                    elif isinstance(node, ast.Return):
                        value = ast.unparse(node.value) if node.value else "nothing"
                        steps.append(f"{indent}Return {value}.")
                    elif isinstance(node, (ast.Assign, ast.AugAssign)):
                        steps.append(f"{indent}{ast.unparse(node)}")
                    elif isinstance(node, ast.Expr):
                        steps.append(f"{indent}{ast.unparse(node)}")
            walk(tree.body, 0)
            if steps:
                return steps
    sentences = [s.strip() for s in statement.replace("\n", " ").split(".") if s.strip()]
    return [f"{s}." for s in sentences]


class StubProvider:
    """Deterministic rule/mutation provider; the default for every test.

    Identical structured context always yields identical output.
    """

    name = "stub"

    def explain_locations(self, ctx: ProviderContext) -> list[LocationExplanation]:
        ranks = ["most suspicious", "second most suspicious", "third most suspicious"]
        out = []
        for i, located in enumerate(ctx.locations):
            loc = located.location
            label = ranks[i] if i < len(ranks) else f"rank {i + 1}"
            out.append(
                LocationExplanation(
                    loc.file,
                    loc.line,
                    f"Line {loc.line} of {loc.file} is the {label} line: it ran in "
                    f"{located.ef} of {ctx.totals[0]} failing and {located.ep} of "
                    f"{ctx.totals[1]} passing tests. Check whether "
                    f"`{located.line_text.strip()}` computes what the failing "
                    "tests expect.",
                )
            )
        return out

    def propose_fixes(self, ctx: ProviderContext, limit: int) -> list[FixSuggestion]:
        suggestions: list[FixSuggestion] = []
        for located in ctx.locations:
            loc = located.location
            if ctx.syntax_error is not None:
                candidates = syntax_repair_candidates(
                    located.line_text, ctx.syntax_error.message
                ) + enumerate_line_mutations(located.line_text)
            else:
                candidates = enumerate_line_mutations(located.line_text)
            for new_text, label in candidates:
                suggestions.append(
                    FixSuggestion(
                        file=loc.file,
                        line=loc.line,
                        old_text=located.line_text,
                        new_text=new_text,
                        explanation=f"On line {loc.line} of {loc.file}, {label}.",
                        origin="mutation",
                    )
                )
                if len(suggestions) >= limit:
                    return suggestions
        return suggestions

    def propose_prints(self, ctx: ProviderContext) -> list[PrintSuggestion]:
        out = []
        seen = set()
        for located in ctx.locations:
            for name in assigned_names(located.line_text):
                key = (located.location.file, located.location.line, name)
                if key in seen:
                    continue
                seen.add(key)
                out.append(
                    PrintSuggestion(
                        file=located.location.file,
                        line=located.location.line,
                        variable=name,
                        reason=(
                            f"`{name}` is assigned on suspicious line "
                            f"{located.location.line}; printing it shows how its value "
                            "evolves while the failing tests run."
                        ),
                    )
                )
        return out

    def pseudocode(self, ctx: ProviderContext) -> list[str]:
        return structural_steps(ctx.statement or "", ctx.reference_solution)

    def chat(self, text: str) -> str:
        return (
            "I can't answer free-form questions offline, but the helpers can: run "
            "the End-to-End Test, then try Locate Lines, the quiz, or a print plan."
        )


class HttpChatProvider:
    """Live chat-completion client speaking an OpenAI-style JSON endpoint."""

    name = "http"

    def __init__(
        self,
        base_url: str | None = None,
        model: str | None = None,
        api_key: str | None = None,
        timeout: float = 30.0,
    ):
        self.base_url = (base_url or os.environ.get(ENV_LLM_URL, "")).rstrip("/")
        self.model = model or os.environ.get(ENV_LLM_MODEL, "")
        self.api_key = api_key or os.environ.get(ENV_LLM_KEY, "")
        self.timeout = timeout

    def _complete(self, system: str, payload: dict):
        if not self.base_url:
            raise ProviderUnavailable(f"{ENV_LLM_URL} is not configured")
        import httpx

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": json.dumps(payload, indent=2)},
            ],
            "temperature": 0,
        }
        try:
            resp = httpx.post(
                f"{self.base_url}/chat/completions",
                json=body,
                headers=headers,
                timeout=self.timeout,
            )
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
        except Exception as exc:
            raise ProviderUnavailable(f"provider request failed: {exc}") from None
        text = content.strip()
        if text.startswith("```"):
            text = text.strip("`")
            text = text[text.find("\n") + 1 :] if "\n" in text else text
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProviderUnavailable(f"provider returned non-JSON content: {exc}") from None

    def explain_locations(self, ctx: ProviderContext) -> list[LocationExplanation]:
        reply = self._complete(
            "You explain why specific source lines are the likely fault locations. "
            "Only discuss the given locations; never propose a full solution. Reply "
            'with JSON: [{"file": str, "line": int, "explanation": str}]',
            ctx.to_jsonable(),
        )
        return [
            LocationExplanation(item["file"], item["line"], item["explanation"])
            for item in reply
            if isinstance(item, dict)
        ]

    def propose_fixes(self, ctx: ProviderContext, limit: int) -> list[FixSuggestion]:
        reply = self._complete(
            "Propose up to "
            f"{limit} candidate one-line fixes for the failing code. Reply with JSON: "
            '[{"file": str, "line": int, "old_text": str, "new_text": str, '
            '"explanation": str}]',
            ctx.to_jsonable(),
        )
        out = []
        for item in reply[:limit] if isinstance(reply, list) else []:
            try:
                out.append(
                    FixSuggestion(
                        file=item["file"],
                        line=int(item["line"]),
                        old_text=item["old_text"],
                        new_text=item["new_text"],
                        explanation=item.get("explanation", ""),
                        origin="provider",
                    )
                )
            except (KeyError, TypeError, ValueError):
                continue
        return out

    def propose_prints(self, ctx: ProviderContext) -> list[PrintSuggestion]:
        reply = self._complete(
            "Suggest up to three key variables to observe with print statements. "
            'Reply with JSON: [{"file": str, "line": int, "variable": str, '
            '"reason": str}]',
            ctx.to_jsonable(),
        )
        out = []
        for item in reply if isinstance(reply, list) else []:
            try:
                out.append(
                    PrintSuggestion(
                        file=item["file"],
                        line=int(item["line"]),
                        variable=item["variable"],
                        reason=item.get("reason", ""),
                    )
                )
            except (KeyError, TypeError, ValueError):
                continue
        return out

    def pseudocode(self, ctx: ProviderContext) -> list[str]:
        payload = dict(ctx.to_jsonable(), statement=ctx.statement)
        reply = self._complete(
            "Write numbered pseudo-code steps that describe how to solve the stated "
            'problem. Reply with JSON: {"steps": [str]}',
            payload,
        )
        steps = reply.get("steps") if isinstance(reply, dict) else None
        if not isinstance(steps, list):
            raise ProviderUnavailable("provider returned no steps")
        return [str(s) for s in steps]

    def chat(self, text: str) -> str:
        """Unvalidated pass-through for the session chat endpoint."""
        reply = self._complete(
            "You are a debugging tutor. Guide the student with questions and "
            "concepts; never write out a full solution. Reply with JSON: "
            '{"reply": str}',
            {"message": text},
        )
        if isinstance(reply, dict) and isinstance(reply.get("reply"), str):
            return reply["reply"]
        raise ProviderUnavailable("provider returned no reply")


def default_provider() -> SuggestionProvider:
    """Live provider when configured through the environment, else the stub."""
    if os.environ.get(ENV_LLM_URL):
        return HttpChatProvider()
    return StubProvider()
