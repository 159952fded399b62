"""Single-line mutation families for the deterministic fix-candidate stub.

Four families, enumerated in a fixed order: comparison flips, off-by-one on
integer literals, arithmetic operator swaps, and boundary index shifts. The
corpus seeds its bugs from the same families, so the reverse mutation of a
seeded bug is always in the enumeration.
"""

from __future__ import annotations

import io
import re
import tokenize

COMPARISON_FLIPS = {
    "<=": ("<", ">="),
    ">=": (">", "<="),
    "<": ("<=", ">"),
    ">": (">=", "<"),
    "==": ("!=",),
    "!=": ("==",),
}

OPERATOR_SWAPS = {
    "+": ("-", "*"),
    "-": ("+",),
    "*": ("+", "//"),
    "//": ("*",),
    "/": ("//",),
    "+=": ("-=",),
    "-=": ("+=",),
}


def _tokens(line: str):
    """Lex one source line; None when it cannot be tokenized (broken code)."""
    try:
        return [
            tok
            for tok in tokenize.generate_tokens(io.StringIO(line + "\n").readline)
            if tok.type in (tokenize.OP, tokenize.NUMBER, tokenize.NAME)
        ]
    except (tokenize.TokenError, IndentationError, SyntaxError):
        return None


def _splice(line: str, start: int, end: int, replacement: str) -> str:
    return line[:start] + replacement + line[end:]


def enumerate_line_mutations(line: str) -> list[tuple[str, str]]:
    """All single-token mutations of ``line`` as (mutated_line, label)."""
    results: list[tuple[str, str]] = []
    seen = {line}

    def add(mutated: str, label: str):
        if mutated not in seen:
            seen.add(mutated)
            results.append((mutated, label))

    tokens = _tokens(line)
    if tokens is None:
        # broken line (e.g. inside a syntax error); fall back to coarse
        # comparison flips only, found textually
        for op, replacements in COMPARISON_FLIPS.items():
            for m in re.finditer(re.escape(op), line):
                for rep in replacements:
                    add(
                        _splice(line, m.start(), m.end(), rep),
                        f"change `{op}` to `{rep}`",
                    )
        return results

    ops = [t for t in tokens if t.type == tokenize.OP]
    numbers = [t for t in tokens if t.type == tokenize.NUMBER]
    names = [t for t in tokens if t.type == tokenize.NAME]

    for tok in ops:
        for rep in COMPARISON_FLIPS.get(tok.string, ()):
            add(
                _splice(line, tok.start[1], tok.end[1], rep),
                f"change `{tok.string}` to `{rep}`",
            )
    for i, tok in enumerate(names):
        if tok.string in ("or", "and"):
            rep = "and" if tok.string == "or" else "or"
            add(
                _splice(line, tok.start[1], tok.end[1], rep),
                f"change `{tok.string}` to `{rep}`",
            )
        elif tok.string == "is":
            follower = names[i + 1] if i + 1 < len(names) else None
            if follower is not None and follower.string == "not":
                add(
                    _splice(line, tok.start[1], follower.end[1], "is"),
                    "change `is not` to `is`",
                )
            else:
                add(
                    _splice(line, tok.start[1], tok.end[1], "is not"),
                    "change `is` to `is not`",
                )
    for tok in numbers:
        if not tok.string.isdigit():
            continue
        value = int(tok.string)
        for delta in (1, -1):
            if value + delta < 0:
                continue
            add(
                _splice(line, tok.start[1], tok.end[1], str(value + delta)),
                f"change `{tok.string}` to `{value + delta}`",
            )
    for tok in ops:
        for rep in OPERATOR_SWAPS.get(tok.string, ()):
            add(
                _splice(line, tok.start[1], tok.end[1], rep),
                f"change `{tok.string}` to `{rep}`",
            )
    # boundary index shifts: [name] -> [name + 1] / [name - 1]
    for i in range(len(tokens) - 2):
        a, b, c = tokens[i], tokens[i + 1], tokens[i + 2]
        if (
            a.type == tokenize.OP
            and a.string == "["
            and b.type == tokenize.NAME
            and c.type == tokenize.OP
            and c.string == "]"
        ):
            for suffix in (" + 1", " - 1"):
                add(
                    _splice(line, b.start[1], b.end[1], b.string + suffix),
                    f"index with `{b.string}{suffix}` instead of `{b.string}`",
                )
    return results


def syntax_repair_candidates(line: str, message: str) -> list[tuple[str, str]]:
    """Cheap repairs for common syntax slips on one line."""
    results: list[tuple[str, str]] = []
    seen = {line}

    def add(mutated: str, label: str):
        if mutated not in seen:
            seen.add(mutated)
            results.append((mutated, label))

    stripped = line.rstrip()
    opens, closes = stripped.count("("), stripped.count(")")
    if opens > closes:
        if stripped.endswith(":"):
            add(stripped[:-1] + ")" * (opens - closes) + ":", "close the open parenthesis")
        else:
            add(stripped + ")" * (opens - closes), "close the open parenthesis")
    if closes > opens:
        idx = stripped.rfind(")")
        add(stripped[:idx] + stripped[idx + 1 :], "remove the extra parenthesis")
    header = re.match(r"^\s*(def|if|elif|else|for|while|class|try|except|finally|with)\b", line)
    if header and not stripped.endswith(":"):
        add(stripped + ":", "end the block header with a colon")
    if "=" in line and "==" not in line and re.search(r"^\s*(if|while|elif)\b", line):
        add(line.replace("=", "==", 1), "compare with `==` instead of assigning")
    # plausible-but-usually-wrong repairs so a quiz always has distractors
    add(stripped + ")", "append a closing parenthesis at the end")
    if stripped.endswith(":"):
        add(stripped[:-1], "drop the trailing colon")
    indent = line[: len(line) - len(line.lstrip())]
    add(indent + "# " + stripped, "comment the line out")
    return results
