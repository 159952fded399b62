"""Source locations shared by the trace format and the ranking core.

Kept free of heavy imports so the bundled adapter starts quickly.
"""

from __future__ import annotations

from dataclasses import dataclass

from codehinter.errors import MalformedLocation


def validate_relative_path(path: str) -> str:
    """Check that ``path`` is a normalized, forward-slash relative path.

    Rejects rather than repairs: adapters are required to emit canonical
    paths so that locations compare by simple equality.
    """
    if not path or "\\" in path or path.startswith("/") or path.endswith("/"):
        raise MalformedLocation(f"not a normalized relative path: {path!r}")
    parts = path.split("/")
    if any(p in ("", ".", "..") for p in parts):
        raise MalformedLocation(f"not a normalized relative path: {path!r}")
    return path


@dataclass(frozen=True, order=True)
class SourceLocation:
    """A 1-based line in a subject file, keyed by (file, line)."""

    file: str
    line: int

    def __post_init__(self):
        validate_relative_path(self.file)
        if not isinstance(self.line, int) or isinstance(self.line, bool) or self.line < 1:
            raise MalformedLocation(f"line must be a positive integer, got {self.line!r}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"
