"""Value types for spectrum-based fault localization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from codehinter.locations import SourceLocation, validate_relative_path

__all__ = ["ElementCounts", "SourceLocation", "SuspiciousnessRanking", "validate_relative_path"]


@dataclass(frozen=True)
class ElementCounts:
    """The four-way spectrum partition for one program element.

    ef/ep count failing/passing tests that cover the element; nf/np count
    those that do not. ef + nf and ep + np equal the spectrum's failing and
    passing totals for every element.
    """

    ef: int
    ep: int
    nf: int
    np: int

    def __post_init__(self):
        for name in ("ef", "ep", "nf", "np"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def total_failing(self) -> int:
        return self.ef + self.nf

    @property
    def total_passing(self) -> int:
        return self.ep + self.np


@dataclass(frozen=True)
class SuspiciousnessRanking:
    """Scored locations under one formula, most suspicious first.

    Entries are sorted by score descending with ties broken by (file, line)
    ascending; every location appears at most once and all scores are finite
    (the ranking stage substitutes infinite sentinels before emission).
    """

    formula: str
    entries: tuple[tuple[SourceLocation, float], ...]
    totals: tuple[int, int] = field(metadata={"doc": "(failing, passing) test counts"})

    def __len__(self) -> int:
        return len(self.entries)

    def to_jsonable(self) -> dict:
        return {
            "formula": self.formula,
            "totals": {"failing": self.totals[0], "passing": self.totals[1]},
            "entries": [
                {"file": loc.file, "line": loc.line, "score": score}
                for loc, score in self.entries
            ],
        }

    def serialize(self) -> bytes:
        """Canonical byte form: sorted keys, compact separators, UTF-8."""
        return json.dumps(
            self.to_jsonable(), sort_keys=True, separators=(",", ":"), ensure_ascii=False
        ).encode("utf-8")
