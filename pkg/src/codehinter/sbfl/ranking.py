"""Count derivation and suspiciousness ranking over coverage spectra."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from codehinter.errors import EmptySpectrum, NoFailingTests, UnknownFormula
from codehinter.sbfl.formulas import DEFAULT_FORMULA, FORMULAS
from codehinter.sbfl.kernels import batch_counts, batch_scores
from codehinter.sbfl.model import ElementCounts, SourceLocation, SuspiciousnessRanking

if TYPE_CHECKING:
    from codehinter.trace import CoverageSpectrum

FAILING_OUTCOMES = ("fail", "error")

DEFAULT_TOP_K = 3


def _spectrum_arrays(spectrum: "CoverageSpectrum"):
    """Flatten a spectrum into (locations, coverage matrix, failing vector).

    Locations are sorted by (file, line); that order doubles as the ranking
    tie-break, so a stable sort on scores alone yields the final order.
    """
    if not spectrum.records:
        raise EmptySpectrum("spectrum has no test records")
    locations = sorted({loc for rec in spectrum.records for loc in rec.covered})
    index = {loc: i for i, loc in enumerate(locations)}
    coverage = np.zeros((len(spectrum.records), len(locations)), dtype=np.uint8)
    failing = np.zeros(len(spectrum.records), dtype=np.bool_)
    for t, rec in enumerate(spectrum.records):
        failing[t] = rec.outcome in FAILING_OUTCOMES
        for loc in rec.covered:
            coverage[t, index[loc]] = 1
    return locations, coverage, failing


def derive_counts(spectrum: "CoverageSpectrum") -> dict[SourceLocation, ElementCounts]:
    """Four-way counts for every location covered by at least one test."""
    locations, coverage, failing = _spectrum_arrays(spectrum)
    total_fail = int(failing.sum())
    total_pass = len(failing) - total_fail
    ef, ep = batch_counts(coverage, failing)
    return {
        loc: ElementCounts(
            ef=int(ef[i]), ep=int(ep[i]), nf=total_fail - int(ef[i]), np=total_pass - int(ep[i])
        )
        for i, loc in enumerate(locations)
    }


def rank(spectrum: "CoverageSpectrum", formula: str = DEFAULT_FORMULA) -> SuspiciousnessRanking:
    """Score every covered location and order by suspiciousness.

    Infinite DStar2 sentinels are replaced by (max finite score + 1.0) so the
    emitted ranking is finite and JSON-safe while preserving order.
    """
    if formula not in FORMULAS:
        raise UnknownFormula(
            f"unknown formula {formula!r}; expected one of {', '.join(FORMULAS)}"
        )
    locations, coverage, failing = _spectrum_arrays(spectrum)
    total_fail = int(failing.sum())
    total_pass = len(failing) - total_fail
    if total_fail == 0:
        raise NoFailingTests("cannot rank a spectrum with no failing tests")

    ef, ep = batch_counts(coverage, failing)
    scores = batch_scores(ef, ep, total_fail, total_pass, formula)

    infinite = np.isinf(scores)
    if infinite.any():
        finite = scores[~infinite]
        ceiling = float(finite.max()) + 1.0 if finite.size else 1.0
        scores = np.where(infinite, ceiling, scores)

    order = np.argsort(-scores, kind="stable")
    entries = tuple((locations[i], float(scores[i])) for i in order)
    return SuspiciousnessRanking(formula=formula, entries=entries, totals=(total_fail, total_pass))


def top_k(
    ranking: SuspiciousnessRanking, k: int = DEFAULT_TOP_K
) -> list[tuple[SourceLocation, float]]:
    """First min(k, len) entries, order preserved ("up to k" semantics)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return list(ranking.entries[:k])


def is_failing_outcome(outcome: str) -> bool:
    return outcome in FAILING_OUTCOMES


def ensure_finite(value: float) -> float:
    """Guard used by serializers; rankings must already be finite."""
    if math.isinf(value) or math.isnan(value):
        raise AssertionError("non-finite score leaked past ranking")
    return value
