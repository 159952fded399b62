"""Spectrum-based fault localization: counts, formulas, rankings."""

from codehinter.sbfl.formulas import DEFAULT_FORMULA, FORMULAS, score
from codehinter.sbfl.kernels import ENV_BACKEND, NUMBA_AVAILABLE, active_backend
from codehinter.sbfl.model import ElementCounts, SourceLocation, SuspiciousnessRanking
from codehinter.sbfl.ranking import DEFAULT_TOP_K, derive_counts, rank, top_k

__all__ = [
    "DEFAULT_FORMULA",
    "DEFAULT_TOP_K",
    "ENV_BACKEND",
    "FORMULAS",
    "NUMBA_AVAILABLE",
    "ElementCounts",
    "SourceLocation",
    "SuspiciousnessRanking",
    "active_backend",
    "derive_counts",
    "rank",
    "score",
    "top_k",
]
