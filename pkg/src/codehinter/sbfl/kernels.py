"""Batch scoring kernels over whole coverage matrices.

Two interchangeable backends compute per-line (ef, ep) counts and formula
scores: numba-jitted loops (default when numba is importable) and a pure
numpy path. Select with the ``CODEHINTER_SBFL_BACKEND`` environment variable
(``auto`` | ``numba`` | ``numpy``). Both backends evaluate the formulas with
the identical operation order as :mod:`codehinter.sbfl.formulas`, so scores
match the scalar path bit-for-bit.

``benchmarks/bench_sbfl.py`` compares the two backends on synthetic spectra.
"""

from __future__ import annotations

import math
import os

import numpy as np

from codehinter.sbfl.formulas import DSTAR2, FORMULA_IDS, OCHIAI, OP2, TARANTULA

ENV_BACKEND = "CODEHINTER_SBFL_BACKEND"

_choice = os.environ.get(ENV_BACKEND, "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"{ENV_BACKEND} must be auto, numba, or numpy (got {_choice!r})")

if _choice == "numpy":
    NUMBA_AVAILABLE = False
else:
    try:
        from numba import njit

        NUMBA_AVAILABLE = True
    except ImportError:
        if _choice == "numba":
            raise
        NUMBA_AVAILABLE = False


def active_backend() -> str:
    """Name of the backend batch calls will take in this process."""
    return "numba" if NUMBA_AVAILABLE else "numpy"


def counts_numpy(coverage: np.ndarray, failing: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-column (ef, ep) for a (tests x lines) 0/1 coverage matrix."""
    cov = coverage.astype(np.int64, copy=False)
    ef = cov[failing].sum(axis=0)
    ep = cov[~failing].sum(axis=0)
    return ef, ep


def scores_numpy(
    ef: np.ndarray, ep: np.ndarray, total_fail: int, total_pass: int, formula: str
) -> np.ndarray:
    ef = ef.astype(np.float64)
    ep = ep.astype(np.float64)
    tf = float(total_fail)
    tp = float(total_pass)
    covered = ef > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        if formula == TARANTULA:
            if tf == 0:
                return np.zeros_like(ef)
            fail_ratio = ef / tf
            pass_ratio = np.zeros_like(ep) if tp == 0 else ep / tp
            out = fail_ratio / (fail_ratio + pass_ratio)
            return np.where(covered, out, 0.0)
        if formula == OCHIAI:
            denom = np.sqrt(tf * (ef + ep))
            out = np.where(denom > 0, ef / np.where(denom > 0, denom, 1.0), 0.0)
            return np.where(covered, out, 0.0)
        if formula == DSTAR2:
            nf = tf - ef
            denom = ep + nf
            out = np.where(denom > 0, (ef * ef) / np.where(denom > 0, denom, 1.0), np.inf)
            return np.where(covered, out, 0.0)
        if formula == OP2:
            return ef - ep / (tp + 1.0)
    raise AssertionError(f"unhandled formula {formula!r}")


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _counts_jit(coverage, failing):  # pragma: no cover - compiled
        n_tests, n_lines = coverage.shape
        ef = np.zeros(n_lines, dtype=np.int64)
        ep = np.zeros(n_lines, dtype=np.int64)
        for t in range(n_tests):
            if failing[t]:
                for e in range(n_lines):
                    ef[e] += coverage[t, e]
            else:
                for e in range(n_lines):
                    ep[e] += coverage[t, e]
        return ef, ep

    @njit(cache=True)
    def _scores_jit(ef, ep, total_fail, total_pass, formula_id):  # pragma: no cover
        n = ef.shape[0]
        out = np.empty(n, dtype=np.float64)
        tf = float(total_fail)
        tp = float(total_pass)
        for i in range(n):
            e_f = float(ef[i])
            e_p = float(ep[i])
            if formula_id == 0:  # tarantula
                if e_f == 0.0 or tf == 0.0:
                    out[i] = 0.0
                else:
                    fail_ratio = e_f / tf
                    pass_ratio = 0.0 if tp == 0.0 else e_p / tp
                    out[i] = fail_ratio / (fail_ratio + pass_ratio)
            elif formula_id == 1:  # ochiai
                if e_f == 0.0:
                    out[i] = 0.0
                else:
                    denom = math.sqrt(tf * (e_f + e_p))
                    out[i] = 0.0 if denom == 0.0 else e_f / denom
            elif formula_id == 2:  # dstar2
                if e_f == 0.0:
                    out[i] = 0.0
                else:
                    denom = e_p + (tf - e_f)
                    out[i] = np.inf if denom == 0.0 else (e_f * e_f) / denom
            else:  # op2
                out[i] = e_f - e_p / (tp + 1.0)
        return out

    def counts_numba(coverage: np.ndarray, failing: np.ndarray):
        return _counts_jit(np.ascontiguousarray(coverage, dtype=np.uint8), failing)

    def scores_numba(ef, ep, total_fail, total_pass, formula):
        return _scores_jit(
            ef.astype(np.int64, copy=False),
            ep.astype(np.int64, copy=False),
            total_fail,
            total_pass,
            FORMULA_IDS[formula],
        )

else:
    counts_numba = None
    scores_numba = None


def batch_counts(coverage: np.ndarray, failing: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if NUMBA_AVAILABLE:
        return counts_numba(coverage, failing)
    return counts_numpy(coverage, failing)


def batch_scores(
    ef: np.ndarray, ep: np.ndarray, total_fail: int, total_pass: int, formula: str
) -> np.ndarray:
    if formula not in FORMULA_IDS:
        raise AssertionError(f"unhandled formula {formula!r}")
    if NUMBA_AVAILABLE:
        return scores_numba(ef, ep, total_fail, total_pass, formula)
    return scores_numpy(ef, ep, total_fail, total_pass, formula)
