"""Closed-form suspiciousness formulas over element counts.

Scalar reference implementations; the batch kernels in ``kernels`` evaluate
the same expressions in the same operation order so that scores agree
bit-for-bit between the per-element and whole-spectrum paths.
"""

from __future__ import annotations

import math

from codehinter.errors import UnknownFormula
from codehinter.sbfl.model import ElementCounts

TARANTULA = "tarantula"
OCHIAI = "ochiai"
DSTAR2 = "dstar2"
OP2 = "op2"

FORMULAS = (TARANTULA, OCHIAI, DSTAR2, OP2)
DEFAULT_FORMULA = OCHIAI

# stable ids shared with the batch kernels
FORMULA_IDS = {name: i for i, name in enumerate(FORMULAS)}


def tarantula(ef: float, ep: float, nf: float, np_: float) -> float:
    total_fail = ef + nf
    if ef == 0 or total_fail == 0:
        return 0.0
    total_pass = ep + np_
    fail_ratio = ef / total_fail
    pass_ratio = 0.0 if total_pass == 0 else ep / total_pass
    return fail_ratio / (fail_ratio + pass_ratio)


def ochiai(ef: float, ep: float, nf: float, np_: float) -> float:
    if ef == 0:
        return 0.0
    denom = math.sqrt((ef + nf) * (ef + ep))
    if denom == 0.0:
        return 0.0
    return ef / denom


def dstar2(ef: float, ep: float, nf: float, np_: float) -> float:
    if ef == 0:
        return 0.0
    denom = ep + nf
    if denom == 0:
        return math.inf
    return (ef * ef) / denom


def op2(ef: float, ep: float, nf: float, np_: float) -> float:
    total_pass = ep + np_
    return ef - ep / (total_pass + 1.0)


_BY_NAME = {TARANTULA: tarantula, OCHIAI: ochiai, DSTAR2: dstar2, OP2: op2}


def score(counts: ElementCounts, formula: str) -> float:
    """Suspiciousness of one element under the named formula.

    DStar2 may return +inf (its zero-denominator sentinel); the ranking
    stage replaces the sentinel before any serialization.
    """
    try:
        fn = _BY_NAME[formula]
    except KeyError:
        raise UnknownFormula(
            f"unknown formula {formula!r}; expected one of {', '.join(FORMULAS)}"
        ) from None
    return fn(float(counts.ef), float(counts.ep), float(counts.nf), float(counts.np))
