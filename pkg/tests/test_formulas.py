"""Formula unit tests against a hand-frozen oracle table."""

import math

import pytest

from codehinter.errors import UnknownFormula
from codehinter.sbfl import ElementCounts, score
from codehinter.sbfl.formulas import FORMULAS

INF = math.inf

# (ef, ep, nf, np, tarantula, ochiai, dstar2, op2) — computed independently
# from the closed forms and frozen; covers every denominator-zero branch.
CASES = [
    (2, 1, 0, 2, 0.75, 0.8164965809277261, 4.0, 1.75),
    (0, 0, 2, 3, 0.0, 0.0, 0.0, 0.0),
    (2, 0, 0, 3, 1.0, 1.0, INF, 2.0),
    (1, 0, 1, 0, 1.0, 0.7071067811865475, 1.0, 1.0),
    (0, 2, 3, 1, 0.0, 0.0, 0.0, -0.5),
    (3, 3, 0, 0, 0.5, 0.7071067811865476, 3.0, 2.25),
    (1, 1, 1, 1, 0.5, 0.5, 0.5, 0.6666666666666666),
    (5, 0, 0, 0, 1.0, 1.0, INF, 5.0),
    (0, 0, 0, 0, 0.0, 0.0, 0.0, 0.0),
    (0, 1, 0, 0, 0.0, 0.0, 0.0, -0.5),
    (4, 2, 1, 3, 0.6666666666666666, 0.7302967433402214, 5.333333333333333, 3.6666666666666665),
    (1, 4, 0, 1, 0.5555555555555556, 0.4472135954999579, 0.25, 0.3333333333333333),
    (2, 2, 2, 2, 0.5, 0.5, 1.0, 1.6),
    (1, 0, 0, 4, 1.0, 1.0, INF, 1.0),
    (3, 1, 2, 4, 0.75, 0.6708203932499369, 3.0, 2.8333333333333335),
    (0, 5, 0, 0, 0.0, 0.0, 0.0, -0.8333333333333334),
    (6, 3, 2, 1, 0.5, 0.7071067811865476, 7.2, 5.4),
    (1, 2, 3, 4, 0.42857142857142855, 0.2886751345948129, 0.2, 0.7142857142857143),
    (10, 0, 0, 10, 1.0, 1.0, INF, 10.0),
    (2, 5, 1, 0, 0.4, 0.4364357804719848, 0.6666666666666666, 1.1666666666666667),
    (7, 1, 0, 2, 0.75, 0.9354143466934853, 49.0, 6.75),
    (0, 0, 1, 1, 0.0, 0.0, 0.0, 0.0),
]


@pytest.mark.parametrize("ef,ep,nf,np_,tar,och,dst,op", CASES)
def test_formula_table(ef, ep, nf, np_, tar, och, dst, op):
    counts = ElementCounts(ef=ef, ep=ep, nf=nf, np=np_)
    assert score(counts, "tarantula") == pytest.approx(tar, abs=1e-9)
    assert score(counts, "ochiai") == pytest.approx(och, abs=1e-9)
    if math.isinf(dst):
        assert score(counts, "dstar2") == INF
    else:
        assert score(counts, "dstar2") == pytest.approx(dst, abs=1e-9)
    assert score(counts, "op2") == pytest.approx(op, abs=1e-9)


def test_spec_worked_example():
    # (ef=2, ep=1, nf=0, np=2): ochiai = 2/sqrt(2*3), tarantula = 0.75,
    # dstar2 = 4.0, op2 = 1.75
    counts = ElementCounts(2, 1, 0, 2)
    assert score(counts, "ochiai") == pytest.approx(2 / math.sqrt(6), abs=1e-12)
    assert score(counts, "tarantula") == pytest.approx(0.75, abs=1e-12)
    assert score(counts, "dstar2") == pytest.approx(4.0, abs=1e-12)
    assert score(counts, "op2") == pytest.approx(1.75, abs=1e-12)


def test_uncovered_element_scores_zero_everywhere():
    counts = ElementCounts(ef=0, ep=0, nf=2, np=3)
    for formula in FORMULAS:
        assert score(counts, formula) == 0.0


def test_dstar2_sentinel_branch():
    assert score(ElementCounts(2, 0, 0, 3), "dstar2") == INF


def test_unknown_formula():
    with pytest.raises(UnknownFormula):
        score(ElementCounts(1, 0, 0, 0), "jaccard")


def test_counts_reject_negative():
    with pytest.raises(ValueError):
        ElementCounts(-1, 0, 0, 0)
