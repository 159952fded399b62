"""Ranking behavior: derivation, ordering, sentinels, and SBFL properties."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codehinter.errors import EmptySpectrum, NoFailingTests
from codehinter.sbfl import ElementCounts, SourceLocation, derive_counts, rank, score, top_k
from codehinter.sbfl.formulas import FORMULAS
from codehinter.sbfl.kernels import NUMBA_AVAILABLE, counts_numpy, scores_numpy

from tests.conftest import spectrum_from
from tests.oracle import oracle_counts, oracle_rank


def test_derive_counts_partition():
    # 2 failing cover a.py:3, 1 passing covers a.py:3 and a.py:5
    spectrum = spectrum_from(
        [
            ("t1", "fail", [("a.py", 3)]),
            ("t2", "fail", [("a.py", 3)]),
            ("t3", "pass", [("a.py", 3), ("a.py", 5)]),
        ]
    )
    counts = derive_counts(spectrum)
    assert counts[SourceLocation("a.py", 3)] == ElementCounts(2, 1, 0, 0)
    assert counts[SourceLocation("a.py", 5)] == ElementCounts(0, 1, 2, 0)


def test_derive_counts_single_passing_test():
    spectrum = spectrum_from([("t1", "pass", [("a.py", 1)])])
    counts = derive_counts(spectrum)
    assert counts == {SourceLocation("a.py", 1): ElementCounts(0, 1, 0, 0)}


def test_uncovered_location_absent():
    spectrum = spectrum_from(
        [("t1", "fail", [("a.py", 1)])], subject_files=["a.py", "b.py"]
    )
    counts = derive_counts(spectrum)
    assert set(counts) == {SourceLocation("a.py", 1)}


def test_empty_spectrum_rejected():
    spectrum = spectrum_from([], subject_files=["a.py"])
    with pytest.raises(EmptySpectrum):
        derive_counts(spectrum)


def test_rank_requires_failing_test():
    spectrum = spectrum_from([("t1", "pass", [("a.py", 1)])])
    with pytest.raises(NoFailingTests):
        rank(spectrum)


def test_rank_puts_clean_signal_first():
    # buggy line covered by both failing tests only; 3 other lines by all 5
    everywhere = [("a.py", 1), ("a.py", 2), ("a.py", 4)]
    spectrum = spectrum_from(
        [
            ("f1", "fail", everywhere + [("a.py", 3)]),
            ("f2", "fail", everywhere + [("a.py", 3)]),
            ("p1", "pass", everywhere),
            ("p2", "pass", everywhere),
            ("p3", "pass", everywhere),
        ]
    )
    ranking = rank(spectrum, "ochiai")
    assert ranking.entries[0][0] == SourceLocation("a.py", 3)
    cases = [("fail", everywhere + [("a.py", 3)])] * 2 + [("pass", everywhere)] * 3
    expected = oracle_rank(cases, "ochiai")
    assert [(loc.file, loc.line) for loc, _ in ranking.entries] == [e for e, _ in expected]


def test_tie_break_by_file_then_line():
    spectrum = spectrum_from(
        [
            ("f1", "fail", [("b.py", 2), ("a.py", 9), ("a.py", 4)]),
            ("p1", "pass", []),
        ]
    )
    ranking = rank(spectrum, "ochiai")
    assert [(loc.file, loc.line) for loc, _ in ranking.entries] == [
        ("a.py", 4),
        ("a.py", 9),
        ("b.py", 2),
    ]


def test_dstar2_sentinel_replaced_and_ranked_first():
    spectrum = spectrum_from(
        [
            ("f1", "fail", [("a.py", 1), ("a.py", 2)]),
            ("f2", "fail", [("a.py", 1)]),
            ("p1", "pass", [("a.py", 2)]),
        ]
    )
    ranking = rank(spectrum, "dstar2")
    # a.py:1 has ef=2, ep=0, nf=0 -> inf sentinel; a.py:2 has 1/(1+1) = 0.5
    assert ranking.entries[0][0] == SourceLocation("a.py", 1)
    assert ranking.entries[0][1] == pytest.approx(1.5)
    assert all(math.isfinite(s) for _, s in ranking.entries)


def test_top_k_semantics():
    spectrum = spectrum_from(
        [("f1", "fail", [("a.py", n) for n in range(1, 8)]), ("p1", "pass", [])]
    )
    ranking = rank(spectrum)
    assert len(top_k(ranking, 3)) == 3
    assert top_k(ranking, 3) == list(ranking.entries[:3])
    two = rank(spectrum_from([("f1", "fail", [("a.py", 1), ("a.py", 2)])]))
    assert len(top_k(two, 3)) == 2
    assert len(top_k(ranking, 1)) == 1
    with pytest.raises(ValueError):
        top_k(ranking, 0)


def test_serialized_ranking_deterministic():
    def build():
        return spectrum_from(
            [
                ("f1", "fail", [("a.py", 1), ("a.py", 3)]),
                ("p1", "pass", [("a.py", 1)]),
            ]
        )

    assert rank(build(), "ochiai").serialize() == rank(build(), "ochiai").serialize()


# randomized spectra for the property checks

def random_cases(rng, max_tests=6, max_lines=10):
    n_tests = rng.randint(1, max_tests)
    n_lines = rng.randint(1, max_lines)
    lines = [("a.py", i + 1) for i in range(n_lines)]
    cases = []
    for _ in range(n_tests):
        outcome = rng.choice(["pass", "fail", "error"])
        covered = [loc for loc in lines if rng.random() < 0.5]
        cases.append((outcome, covered))
    return cases


def cases_to_spectrum(cases):
    return spectrum_from(
        [(f"t{i}", outcome, covered) for i, (outcome, covered) in enumerate(cases)],
        subject_files=["a.py"],
    )


def test_oracle_equivalence_randomized():
    rng = random.Random(20240817)
    checked = 0
    for _ in range(200):
        cases = random_cases(rng)
        spectrum = cases_to_spectrum(cases)
        if spectrum.total_failing == 0:
            continue
        for formula in FORMULAS:
            got = rank(spectrum, formula)
            expected = oracle_rank(cases, formula)
            assert [(loc.file, loc.line) for loc, _ in got.entries] == [
                e for e, _ in expected
            ], f"order mismatch under {formula} for {cases}"
            for (_, got_score), (_, want_score) in zip(got.entries, expected):
                assert got_score == pytest.approx(want_score, abs=1e-12)
        checked += 1
    assert checked > 50


def test_derive_counts_matches_oracle():
    rng = random.Random(7)
    for _ in range(100):
        cases = random_cases(rng)
        spectrum = cases_to_spectrum(cases)
        got = derive_counts(spectrum)
        expected = oracle_counts(cases)
        assert {(l.file, l.line): (c.ef, c.ep, c.nf, c.np) for l, c in got.items()} == expected


@given(st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_permutation_invariance(pyrandom):
    cases = random_cases(pyrandom)
    if not any(o in ("fail", "error") for o, _ in cases):
        cases.append(("fail", [("a.py", 1)]))
    shuffled = list(cases)
    pyrandom.shuffle(shuffled)
    for formula in FORMULAS:
        a = rank(cases_to_spectrum(cases), formula)
        b = rank(cases_to_spectrum(shuffled), formula)
        assert a.entries == b.entries


@given(
    ef=st.integers(0, 20),
    ep=st.integers(0, 20),
    nf=st.integers(0, 20),
    np_=st.integers(0, 20),
    bump=st.integers(1, 5),
)
@settings(max_examples=200, deadline=None)
def test_monotone_in_ef(ef, ep, nf, np_, bump):
    for formula in FORMULAS:
        low = score(ElementCounts(ef, ep, nf, np_), formula)
        high = score(ElementCounts(ef + bump, ep, nf, np_), formula)
        assert high >= low or math.isinf(high)


def test_top1_guarantee_on_clean_signal():
    # one line covered by all failing tests and no passing test; every other
    # line covered by at least one passing test
    spectrum = spectrum_from(
        [
            ("f1", "fail", [("m.py", 5), ("m.py", 1)]),
            ("f2", "fail", [("m.py", 5), ("m.py", 2)]),
            ("p1", "pass", [("m.py", 1), ("m.py", 2), ("m.py", 3)]),
            ("p2", "pass", [("m.py", 3)]),
        ]
    )
    for formula in ("ochiai", "dstar2", "op2"):
        assert rank(spectrum, formula).entries[0][0] == SourceLocation("m.py", 5), formula


@pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba backend not active")
def test_backends_agree_bitwise():
    from codehinter.sbfl.kernels import counts_numba, scores_numba

    rng = random.Random(99)
    for _ in range(25):
        cases = random_cases(rng, max_tests=6, max_lines=12)
        n_lines = 12
        coverage = np.zeros((len(cases), n_lines), dtype=np.uint8)
        failing = np.zeros(len(cases), dtype=np.bool_)
        for t, (outcome, covered) in enumerate(cases):
            failing[t] = outcome in ("fail", "error")
            for _, line in covered:
                coverage[t, line - 1] = 1
        ef_a, ep_a = counts_numpy(coverage, failing)
        ef_b, ep_b = counts_numba(coverage, failing)
        assert (ef_a == ef_b).all() and (ep_a == ep_b).all()
        tf, tp = int(failing.sum()), int((~failing).sum())
        for formula in FORMULAS:
            a = scores_numpy(ef_a, ep_a, tf, tp, formula)
            b = scores_numba(ef_b, ep_b, tf, tp, formula)
            same = (a == b) | (np.isinf(a) & np.isinf(b))
            assert same.all(), (formula, a, b)
