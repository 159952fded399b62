"""Grounded explanations, visualizer URLs, pseudo-code."""

import pytest

from codehinter.assist import StubProvider, locate_and_explain, pseudocode, visualizer_url
from codehinter.assist.provider import LocationExplanation
from codehinter.errors import ConfigInvalid, NoFailingTests, ProviderUnavailable, SourceTooLarge
from codehinter.runner import ExerciseSpec, FileVersion, SourceSnapshot, _hash_text
from codehinter.sbfl import SourceLocation

from tests.conftest import materialize_exercise, spectrum_from


def snap(**files):
    return SourceSnapshot(
        {name: FileVersion(text, _hash_text(text)) for name, text in files.items()}
    )


def test_seeded_bug_is_among_highlighted_lines(tmp_path):
    exercise, config, _, spectrum, snapshot = materialize_exercise(
        "02_summary_ranges", tmp_path / "proj"
    )
    results = locate_and_explain(spectrum, snapshot, StubProvider(), config.exercise)
    assert 1 <= len(results) <= 3
    known = set(exercise.known_lines["v1"])
    assert known & {r.location for r in results}
    for r in results:
        assert f"{r.location.line}" in r.explanation
        assert r.location.file in r.explanation


def test_two_scored_lines_give_two_explanations():
    spectrum = spectrum_from(
        [
            ("f1", "fail", [("main.py", 1), ("main.py", 2)]),
            ("p1", "pass", [("main.py", 1)]),
        ]
    )
    snapshot = snap(**{"main.py": "a = 1\nb = 2\n"})
    results = locate_and_explain(spectrum, snapshot, StubProvider())
    assert len(results) == 2


def test_grounding_drops_locations_outside_top_k():
    spectrum = spectrum_from(
        [
            ("f1", "fail", [("main.py", 1), ("main.py", 2)]),
            ("p1", "pass", [("main.py", 1)]),
        ]
    )
    snapshot = snap(**{"main.py": "a = 1\nb = 2\n"})

    class Rogue(StubProvider):
        def explain_locations(self, ctx):
            return [
                LocationExplanation("main.py", 99, "this line is not in the ranking"),
                LocationExplanation("main.py", 2, "the real suspect"),
            ]

    results = locate_and_explain(spectrum, snapshot, Rogue())
    assert {r.location.line for r in results} == {1, 2}
    explanation_by_line = {r.location.line: r.explanation for r in results}
    assert explanation_by_line[2] == "the real suspect"
    # line 1 got no provider text, so it takes the count template
    assert "covered by" in explanation_by_line[1]


def test_provider_offline_uses_count_template():
    spectrum = spectrum_from(
        [("f1", "fail", [("main.py", 1)]), ("p1", "pass", [("main.py", 1)])]
    )
    snapshot = snap(**{"main.py": "a = 1\n"})

    class Offline(StubProvider):
        def explain_locations(self, ctx):
            raise ProviderUnavailable("offline")

    results = locate_and_explain(spectrum, snapshot, Offline())
    assert results[0].explanation.endswith("covered by 1 failing / 1 passing tests.")


def test_locate_requires_failing_tests():
    spectrum = spectrum_from([("p1", "pass", [("main.py", 1)])])
    with pytest.raises(NoFailingTests):
        locate_and_explain(spectrum, snap(**{"main.py": "a = 1\n"}), StubProvider())


def test_visualizer_url_percent_encodes():
    url = visualizer_url(snap(**{"main.py": "print(1)"}), "main.py")
    assert "print%281%29" in url
    assert url.startswith("https://pythontutor.com/")


def test_visualizer_url_deterministic():
    snapshot = snap(**{"main.py": "x = [1, 2]\nprint(x)\n"})
    assert visualizer_url(snapshot, "main.py") == visualizer_url(snapshot, "main.py")


def test_visualizer_url_too_large():
    big = "x = 1\n" * 10000
    with pytest.raises(SourceTooLarge):
        visualizer_url(snap(**{"main.py": big}), "main.py")


def test_pseudocode_reflects_control_structure():
    reference = (
        "def total(values):\n"
        "    acc = 0\n"
        "    for v in values:\n"
        "        if v > 0:\n"
        "            acc += v\n"
        "    return acc\n"
    )
    exercise = ExerciseSpec(statement="Sum the positive values.", reference_solution=reference)
    text = pseudocode(exercise, StubProvider())
    assert "Loop with v over values" in text
    assert "If v > 0" in text
    assert text.splitlines()[0].startswith("1. ")


def test_pseudocode_falls_back_to_statement():
    exercise = ExerciseSpec(statement="Read the input. Compute the answer. Print it.")
    text = pseudocode(exercise, StubProvider())
    assert [l.split(" ", 1)[0] for l in text.splitlines()] == ["1.", "2.", "3."]


def test_pseudocode_requires_statement():
    with pytest.raises(ConfigInvalid):
        pseudocode(ExerciseSpec(statement="   "), StubProvider())


def test_pseudocode_offline_falls_back():
    class Offline(StubProvider):
        def pseudocode(self, ctx):
            raise ProviderUnavailable("offline")

    exercise = ExerciseSpec(statement="Do the thing. Then stop.")
    assert pseudocode(exercise, Offline()).splitlines()[0] == "1. Do the thing."
