"""CLI contract: subcommands, output shapes, exit codes."""

import json

import pytest

from codehinter.cli import main
from codehinter.sbfl import rank, top_k
from codehinter.trace import parse_trace, serialize_trace

from tests.conftest import corpus_exercises, materialize_exercise


@pytest.fixture
def green_project(tmp_path):
    exercise = corpus_exercises()["07_factorial"]
    exercise.materialize(str(tmp_path / "proj"), None)
    return tmp_path / "proj"


@pytest.fixture
def buggy_project(tmp_path):
    exercise = corpus_exercises()["03_binary_search"]
    exercise.materialize(str(tmp_path / "proj"), "v1")
    return tmp_path / "proj"


def test_test_green_exit_zero(green_project, capsys):
    assert main(["test", "--project", str(green_project)]) == 0
    out = capsys.readouterr().out
    assert "passed=4 failed=0" in out


def test_test_failing_summary(buggy_project, capsys):
    assert main(["test", "--project", str(buggy_project)]) == 0
    out = capsys.readouterr().out
    assert "failed=3" in out
    assert "FAIL" in out


def test_locate_rows_match_core(buggy_project, tmp_path, capsys):
    from codehinter.runner import ProjectConfig, run_end_to_end

    config = ProjectConfig.load(str(buggy_project))
    _, spectrum, _ = run_end_to_end(config)
    trace_path = tmp_path / "run.json"
    # reuse the spectrum through a trace file to exercise the --trace path
    from codehinter.trace import TraceFile

    trace_path.write_bytes(
        serialize_trace(
            TraceFile(spectrum=spectrum, created_at="2026-08-10T00:00:00+00:00", adapter="t")
        )
    )
    assert (
        main(["locate", "--trace", str(trace_path), "--formula", "ochiai", "--top", "3"]) == 0
    )
    out_lines = capsys.readouterr().out.strip().splitlines()
    assert len(out_lines) == 3
    expected = top_k(rank(spectrum, "ochiai"), 3)
    for line, (loc, score) in zip(out_lines, expected):
        file, lineno, shown = line.split("\t")
        assert (file, int(lineno)) == (loc.file, loc.line)
        assert shown == f"{score:.6f}"


def test_locate_green_trace_is_domain_error(green_project, capsys):
    assert main(["locate", "--project", str(green_project)]) == 1
    assert "no_failing_tests" in capsys.readouterr().err


def test_quiz_answer_roundtrip(buggy_project, capsys):
    assert main(["quiz", "--project", str(buggy_project), "--answer", "0"]) == 0
    out = capsys.readouterr().out
    assert "[0]" in out and "[2]" in out
    assert ("correct!" in out) or ("incorrect." in out)


def test_prints_renders_marked_lines(buggy_project, capsys):
    assert main(["prints", "--project", str(buggy_project)]) == 0
    out = capsys.readouterr().out
    assert "[ch-print:" in out


def test_diff_solution(buggy_project, capsys):
    assert main(["diff", "--project", str(buggy_project), "--solution"]) == 0
    captured = capsys.readouterr()
    assert "-    while lo < hi:" in captured.out
    assert "+    while lo <= hi:" in captured.out


def test_report_roundtrip(tmp_path, capsys):
    from codehinter.session.service import SessionService

    _, config, _, _, _ = materialize_exercise("03_binary_search", tmp_path / "proj")
    service = SessionService(str(tmp_path / "data"))
    sid = service.create(config).session_id
    service.run_e2e(sid)
    service.locate(sid)
    assert (
        main(["report", "--data-dir", str(tmp_path / "data"), "--session", sid, "--json"]) == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"]["run_e2e"] == 1
    assert payload["counts"]["locate"] == 1
    assert payload["quiz_accuracy"] is None


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["locate", "--nonsense"])
    assert exc.value.code == 2


def test_missing_project_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["test"])
    assert exc.value.code == 2
