"""Adapter conformance: exact per-test coverage, verdict fidelity, schema validity.

The emitted trace is checked against the host's own parser (the wire format
is the only contract between the two packages).
"""

import json
import subprocess
import sys
import textwrap

import pytest

from codehinter.trace import parse_trace, serialize_trace

SUBJECT = textwrap.dedent(
    """\
    def square(x):
        return x * x


    def sign(x):
        if x < 0:
            return -1
        if x > 0:
            return 1
        return 0
    """
)

FIVE_TESTS = textwrap.dedent(
    """\
    from main import sign, square


    def test_square():
        assert square(3) == 9, f"expected 9, got {square(3)}"


    def test_sign_negative():
        assert sign(-5) == -1, f"expected -1, got {sign(-5)}"


    def test_sign_positive():
        assert sign(4) == 1, f"expected 1, got {sign(4)}"


    def test_sign_zero():
        assert sign(0) == 0, f"expected 0, got {sign(0)}"


    def test_square_wrong():
        assert square(2) == 5, f"expected 5, got {square(2)}"
    """
)

KNOWN_COVERAGE = {
    "test_square": [2],
    "test_sign_negative": [6, 7],
    "test_sign_positive": [6, 8, 9],
    "test_sign_zero": [6, 8, 10],
    "test_square_wrong": [2],
}


def make_project(tmp_path, subject=SUBJECT, tests=FIVE_TESTS):
    root = tmp_path / "proj"
    root.mkdir()
    (root / "main.py").write_text(subject)
    tests_dir = root / "tests"
    tests_dir.mkdir()
    (tests_dir / "test_main.py").write_text(tests)
    return root


def run_adapter(root, trace_out, env=None):
    cmd = [
        sys.executable,
        "-m",
        "codehinter_pytest_adapter.main",
        "--project-root",
        str(root),
        "--trace-out",
        str(trace_out),
        "--subject",
        "main.py",
    ]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


@pytest.fixture(scope="module")
def five_test_trace(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("adapter")
    root = make_project(tmp)
    trace_out = tmp / "trace.json"
    proc = run_adapter(root, trace_out)
    assert proc.returncode == 0, proc.stderr
    return trace_out.read_bytes()


def test_trace_is_schema_valid(five_test_trace):
    trace = parse_trace(five_test_trace)
    assert len(trace.spectrum.records) == 5
    assert trace.adapter.startswith("codehinter-pytest-adapter/")


def test_emitted_trace_is_canonical(five_test_trace):
    assert serialize_trace(parse_trace(five_test_trace)) == five_test_trace


def test_per_test_coverage_matches_known_sets(five_test_trace):
    trace = parse_trace(five_test_trace)
    got = {
        rec.test_id.split("::")[-1]: [loc.line for loc in rec.covered]
        for rec in trace.spectrum.records
    }
    assert got == KNOWN_COVERAGE


def test_outcome_fidelity(five_test_trace):
    trace = parse_trace(five_test_trace)
    by_name = {rec.test_id.split("::")[-1]: rec for rec in trace.spectrum.records}
    assert by_name["test_square"].outcome == "pass"
    assert by_name["test_square_wrong"].outcome == "fail"
    assert "expected 5, got 4" in by_name["test_square_wrong"].message


def test_syntax_error_fixture(tmp_path):
    root = make_project(tmp_path, subject="def square(x:\n    return x * x\n")
    trace_out = tmp_path / "trace.json"
    proc = run_adapter(root, trace_out)
    assert proc.returncode == 0, proc.stderr
    trace = parse_trace(trace_out.read_bytes())
    assert trace.spectrum.syntax_error is not None
    assert trace.spectrum.syntax_error.file == "main.py"
    assert trace.spectrum.records == ()


def test_crashing_test_becomes_error(tmp_path):
    tests = FIVE_TESTS + "\n\ndef test_boom():\n    raise RuntimeError('boom')\n"
    root = make_project(tmp_path, tests=tests)
    trace_out = tmp_path / "trace.json"
    assert run_adapter(root, trace_out).returncode == 0
    trace = parse_trace(trace_out.read_bytes())
    by_name = {rec.test_id.split("::")[-1]: rec for rec in trace.spectrum.records}
    assert by_name["test_boom"].outcome == "error"
    assert "RuntimeError" in by_name["test_boom"].message


def test_subject_crashing_at_import_is_not_green(tmp_path):
    root = make_project(tmp_path, subject="raise RuntimeError('import boom')\n")
    trace_out = tmp_path / "trace.json"
    assert run_adapter(root, trace_out).returncode == 0
    trace = parse_trace(trace_out.read_bytes())
    assert any(rec.outcome == "error" for rec in trace.spectrum.records)


def test_debug_file_attribution(tmp_path):
    subject = (
        "import sys\n"
        "\n"
        "\n"
        "def noisy(x):\n"
        "    print('[ch-print:1] x =', repr(x), file=sys.stderr)\n"
        "    return x\n"
    )
    tests = (
        "from main import noisy\n\n\n"
        "def test_a():\n    assert noisy(1) == 1\n\n\n"
        "def test_b():\n    assert noisy(2) == 2\n"
    )
    root = make_project(tmp_path, subject=subject, tests=tests)
    trace_out = tmp_path / "trace.json"
    debug_file = tmp_path / "debug.jsonl"
    import os

    env = dict(os.environ, CODEHINTER_DEBUG_FILE=str(debug_file))
    assert run_adapter(root, trace_out, env=env).returncode == 0
    entries = [json.loads(l) for l in debug_file.read_text().splitlines()]
    assert {e["test_id"].split("::")[-1] for e in entries} == {"test_a", "test_b"}
    assert all(e["line"].startswith("[ch-print:1]") for e in entries)


def test_missing_subject_is_infrastructure_failure(tmp_path):
    root = make_project(tmp_path)
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "codehinter_pytest_adapter.main",
            "--project-root",
            str(root),
            "--trace-out",
            str(tmp_path / "t.json"),
            "--subject",
            "missing.py",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode != 0


def test_works_through_the_runner(tmp_path):
    """End-to-end through the host orchestrator with this adapter."""
    from codehinter.runner import ProjectConfig, run_end_to_end

    root = make_project(tmp_path)
    config = ProjectConfig(
        root=str(root),
        subject_files=("main.py",),
        adapter_command=(
            sys.executable,
            "-m",
            "codehinter_pytest_adapter.main",
            "--project-root",
            "{PROJECT_ROOT}",
            "--trace-out",
            "{TRACE_OUT}",
            "--subject",
            "main.py",
        ),
    )
    report, spectrum, _ = run_end_to_end(config)
    assert report.passed == 4 and report.failed == 1
    assert spectrum.total_failing == 1
