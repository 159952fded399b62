"""Bundled test-runner adapter: plain-assert test functions, zero dependencies.

Runs every ``test_*`` function found in a project's test files, tracing which
subject-file lines each test executes, and writes a trace file conforming to
the wire format in :mod:`codehinter.trace`. Used as the default adapter for
the exercise corpus and fixtures; real projects should point the runner at a
full-featured adapter instead.

Invocation (the runner substitutes the placeholders):

    python -m codehinter.builtin_adapter --project-root {PROJECT_ROOT} \
        --trace-out {TRACE_OUT} --subject main.py

Exit code is 0 whenever a trace was written, including runs with failing
tests or subject syntax errors; nonzero means infrastructure failure only.

When the ``CODEHINTER_DEBUG_FILE`` environment variable is set, per-test
stderr lines are appended there as JSON lines ``{"test_id":..., "line":...}``
so instrumented runs can attribute diagnostic output to tests.
"""

from __future__ import annotations

import argparse
import importlib.util
import io
import json
import os
import signal
import sys
import traceback
from contextlib import redirect_stderr

from codehinter.locations import SourceLocation
from codehinter.trace import (
    CoverageSpectrum,
    SyntaxErrorInfo,
    TestRecord,
    TraceFile,
    serialize_trace,
    utc_now_rfc3339,
)

ADAPTER_NAME = "codehinter-builtin/0.1"
DEBUG_FILE_ENV = "CODEHINTER_DEBUG_FILE"
MESSAGE_LIMIT = 2000
DEFAULT_TEST_TIMEOUT = 5.0


class TestTimedOut(Exception):
    __test__ = False


def _call_with_timeout(fn, seconds: float):
    """Run one test under a wall-clock alarm so an infinite loop in student
    code becomes an 'error' record instead of hanging the whole run."""
    if not seconds or not hasattr(signal, "setitimer"):
        fn()
        return

    def _alarm(_signum, _frame):
        raise TestTimedOut()

    previous = signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        fn()
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


class LineTracer:
    """Records (relative file, line) pairs executed in subject frames."""

    def __init__(self, subject_by_abspath: dict[str, str]):
        self.subject_by_abspath = subject_by_abspath
        self.lines: set[tuple[str, int]] = set()

    def _local(self, frame, event, arg):
        if event == "line":
            rel = self.subject_by_abspath.get(frame.f_code.co_filename)
            if rel is not None:
                self.lines.add((rel, frame.f_lineno))
        return self._local

    def _global(self, frame, event, arg):
        if event == "call" and frame.f_code.co_filename in self.subject_by_abspath:
            return self._local
        return None

    def __enter__(self):
        self.lines.clear()
        sys.settrace(self._global)
        return self

    def __exit__(self, *exc):
        sys.settrace(None)
        return False


def _truncate(message: str) -> str:
    if len(message) > MESSAGE_LIMIT:
        return message[: MESSAGE_LIMIT - 3] + "..."
    return message


def _traceback_tail(limit: int = 6) -> str:
    lines = traceback.format_exc().splitlines()
    return "\n".join(lines[-limit:])


def check_syntax(root: str, subjects: list[str]) -> SyntaxErrorInfo | None:
    for rel in subjects:
        path = os.path.join(root, rel)
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
        try:
            compile(source, path, "exec")
        except SyntaxError as exc:
            return SyntaxErrorInfo(rel, exc.lineno or 1, exc.msg or "syntax error")
    return None


def discover_test_files(root: str, tests_dir: str) -> list[str]:
    candidates = []
    search = os.path.join(root, tests_dir)
    if not os.path.isdir(search):
        search = root
    for name in sorted(os.listdir(search)):
        if name.startswith("test_") and name.endswith(".py"):
            candidates.append(os.path.join(search, name))
    return candidates


def _import_test_module(path: str, index: int):
    name = f"_codehinter_tests_{index}_{os.path.splitext(os.path.basename(path))[0]}"
    spec = importlib.util.spec_from_file_location(name, path)
    module = importlib.util.module_from_spec(spec)
    sys.modules[name] = module
    spec.loader.exec_module(module)
    return module


def _append_debug_lines(debug_file: str, test_id: str, captured: str) -> None:
    with open(debug_file, "a", encoding="utf-8") as fh:
        for line in captured.splitlines():
            fh.write(json.dumps({"test_id": test_id, "line": line}) + "\n")


def run_tests(
    root: str,
    subjects: list[str],
    tests_dir: str,
    test_timeout: float = DEFAULT_TEST_TIMEOUT,
) -> list[TestRecord]:
    subject_by_abspath = {os.path.abspath(os.path.join(root, rel)): rel for rel in subjects}
    debug_file = os.environ.get(DEBUG_FILE_ENV)
    records: list[TestRecord] = []
    modules_before = set(sys.modules)
    sys.path.insert(0, root)
    try:
        for index, path in enumerate(discover_test_files(root, tests_dir)):
            rel_file = os.path.relpath(path, root).replace(os.sep, "/")
            try:
                module = _import_test_module(path, index)
            except Exception:
                records.append(
                    TestRecord.create(
                        f"{rel_file}::<import>", "error", _truncate(_traceback_tail())
                    )
                )
                continue
            tests = [
                (name, fn)
                for name, fn in vars(module).items()
                if name.startswith("test_") and callable(fn)
            ]
            for name, fn in tests:
                test_id = f"{rel_file}::{name}"
                tracer = LineTracer(subject_by_abspath)
                stderr_buf = io.StringIO()
                outcome, message = "pass", None
                try:
                    with redirect_stderr(stderr_buf), tracer:
                        _call_with_timeout(fn, test_timeout)
                except AssertionError as exc:
                    outcome = "fail"
                    message = _truncate(str(exc) or "assertion failed")
                except TestTimedOut:
                    outcome = "error"
                    message = f"test timed out after {test_timeout:g}s"
                except Exception:
                    outcome = "error"
                    message = _truncate(_traceback_tail())
                finally:
                    sys.settrace(None)
                if debug_file:
                    _append_debug_lines(debug_file, test_id, stderr_buf.getvalue())
                covered = [SourceLocation(f, n) for f, n in tracer.lines]
                records.append(TestRecord.create(test_id, outcome, message, covered))
    finally:
        sys.path.remove(root)
        # drop modules this run loaded so repeated in-process invocations on
        # different project roots never see each other's code
        for name in set(sys.modules) - modules_before:
            del sys.modules[name]
    return records


def write_trace_atomic(trace: TraceFile, out_path: str) -> None:
    tmp_path = out_path + ".tmp"
    with open(tmp_path, "wb") as fh:
        fh.write(serialize_trace(trace))
    os.replace(tmp_path, out_path)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="codehinter-builtin-adapter", description=__doc__)
    parser.add_argument("--project-root", required=True)
    parser.add_argument("--trace-out", required=True)
    parser.add_argument("--subject", action="append", required=True, dest="subjects")
    parser.add_argument("--tests-dir", default="tests")
    parser.add_argument("--test-timeout", type=float, default=DEFAULT_TEST_TIMEOUT)
    args = parser.parse_args(argv)

    sys.dont_write_bytecode = True
    root = os.path.abspath(args.project_root)
    try:
        if not os.path.isdir(root):
            raise OSError(f"project root does not exist: {root}")
        for rel in args.subjects:
            if not os.path.isfile(os.path.join(root, rel)):
                raise OSError(f"subject file does not exist: {rel}")

        syntax_error = check_syntax(root, args.subjects)
        if syntax_error is not None:
            spectrum = CoverageSpectrum((), tuple(args.subjects), syntax_error)
        else:
            records = run_tests(root, args.subjects, args.tests_dir, args.test_timeout)
            spectrum = CoverageSpectrum(tuple(records), tuple(args.subjects), None)
        trace = TraceFile(spectrum=spectrum, created_at=utc_now_rfc3339(), adapter=ADAPTER_NAME)
        write_trace_atomic(trace, args.trace_out)
    except Exception as exc:
        print(f"adapter infrastructure failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
