"""pytest plugin collecting per-test subject-file coverage and verdicts.

The line tracer restarts around every test call phase, so each record carries
exactly the subject lines that test executed. Assertion failures map to
"fail", any other exception (in setup, call, or teardown) to "error";
skipped tests produce no record. Captured stderr is forwarded per test to
the debug file named by CODEHINTER_DEBUG_FILE, which lets the host attribute
diagnostic prints to tests.
"""

from __future__ import annotations

import json
import os
import sys

import pytest

MESSAGE_LIMIT = 2000
DEBUG_FILE_ENV = "CODEHINTER_DEBUG_FILE"


class LineTracer:
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

    def start(self):
        self.lines = set()
        sys.settrace(self._global)

    def stop(self):
        sys.settrace(None)


def _truncate(message: str) -> str:
    if len(message) > MESSAGE_LIMIT:
        return message[: MESSAGE_LIMIT - 3] + "..."
    return message


class TraceCollector:
    """Accumulates one record per executed test."""

    def __init__(self, root: str, subjects: list[str]):
        self.root = root
        self.subject_by_abspath = {
            os.path.abspath(os.path.join(root, rel)): rel for rel in subjects
        }
        self.covered: dict[str, set[tuple[str, int]]] = {}
        self.verdicts: dict[str, tuple[str, str | None]] = {}
        self.order: list[str] = []
        self.debug_file = os.environ.get(DEBUG_FILE_ENV)
        self._tracer = LineTracer(self.subject_by_abspath)

    def _note(self, nodeid: str, outcome: str, message: str | None):
        if nodeid not in self.verdicts:
            self.order.append(nodeid)
            self.verdicts[nodeid] = (outcome, message)
        else:
            previous = self.verdicts[nodeid][0]
            # a later failure (e.g. teardown error) overrides an earlier pass
            if previous == "pass" and outcome != "pass":
                self.verdicts[nodeid] = (outcome, message)

    @pytest.hookimpl(hookwrapper=True)
    def pytest_runtest_call(self, item):
        self._tracer.start()
        try:
            yield
        finally:
            self._tracer.stop()
            self.covered[item.nodeid] = set(self._tracer.lines)

    @pytest.hookimpl(hookwrapper=True)
    def pytest_runtest_makereport(self, item, call):
        outcome = yield
        report = outcome.get_result()
        if report.skipped:
            return
        if call.excinfo is None:
            if call.when == "call":
                self._note(item.nodeid, "pass", None)
            return
        if call.excinfo.errisinstance(AssertionError) and call.when == "call":
            message = str(call.excinfo.value) or str(report.longrepr)
            self._note(item.nodeid, "fail", _truncate(message))
        else:
            tail = str(report.longrepr).splitlines()[-6:]
            self._note(item.nodeid, "error", _truncate("\n".join(tail)))

    @pytest.hookimpl
    def pytest_runtest_logreport(self, report):
        if report.when == "call" and self.debug_file and report.capstderr:
            with open(self.debug_file, "a", encoding="utf-8") as fh:
                for line in report.capstderr.splitlines():
                    fh.write(json.dumps({"test_id": report.nodeid, "line": line}) + "\n")

    @pytest.hookimpl
    def pytest_collectreport(self, report):
        # a test module that fails to import (often the student's code crashing
        # at import time) must not produce a silently green empty trace
        if report.failed:
            tail = str(report.longrepr).splitlines()[-6:]
            self._note(f"{report.nodeid}::<collect>", "error", _truncate("\n".join(tail)))

    def records(self) -> list[dict]:
        out = []
        for nodeid in self.order:
            outcome, message = self.verdicts[nodeid]
            covered = sorted(self.covered.get(nodeid, set()))
            out.append(
                {
                    "test_id": nodeid,
                    "outcome": outcome,
                    "message": message,
                    "covered": [{"file": f, "line": n} for f, n in covered],
                }
            )
        return out
