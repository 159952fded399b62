"""Adapter entry point: run pytest on a project, write a conforming trace.

Exits 0 whenever a trace file was written, including runs with failing tests
or subject syntax errors. Nonzero exit is reserved for infrastructure
failures (unwritable trace, pytest internal error), matching the runner's
adapter contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone

import pytest

from codehinter_pytest_adapter import ADAPTER_NAME, SCHEMA_VERSION
from codehinter_pytest_adapter.plugin import TraceCollector

# pytest exit codes that indicate infrastructure trouble rather than verdicts
_INFRA_EXITS = {2, 3, 4}


def check_syntax(root: str, subjects: list[str]):
    for rel in subjects:
        path = os.path.join(root, rel)
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
        try:
            compile(source, path, "exec")
        except SyntaxError as exc:
            return {"file": rel, "line": exc.lineno or 1, "message": exc.msg or "syntax error"}
    return None


def write_trace(out_path: str, subjects: list[str], records: list[dict], syntax_error) -> None:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "adapter": ADAPTER_NAME,
        "spectrum": {
            "subject_files": list(subjects),
            "syntax_error": syntax_error,
            "records": records,
        },
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    tmp_path = out_path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    os.replace(tmp_path, out_path)


def run(root: str, subjects: list[str], trace_out: str) -> int:
    sys.dont_write_bytecode = True
    root = os.path.abspath(root)
    if not os.path.isdir(root):
        print(f"project root does not exist: {root}", file=sys.stderr)
        return 3
    for rel in subjects:
        if not os.path.isfile(os.path.join(root, rel)):
            print(f"subject file does not exist: {rel}", file=sys.stderr)
            return 3

    syntax_error = check_syntax(root, subjects)
    records: list[dict] = []
    if syntax_error is None:
        # subject modules import by bare name, as if running pytest from the
        # project root
        sys.path.insert(0, root)
        collector = TraceCollector(root, subjects)
        exit_code = pytest.main(
            [root, "-q", "-p", "no:cacheprovider", "--rootdir", root, "--continue-on-collection-errors"],
            plugins=[collector],
        )
        if int(exit_code) in _INFRA_EXITS:
            print(f"pytest infrastructure failure (exit {int(exit_code)})", file=sys.stderr)
            return 3
        records = collector.records()

    try:
        write_trace(trace_out, subjects, records, syntax_error)
    except OSError as exc:
        print(f"cannot write trace: {exc}", file=sys.stderr)
        return 3
    return 0


def console_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="codehinter-pytest-adapter", description=__doc__)
    parser.add_argument("--project-root", required=True)
    parser.add_argument("--trace-out", required=True)
    parser.add_argument("--subject", action="append", required=True, dest="subjects")
    args = parser.parse_args(argv)
    return run(args.project_root, args.subjects, args.trace_out)


if __name__ == "__main__":
    sys.exit(console_main())
