"""Command-line interface.

Subcommands map 1:1 onto core operations; there is no logic here beyond
argument parsing and rendering. Exit codes: 0 success, 1 domain error,
2 usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys

from codehinter import __version__
from codehinter.errors import CodeHinterError, NoOpReveal


def _project_config(args):
    from codehinter.runner import ProjectConfig

    if not args.project:
        print("this command needs --project DIR", file=sys.stderr)
        raise SystemExit(2)
    return ProjectConfig.load(args.project)


def _provider():
    from codehinter.assist.provider import default_provider

    return default_provider()


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_jsonable(), indent=2))
        return
    if report.has_syntax_error:
        err = report.syntax_error
        print(f"syntax error: {err.file}:{err.line}: {err.message}")
        return
    line = f"passed={report.passed} failed={report.failed}"
    if report.errored:
        line += f" errored={report.errored}"
    print(line)
    for failing in report.failing:
        print(f"  {failing.outcome.upper()} {failing.test_id}")
        if failing.message:
            first = failing.message.splitlines()[0]
            print(f"    {first}")


def cmd_test(args) -> int:
    from codehinter.runner import run_end_to_end

    report, _spectrum, _snapshot = run_end_to_end(_project_config(args))
    _print_report(report, args.json)
    return 0


def cmd_locate(args) -> int:
    from codehinter.sbfl import rank, top_k

    if args.trace:
        from codehinter.trace import parse_trace

        with open(args.trace, "rb") as fh:
            spectrum = parse_trace(fh.read()).spectrum
    elif args.project:
        from codehinter.runner import run_end_to_end

        _report, spectrum, _snapshot = run_end_to_end(_project_config(args))
    else:
        print("locate needs --trace or --project", file=sys.stderr)
        return 2
    ranking = rank(spectrum, args.formula)
    for loc, score in top_k(ranking, args.top):
        print(f"{loc.file}\t{loc.line}\t{score:.6f}")
    return 0


def cmd_quiz(args) -> int:
    from codehinter.assist.quiz import answer_quiz, make_quiz
    from codehinter.runner import run_end_to_end

    config = _project_config(args)
    _report, spectrum, snapshot = run_end_to_end(config)
    card = make_quiz(
        spectrum, snapshot, _provider(), config, max_candidates=args.max_candidates
    )
    if args.json:
        print(json.dumps(card.to_jsonable(), indent=2))
    else:
        print(card.question)
        for i, option in enumerate(card.options):
            edit = option.proposal.edits[0]
            print(f"  [{i}] {edit.file}:{edit.line}: {edit.old_text.strip()!r} -> "
                  f"{(edit.new_text or '<delete>').strip()!r}")
    if args.answer is not None:
        is_correct, explanation = answer_quiz(card, args.answer)
        print("correct!" if is_correct else "incorrect.")
        print(explanation)
    return 0


def cmd_prints(args) -> int:
    from codehinter.assist.prints import run_instrumented, suggest_prints
    from codehinter.runner import run_end_to_end

    config = _project_config(args)
    _report, spectrum, snapshot = run_end_to_end(config)
    plan = suggest_prints(spectrum, snapshot, _provider(), config)
    if args.json:
        print(json.dumps(plan.to_jsonable(), indent=2))
    else:
        for ins in plan.insertions:
            print(f"after {ins.file}:{ins.line_after} print {ins.variable}  # {ins.reason}")
        for rel, rendered in plan.rendered.items():
            print(f"--- instrumented {rel} ---")
            marked = set(rendered.inserted_lines)
            for n, line in enumerate(rendered.text.splitlines(), start=1):
                prefix = "+" if n in marked else " "
                print(f"{prefix} {line}")
    if args.run:
        output = run_instrumented(plan, config)
        print("--- debug output ---")
        for dline in output.lines:
            print(f"{dline.test_id}: {dline.text}")
    return 0


def cmd_diff(args) -> int:
    from codehinter.assist.patch import PatchProposal, apply_patch, reveal_solution
    from codehinter.runner import snapshot_source

    config = _project_config(args)
    snapshot = snapshot_source(config)
    if args.solution:
        print("note: this reveals the reference solution", file=sys.stderr)
        try:
            proposal = reveal_solution(
                config.exercise, snapshot, config.subject_files[0]
            )
        except NoOpReveal as exc:
            print(f"nothing to reveal: {exc}")
            return 0
    elif args.proposal:
        with open(args.proposal, "r", encoding="utf-8") as fh:
            proposal = PatchProposal.from_jsonable(json.load(fh))
    else:
        print("diff needs --solution or --proposal FILE", file=sys.stderr)
        return 2
    _after, diff = apply_patch(snapshot, proposal)
    sys.stdout.write(diff)
    return 0


def cmd_serve(args) -> int:
    from codehinter.http_api import serve

    serve(args.bind, args.data_dir, ui_dir=args.ui)
    return 0


def cmd_report(args) -> int:
    from codehinter.session.service import SessionService

    service = SessionService(args.data_dir)
    report = service.report_usage(args.session)
    if args.json:
        print(json.dumps(report.to_jsonable(), indent=2))
        return 0
    print(f"session {args.session}")
    for kind, count in sorted(report.counts.items()):
        if count:
            print(f"  {kind:<20} {count}")
    print(f"  distinct features    {report.distinct_features}")
    accuracy = report.quiz_accuracy
    print(f"  quiz accuracy        {'n/a' if accuracy is None else f'{accuracy:.0%}'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codehinter",
        description="Debugging assistant: run tests, rank suspicious lines, quiz fixes.",
    )
    parser.add_argument("--version", action="version", version=f"codehinter {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--project", help="project root directory")
    common.add_argument("--trace", help="path to a trace file")
    common.add_argument("--data-dir", default=".codehinter", help="session data directory")
    common.add_argument("--formula", default="ochiai",
                        choices=["tarantula", "ochiai", "dstar2", "op2"])
    common.add_argument("--top", type=int, default=3, help="how many ranked lines")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("test", parents=[common], help="run the end-to-end test")
    p.set_defaults(fn=cmd_test)
    p = sub.add_parser("locate", parents=[common], help="rank suspicious lines")
    p.set_defaults(fn=cmd_locate)
    p = sub.add_parser("quiz", parents=[common], help="generate a validated fix quiz")
    p.add_argument("--answer", type=int, help="answer the quiz with option N")
    p.add_argument("--max-candidates", type=int, default=16)
    p.set_defaults(fn=cmd_quiz)
    p = sub.add_parser("prints", parents=[common], help="suggest print statements")
    p.add_argument("--run", action="store_true", help="run the instrumented copy")
    p.set_defaults(fn=cmd_prints)
    p = sub.add_parser("diff", parents=[common], help="render a patch as a unified diff")
    p.add_argument("--solution", action="store_true", help="diff against the reference solution")
    p.add_argument("--proposal", help="patch proposal JSON file")
    p.set_defaults(fn=cmd_diff)
    p = sub.add_parser("serve", parents=[common], help="start the local HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8177")
    p.add_argument("--ui", help="directory of built UI assets to serve under /ui")
    p.set_defaults(fn=cmd_serve)
    p = sub.add_parser("report", parents=[common], help="feature-usage report for a session")
    p.add_argument("--session", required=True)
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CodeHinterError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
