/** Fixture server responses, shaped exactly like the HTTP API emits them. */

import type {
  PrintPlanResponse,
  QuizCardResponse,
  SessionResponse,
} from "../src/types.js";

export function failedSession(): SessionResponse {
  return {
    session_id: "abc123",
    seq: 1,
    state: "TESTS_FAILED",
    report: {
      passed: 3,
      failed: 3,
      errored: 0,
      failing: [
        {
          test_id: "tests/test_main.py::test_found_first",
          outcome: "fail",
          message: "expected 0, got -1",
        },
        {
          test_id: "tests/test_main.py::test_found_last",
          outcome: "fail",
          message: "expected 2, got -1",
        },
        {
          test_id: "tests/test_main.py::test_singleton",
          outcome: "fail",
          message: "expected 0, got -1",
        },
      ],
      syntax_error: null,
    },
    snapshot_hash: "aa11",
    has_active_quiz: false,
    has_active_plan: false,
    runs: 1,
    helper_used: false,
  };
}

export function passedSession(): SessionResponse {
  return {
    ...failedSession(),
    state: "TESTS_PASSED",
    report: { passed: 6, failed: 0, errored: 0, failing: [], syntax_error: null },
  };
}

export function syntaxSession(): SessionResponse {
  return {
    ...failedSession(),
    state: "SYNTAX_ERROR",
    report: {
      passed: 0,
      failed: 0,
      errored: 0,
      failing: [],
      syntax_error: { file: "main.py", line: 1, message: "'(' was never closed" },
    },
  };
}

export function quizCard(): QuizCardResponse {
  return {
    question: "3 test(s) fail. Which change fixes the code?",
    options: [
      {
        index: 0,
        proposal_id: "p0",
        edits: [
          { file: "main.py", line: 3, old_text: "    while lo < hi:", new_text: "    while lo <= hi:" },
        ],
      },
      {
        index: 1,
        proposal_id: "p1",
        edits: [
          { file: "main.py", line: 3, old_text: "    while lo < hi:", new_text: "    while lo > hi:" },
        ],
      },
      {
        index: 2,
        proposal_id: "p2",
        edits: [
          { file: "main.py", line: 11, old_text: "    return -1", new_text: "    return 0" },
        ],
      },
    ],
  };
}

export function printPlan(): PrintPlanResponse {
  return {
    insertions: [
      { marker: 1, file: "main.py", line_after: 4, variable: "mid", reason: "assigned on a suspicious line" },
      { marker: 2, file: "main.py", line_after: 8, variable: "lo", reason: "loop bound" },
    ],
    rendered: {
      "main.py": {
        text: [
          "def binary_search(items, target):",
          "    lo, hi = 0, len(items) - 1",
          "    while lo < hi:",
          "        mid = (lo + hi) // 2",
          '        print("[ch-print:1] mid =", repr(mid), file=__import__("sys").stderr)',
          "        if items[mid] == target:",
          "            return mid",
          "        if items[mid] < target:",
          "            lo = mid + 1",
          '            print("[ch-print:2] lo =", repr(lo), file=__import__("sys").stderr)',
          "        else:",
          "            hi = mid - 1",
          "    return -1",
          "",
        ].join("\n"),
        inserted_lines: [5, 10],
      },
    },
    base_hashes: { "main.py": "aa11" },
  };
}
