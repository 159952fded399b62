/** Pure view computation: server responses in, render model out.
 *
 * Button enablement mirrors the server's transition table exactly, so the UI
 * never calls an endpoint the current state forbids. The view model never
 * holds the quiz's correct index; verdicts come back from the answer
 * round-trip.
 */

import type {
  AnswerResponse,
  DebugOutputResponse,
  LocatedLine,
  PrintPlanResponse,
  ProposalBody,
  QuizCardResponse,
  SessionResponse,
} from "./types.js";

export interface UiState {
  pendingChoice: number | null;
  verdict: AnswerResponse | null;
  quizLocked: boolean;
  showDiff: boolean;
  offline: boolean;
  staleCard: boolean;
  seqWarning: boolean;
  busy: boolean;
}

export function initialUiState(): UiState {
  return {
    pendingChoice: null,
    verdict: null,
    quizLocked: false,
    showDiff: false,
    offline: false,
    staleCard: false,
    seqWarning: false,
    busy: false,
  };
}

export interface HelperEnablement {
  locate: boolean;
  quiz: boolean;
  prints: boolean;
  visualizer: boolean;
}

export interface FailingRow {
  testId: string;
  outcome: string;
  /** first line of the assertion text: the expected-vs-actual rendering */
  detail: string;
}

export interface QuizOptionView {
  index: number;
  proposalId: string;
  label: string;
  selected: boolean;
}

export interface QuizView {
  question: string;
  options: QuizOptionView[];
  locked: boolean;
  verdict: { isCorrect: boolean; explanation: string } | null;
}

export interface PreviewLine {
  number: number;
  text: string;
  inserted: boolean;
}

export interface PrintsView {
  files: { file: string; lines: PreviewLine[] }[];
  reasons: string[];
  applyProposal: ProposalBody | null;
}

export interface Banner {
  kind: "success" | "syntax" | "offline" | "stale" | "seq" | null;
  text: string;
}

export interface ViewModel {
  stateLabel: string;
  runEnabled: boolean;
  helpers: HelperEnablement;
  solutionEnabled: boolean;
  pseudocodeEnabled: boolean;
  chatEnabled: boolean;
  banner: Banner;
  failing: FailingRow[];
  summary: string;
  highlights: LocatedLine[];
  quiz: QuizView | null;
  prints: PrintsView | null;
  debug: DebugOutputResponse | null;
  diff: string | null;
  busy: boolean;
}

function helperEnablement(state: SessionResponse["state"]): HelperEnablement {
  return {
    locate: state === "TESTS_FAILED",
    quiz: state === "TESTS_FAILED" || state === "SYNTAX_ERROR",
    prints: state === "TESTS_FAILED",
    visualizer: state === "TESTS_FAILED",
  };
}

function banner(session: SessionResponse, ui: UiState): Banner {
  if (ui.offline) {
    return { kind: "offline", text: "Connection lost; retrying..." };
  }
  if (ui.seqWarning) {
    return { kind: "seq", text: "This session changed elsewhere; refresh to catch up." };
  }
  if (ui.staleCard) {
    return { kind: "stale", text: "The quiz is out of date; request a new one." };
  }
  if (session.state === "TESTS_PASSED") {
    return { kind: "success", text: "All tests pass. Well done!" };
  }
  if (session.state === "SYNTAX_ERROR" && session.report?.syntax_error) {
    const err = session.report.syntax_error;
    return { kind: "syntax", text: `Syntax error in ${err.file}:${err.line}: ${err.message}` };
  }
  return { kind: null, text: "" };
}

function failingRows(session: SessionResponse): FailingRow[] {
  if (!session.report) {
    return [];
  }
  return session.report.failing.map((f) => ({
    testId: f.test_id,
    outcome: f.outcome,
    detail: (f.message ?? "").split("\n")[0],
  }));
}

function summaryLine(session: SessionResponse): string {
  const report = session.report;
  if (!report) {
    return "Not run yet. Press End-to-End Test.";
  }
  if (report.syntax_error) {
    return "The code does not parse.";
  }
  let text = `passed=${report.passed} failed=${report.failed}`;
  if (report.errored) {
    text += ` errored=${report.errored}`;
  }
  return text;
}

export function editLabel(edit: {
  file: string;
  line: number;
  old_text: string;
  new_text: string | null;
}): string {
  const before = edit.old_text.trim();
  const after = edit.new_text === null ? "<delete this line>" : edit.new_text.trim();
  return `${edit.file}:${edit.line}  ${before}  →  ${after}`;
}

export function quizView(card: QuizCardResponse | null, ui: UiState): QuizView | null {
  if (!card) {
    return null;
  }
  return {
    question: card.question,
    options: card.options.map((option) => ({
      index: option.index,
      proposalId: option.proposal_id,
      label: option.edits.map(editLabel).join(" ; "),
      selected: ui.pendingChoice === option.index,
    })),
    locked: ui.quizLocked,
    verdict: ui.verdict
      ? { isCorrect: ui.verdict.is_correct, explanation: ui.verdict.explanation }
      : null,
  };
}

export function printsView(plan: PrintPlanResponse | null): PrintsView | null {
  if (!plan) {
    return null;
  }
  const files = Object.entries(plan.rendered).map(([file, rendered]) => {
    const inserted = new Set(rendered.inserted_lines);
    const lines = rendered.text
      .split("\n")
      .map((text, i) => ({ number: i + 1, text, inserted: inserted.has(i + 1) }));
    if (lines.length && lines[lines.length - 1].text === "") {
      lines.pop(); // trailing newline artifact
    }
    return { file, lines };
  });
  return {
    files,
    reasons: plan.insertions.map(
      (ins) => `${ins.file}:${ins.line_after} ${ins.variable} - ${ins.reason}`,
    ),
    applyProposal: plan.apply_proposal ?? null,
  };
}

export function computeView(
  session: SessionResponse,
  ui: UiState,
  extras: {
    highlights?: LocatedLine[];
    card?: QuizCardResponse | null;
    plan?: PrintPlanResponse | null;
    debug?: DebugOutputResponse | null;
    diff?: string | null;
  } = {},
): ViewModel {
  const helpers = helperEnablement(session.state);
  return {
    stateLabel: session.state,
    runEnabled: !ui.busy,
    helpers: ui.busy
      ? { locate: false, quiz: false, prints: false, visualizer: false }
      : helpers,
    solutionEnabled: !ui.busy && session.state === "TESTS_FAILED",
    pseudocodeEnabled:
      session.state === "CREATED" ||
      session.state === "TESTS_FAILED" ||
      session.state === "SYNTAX_ERROR",
    chatEnabled: !ui.busy,
    banner: banner(session, ui),
    failing: failingRows(session),
    summary: summaryLine(session),
    highlights: extras.highlights ?? [],
    quiz: quizView(extras.card ?? null, ui),
    prints: printsView(extras.plan ?? null),
    debug: extras.debug ?? null,
    diff: ui.showDiff ? (extras.diff ?? null) : null,
    busy: ui.busy,
  };
}
