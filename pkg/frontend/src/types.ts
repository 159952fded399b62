/** Wire types mirroring the codehinter HTTP API. */

export type SessionStateName =
  | "CREATED"
  | "SYNTAX_ERROR"
  | "TESTS_FAILED"
  | "TESTS_PASSED"
  | "SOLUTION_REVEALED";

export interface SyntaxErrorInfo {
  file: string;
  line: number;
  message: string;
}

export interface FailingTest {
  test_id: string;
  outcome: "fail" | "error";
  message: string | null;
}

export interface Report {
  passed: number;
  failed: number;
  errored: number;
  failing: FailingTest[];
  syntax_error: SyntaxErrorInfo | null;
}

export interface SessionResponse {
  session_id: string;
  seq: number;
  state: SessionStateName;
  report: Report | null;
  snapshot_hash: string | null;
  has_active_quiz: boolean;
  has_active_plan: boolean;
  runs: number;
  helper_used: boolean;
}

export interface LocatedLine {
  file: string;
  line: number;
  score: number;
  explanation: string;
  context: string;
}

export interface QuizEdit {
  file: string;
  line: number;
  old_text: string;
  new_text: string | null;
}

export interface QuizOption {
  index: number;
  proposal_id: string;
  edits: QuizEdit[];
}

/** The server withholds correct_index and validation; answers round-trip. */
export interface QuizCardResponse {
  question: string;
  options: QuizOption[];
}

export interface AnswerResponse {
  is_correct: boolean;
  explanation: string;
}

export interface PrintInsertion {
  marker: number;
  file: string;
  line_after: number;
  variable: string;
  reason: string;
}

export interface RenderedFile {
  text: string;
  inserted_lines: number[];
}

export interface ProposalBody {
  edits: QuizEdit[];
  rationale: string;
  origin: string;
}

export interface PrintPlanResponse {
  insertions: PrintInsertion[];
  rendered: Record<string, RenderedFile>;
  base_hashes: Record<string, string>;
  apply_proposal?: ProposalBody | null;
}

export interface DebugLineEntry {
  test_id: string;
  marker: number;
  text: string;
}

export interface DebugOutputResponse {
  lines: DebugLineEntry[];
  report: Report;
  outcomes: Record<string, string>;
}

export interface SolutionResponse {
  proposal: { edits: QuizEdit[]; rationale: string; origin: string } | null;
  proposal_id?: string;
  notice: string | null;
  message?: string;
}

export interface ApiError {
  code: string;
  message: string;
  details?: Record<string, unknown>;
}
