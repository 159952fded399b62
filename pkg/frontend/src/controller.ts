/** Session controller: one in-flight mutation at a time, 1s polling.
 *
 * Holds server responses plus ephemeral UI selections and recomputes the
 * view model after every change; the page is a pure function of that model.
 */

import { ApiRequestError, type Api } from "./api.js";
import type {
  DebugOutputResponse,
  LocatedLine,
  PrintPlanResponse,
  QuizCardResponse,
  SessionResponse,
} from "./types.js";
import { computeView, initialUiState, type UiState, type ViewModel } from "./viewmodel.js";

export const POLL_INTERVAL_MS = 1000;

export class SessionController {
  session: SessionResponse | null = null;
  ui: UiState = initialUiState();
  highlights: LocatedLine[] = [];
  card: QuizCardResponse | null = null;
  plan: PrintPlanResponse | null = null;
  debug: DebugOutputResponse | null = null;
  diff: string | null = null;
  lastSeq = -1;

  private listeners: ((vm: ViewModel) => void)[] = [];

  constructor(
    private api: Api,
    private sessionId: string,
  ) {}

  onChange(listener: (vm: ViewModel) => void): void {
    this.listeners.push(listener);
  }

  view(): ViewModel {
    if (!this.session) {
      throw new Error("no session loaded yet");
    }
    return computeView(this.session, this.ui, {
      highlights: this.highlights,
      card: this.card,
      plan: this.plan,
      debug: this.debug,
      diff: this.diff,
    });
  }

  private emit(): void {
    if (!this.session) {
      return;
    }
    const vm = this.view();
    for (const listener of this.listeners) {
      listener(vm);
    }
  }

  async refresh(): Promise<void> {
    try {
      const session = await this.api.getSession(this.sessionId);
      if (this.lastSeq >= 0 && session.seq < this.lastSeq) {
        this.ui.seqWarning = true;
      }
      this.lastSeq = Math.max(this.lastSeq, session.seq);
      this.session = session;
      if (!session.has_active_quiz) {
        // server invalidated the card (patch applied or re-run)
        if (this.card && !this.ui.quizLocked) {
          this.ui.staleCard = true;
          this.card = null;
        }
      }
      this.ui.offline = false;
    } catch (err) {
      if (err instanceof ApiRequestError) {
        throw err;
      }
      this.ui.offline = true; // connection loss: banner, no state mutation
    }
    this.emit();
  }

  startPolling(setIntervalFn: typeof setInterval = setInterval): ReturnType<typeof setInterval> {
    return setIntervalFn(() => {
      if (!this.ui.busy) {
        void this.refresh();
      }
    }, POLL_INTERVAL_MS);
  }

  /** Run one mutation; guards against concurrent in-flight mutations. */
  private async mutate<T>(fn: () => Promise<T>): Promise<T | null> {
    if (this.ui.busy) {
      return null;
    }
    this.ui.busy = true;
    this.emit();
    try {
      return await fn();
    } finally {
      this.ui.busy = false;
      await this.refresh();
    }
  }

  async runE2E(): Promise<void> {
    await this.mutate(async () => {
      await this.api.runE2E(this.sessionId);
      this.highlights = [];
      this.debug = null;
      this.diff = null;
    });
  }

  async locate(): Promise<void> {
    await this.mutate(async () => {
      const result = await this.api.locate(this.sessionId);
      this.highlights = result.locations;
    });
  }

  async requestQuiz(): Promise<void> {
    await this.mutate(async () => {
      this.card = await this.api.quiz(this.sessionId);
      this.ui.pendingChoice = null;
      this.ui.verdict = null;
      this.ui.quizLocked = false;
      this.ui.staleCard = false;
    });
  }

  chooseOption(index: number): void {
    if (!this.ui.quizLocked) {
      this.ui.pendingChoice = index;
      this.emit();
    }
  }

  /** POST the selected choice; verdict + explanation render immediately and
   * the card locks. A server-side invalidation surfaces as the stale prompt. */
  async submitAnswer(): Promise<void> {
    const choice = this.ui.pendingChoice;
    if (choice === null || this.ui.quizLocked) {
      return;
    }
    await this.mutate(async () => {
      try {
        this.ui.verdict = await this.api.answer(this.sessionId, choice);
        this.ui.quizLocked = true;
      } catch (err) {
        if (err instanceof ApiRequestError && err.status === 409) {
          this.ui.staleCard = true;
          this.card = null;
        } else {
          throw err;
        }
      }
    });
  }

  async requestPrints(): Promise<void> {
    await this.mutate(async () => {
      this.plan = await this.api.prints(this.sessionId);
      this.debug = null;
    });
  }

  async runPrints(): Promise<void> {
    await this.mutate(async () => {
      this.debug = await this.api.printsRun(this.sessionId);
    });
  }

  /** The prints paste-to-apply action: explicit, with a diff confirmation. */
  async applyPrintsPlan(): Promise<void> {
    const proposal = this.plan?.apply_proposal;
    if (!proposal) {
      return;
    }
    await this.mutate(async () => {
      const result = await this.api.patchProposal(this.sessionId, proposal);
      this.diff = result.diff;
      this.ui.showDiff = true;
      this.plan = null;
    });
  }

  /** Apply is explicit: a quiz option or the revealed solution by id. */
  async applyPatch(proposalId: string): Promise<void> {
    await this.mutate(async () => {
      const result = await this.api.patch(this.sessionId, proposalId);
      this.diff = result.diff;
      this.ui.showDiff = true;
      this.card = null;
      this.plan = null;
    });
  }

  async revealSolution(): Promise<string | null> {
    return await this.mutate(async () => {
      const result = await this.api.solution(this.sessionId);
      if (result.notice) {
        return result.notice;
      }
      return result.proposal_id ?? null;
    });
  }
}
