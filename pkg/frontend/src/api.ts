/** Typed client for the codehinter HTTP API.
 *
 * fetch is injectable so tests can drive the client against fixture
 * responses without a network.
 */

import type {
  AnswerResponse,
  ApiError,
  DebugOutputResponse,
  LocatedLine,
  PrintPlanResponse,
  ProposalBody,
  QuizCardResponse,
  SessionResponse,
  SolutionResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public body: ApiError,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

/** The surface the controller needs; ApiClient implements it over HTTP. */
export interface Api {
  createSession(config: Record<string, unknown>): Promise<{ session_id: string }>;
  getSession(id: string): Promise<SessionResponse>;
  runE2E(id: string): Promise<SessionResponse["report"]>;
  locate(id: string): Promise<{ locations: LocatedLine[] }>;
  quiz(id: string): Promise<QuizCardResponse>;
  answer(id: string, choice: number): Promise<AnswerResponse>;
  prints(id: string): Promise<PrintPlanResponse>;
  printsRun(id: string): Promise<DebugOutputResponse>;
  patch(id: string, proposalId: string): Promise<{ diff: string }>;
  patchProposal(id: string, proposal: ProposalBody): Promise<{ diff: string }>;
  solution(id: string): Promise<SolutionResponse>;
  pseudocode(id: string): Promise<{ text: string }>;
  visualizerUrl(id: string): Promise<{ url: string }>;
  chat(id: string, text: string): Promise<{ reply: string }>;
}

export class ApiClient implements Api {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiRequestError(resp.status, payload as ApiError);
    }
    return payload as T;
  }

  createSession(config: Record<string, unknown>): Promise<{ session_id: string }> {
    return this.request("POST", "/sessions", { config });
  }

  getSession(id: string): Promise<SessionResponse> {
    return this.request("GET", `/sessions/${id}`);
  }

  runE2E(id: string): Promise<SessionResponse["report"]> {
    return this.request("POST", `/sessions/${id}/e2e`);
  }

  locate(id: string): Promise<{ locations: LocatedLine[] }> {
    return this.request("POST", `/sessions/${id}/helpers/locate`);
  }

  quiz(id: string): Promise<QuizCardResponse> {
    return this.request("POST", `/sessions/${id}/helpers/quiz`);
  }

  answer(id: string, choice: number): Promise<AnswerResponse> {
    return this.request("POST", `/sessions/${id}/quiz/answer`, { choice });
  }

  prints(id: string): Promise<PrintPlanResponse> {
    return this.request("POST", `/sessions/${id}/helpers/prints`);
  }

  printsRun(id: string): Promise<DebugOutputResponse> {
    return this.request("POST", `/sessions/${id}/helpers/prints/run`);
  }

  patch(id: string, proposalId: string): Promise<{ diff: string }> {
    return this.request("POST", `/sessions/${id}/patch`, { proposal_id: proposalId });
  }

  patchProposal(id: string, proposal: ProposalBody): Promise<{ diff: string }> {
    return this.request("POST", `/sessions/${id}/patch`, { proposal });
  }

  solution(id: string): Promise<SolutionResponse> {
    return this.request("POST", `/sessions/${id}/solution`);
  }

  pseudocode(id: string): Promise<{ text: string }> {
    return this.request("GET", `/sessions/${id}/pseudocode`);
  }

  visualizerUrl(id: string): Promise<{ url: string }> {
    return this.request("GET", `/sessions/${id}/visualizer-url`);
  }

  chat(id: string, text: string): Promise<{ reply: string }> {
    return this.request("POST", `/sessions/${id}/chat`, { text });
  }
}
