import type {
  ConsistencySnapshot,
  ModelDoc,
  Questionnaire,
  Report,
  SubmissionResult,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, code: string, detail: unknown) {
    super(`${code} (HTTP ${status})`);
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

async function parse<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, body.error ?? "http_error", body.detail ?? null);
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async createSession(model: ModelDoc | string, experts: string[]): Promise<string> {
    const resp = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ model, experts }),
    });
    const body = await parse<{ session_id: string }>(resp);
    return body.session_id;
  }

  async questionnaire(sessionId: string): Promise<Questionnaire> {
    return parse(await fetch(this.url(`/sessions/${sessionId}/questionnaire`)));
  }

  /** Idempotent: resubmitting a pair replaces the stored value. */
  async submitJudgment(
    sessionId: string,
    judgment: { expert: string; context: string; row: string; col: string; value: string },
  ): Promise<SubmissionResult> {
    const resp = await fetch(this.url(`/sessions/${sessionId}/judgments`), {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(judgment),
    });
    return parse(resp);
  }

  async consistency(sessionId: string): Promise<ConsistencySnapshot> {
    return parse(await fetch(this.url(`/sessions/${sessionId}/consistency`)));
  }

  async compute(sessionId: string): Promise<Report> {
    return parse(await fetch(this.url(`/sessions/${sessionId}/compute`), { method: "POST" }));
  }

  /** Resolves to null while no report has been computed yet (404). */
  async report(sessionId: string): Promise<Report | null> {
    const resp = await fetch(this.url(`/sessions/${sessionId}/report`));
    if (resp.status === 404) {
      return null;
    }
    return parse(resp);
  }
}
