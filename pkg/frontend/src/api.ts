// Typed client for the workbench JSON service. The transport is injectable
// so the UI logic can be exercised against a fake with a request log.

export type WidgetKind = "view" | "steps" | "lts" | "bisim" | "traces" | "check";

export interface ExampleInfo {
  name: string;
  program: string;
  description: string;
}

export interface WidgetInfo {
  name: string;
  kind: WidgetKind;
  /** For step widgets: how the state body is displayed ("text" | "mermaid"). */
  view?: string;
}

export interface LanguageInfo {
  id: string;
  name: string;
  examples: ExampleInfo[];
  widgets: WidgetInfo[];
}

export interface ApiError {
  type: "parse" | "eval" | "limit";
  message: string;
  line: number | null;
  col: number | null;
}

export interface RunResult {
  kind: "text" | "code" | "mermaid" | "warnings" | string;
  body: unknown;
  language?: string;
  limitHit?: boolean;
}

export type RunResponse =
  | { ok: true; result: RunResult }
  | { ok: false; error: ApiError };

export interface SuccessorInfo {
  label: string;
  index: number;
}

export interface StepSnapshot {
  state: string;
  successors: SuccessorInfo[];
  accepting: boolean;
  version?: number;
}

export type SessionOpResponse =
  | StepSnapshot
  | { ok: false; error: ApiError; snapshot?: StepSnapshot };

export type SessionCreateResponse =
  | { sessionId: string }
  | { ok: false; error: ApiError };

export function isRejection(
  response: SessionOpResponse | SessionCreateResponse,
): response is { ok: false; error: ApiError; snapshot?: StepSnapshot } {
  return "ok" in response && response.ok === false;
}

export interface Api {
  languages(): Promise<LanguageInfo[]>;
  run(
    language: string,
    widget: string,
    program: string,
    params?: Record<string, unknown>,
  ): Promise<RunResponse>;
  createSession(language: string, program: string): Promise<SessionCreateResponse>;
  sessionOp(
    sessionId: string,
    op: "step" | "undo" | "reset",
    widget: string,
    choice?: number,
    version?: number,
  ): Promise<SessionOpResponse>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class HttpApi implements Api {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    return (await response.json()) as T;
  }

  async languages(): Promise<LanguageInfo[]> {
    const response = await this.fetchFn(this.base + "/api/languages");
    return (await response.json()) as LanguageInfo[];
  }

  run(
    language: string,
    widget: string,
    program: string,
    params?: Record<string, unknown>,
  ): Promise<RunResponse> {
    return this.post("/api/run", { language, widget, program, params: params ?? {} });
  }

  createSession(language: string, program: string): Promise<SessionCreateResponse> {
    return this.post("/api/session", { language, program });
  }

  sessionOp(
    sessionId: string,
    op: "step" | "undo" | "reset",
    widget: string,
    choice?: number,
    version?: number,
  ): Promise<SessionOpResponse> {
    const payload: Record<string, unknown> = { widget };
    if (op === "step") {
      payload.choice = choice;
      if (version !== undefined) payload.version = version;
    }
    return this.post(`/api/session/${sessionId}/${op}`, payload);
  }
}
