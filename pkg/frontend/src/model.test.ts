import { describe, expect, it } from "vitest";

import {
  Api,
  LanguageInfo,
  RunResponse,
  SessionCreateResponse,
  SessionOpResponse,
  StepSnapshot,
} from "./api.js";
import { WorkbenchModel } from "./model.js";

// A fake service mirroring the engine's lambda language: the succ example
// steps (\x -> x + 1) 2 -> 2 + 1 -> 3. Every request is logged.

const LAMBDA: LanguageInfo = {
  id: "lambda",
  name: "Lambda calculus with addition",
  examples: [
    { name: "succ", program: "(\\x -> x + 1) 2", description: "Adds 1 to number 2" },
  ],
  widgets: [
    { name: "Diagram of the structure", kind: "view" },
    { name: "Run semantics", kind: "steps" },
    { name: "Build LTS", kind: "lts" },
    { name: "Check", kind: "check" },
  ],
};

const CHAIN: StepSnapshot[] = [
  {
    state: "(\\x -> x + 1) 2",
    successors: [{ label: "beta-x", index: 0 }],
    accepting: false,
    version: 0,
  },
  { state: "2 + 1", successors: [{ label: "add", index: 0 }], accepting: false, version: 1 },
  { state: "3", successors: [], accepting: true, version: 2 },
];

interface LoggedRequest {
  kind: "languages" | "run" | "createSession" | "step" | "undo" | "reset";
  widget?: string;
}

class FakeApi implements Api {
  log: LoggedRequest[] = [];
  private position = 0;
  private sessions = 0;

  requestsFor(widget: string): number {
    return this.log.filter((entry) => entry.widget === widget).length;
  }

  async languages(): Promise<LanguageInfo[]> {
    this.log.push({ kind: "languages" });
    return [LAMBDA];
  }

  async run(_language: string, widget: string, _program: string): Promise<RunResponse> {
    this.log.push({ kind: "run", widget });
    if (widget === "Check") {
      return { ok: true, result: { kind: "warnings", body: [] } };
    }
    if (widget === "Build LTS") {
      return { ok: true, result: { kind: "mermaid", body: "flowchart LR\n  st0[\"x\"]" } };
    }
    return { ok: true, result: { kind: "text", body: "ok" } };
  }

  async createSession(): Promise<SessionCreateResponse> {
    this.log.push({ kind: "createSession" });
    this.sessions += 1;
    this.position = 0;
    return { sessionId: `session-${this.sessions}` };
  }

  async sessionOp(
    _sessionId: string,
    op: "step" | "undo" | "reset",
    widget: string,
    choice?: number,
  ): Promise<SessionOpResponse> {
    this.log.push({ kind: op, widget });
    if (op === "reset") {
      this.position = 0;
    } else if (op === "undo") {
      this.position = Math.max(0, this.position - 1);
    } else {
      const successors = CHAIN[this.position].successors;
      if (choice === undefined || choice < 0 || choice >= successors.length) {
        return {
          ok: false,
          error: { type: "eval", message: "stale successor index", line: null, col: null },
          snapshot: CHAIN[this.position],
        };
      }
      this.position += 1;
    }
    return CHAIN[this.position];
  }
}

async function freshModel(): Promise<{ model: WorkbenchModel; api: FakeApi }> {
  const api = new FakeApi();
  const model = new WorkbenchModel(api);
  await model.loadLanguages();
  return { model, api };
}

describe("workbench flow", () => {
  it("loads languages and examples into the pickers", async () => {
    const { model } = await freshModel();
    expect(model.language?.id).toBe("lambda");
    expect(model.language?.examples.map((e) => e.name)).toContain("succ");
    model.pickExample("succ");
    expect(model.program).toBe("(\\x -> x + 1) 2");
  });

  it("reports a connection failure without crashing", async () => {
    const api = new FakeApi();
    api.languages = async () => {
      throw new Error("connection refused");
    };
    const model = new WorkbenchModel(api);
    await model.loadLanguages();
    expect(model.connectionError).toContain("connection refused");
  });

  it("expands the LTS panel with exactly one request", async () => {
    const { model, api } = await freshModel();
    model.pickExample("succ");
    expect(api.requestsFor("Build LTS")).toBe(0); // collapsed: nothing yet
    await model.expandPanel("Build LTS");
    expect(api.requestsFor("Build LTS")).toBe(1);
    expect(model.panel("Build LTS").result?.kind).toBe("mermaid");
  });

  it("steps twice to reach 3 with an accepting badge", async () => {
    const { model, api } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Run semantics");
    expect(api.log.filter((e) => e.kind === "createSession")).toHaveLength(1);
    expect(model.panel("Run semantics").step?.state).toBe("(\\x -> x + 1) 2");

    await model.clickStep("Run semantics", 0);
    expect(model.panel("Run semantics").step?.state).toBe("2 + 1");
    await model.clickStep("Run semantics", 0);

    const step = model.panel("Run semantics").step;
    expect(step?.state).toBe("3");
    expect(step?.successors).toHaveLength(0);
    expect(step?.accepting).toBe(true);
    expect(model.panel("Run semantics").historyDepth).toBe(2);
  });

  it("issues zero requests for a collapsed panel", async () => {
    const { model, api } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Build LTS");
    model.collapsePanel("Build LTS");
    const before = api.requestsFor("Build LTS");

    // Activity elsewhere must not touch the collapsed panel.
    await model.expandPanel("Run semantics");
    await model.clickStep("Run semantics", 0);
    model.editProgram("(\\y -> y) 1");
    await model.refreshPanel("Build LTS");
    await model.expandPanel("Diagram of the structure");

    expect(api.requestsFor("Build LTS")).toBe(before);
    expect(model.panel("Build LTS").collapsed).toBe(true);
  });

  it("undo and reset walk the history", async () => {
    const { model } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Run semantics");
    await model.clickStep("Run semantics", 0);
    await model.undoStep("Run semantics");
    expect(model.panel("Run semantics").step?.state).toBe("(\\x -> x + 1) 2");
    expect(model.panel("Run semantics").historyDepth).toBe(0);

    await model.clickStep("Run semantics", 0);
    await model.clickStep("Run semantics", 0);
    await model.resetSteps("Run semantics");
    expect(model.panel("Run semantics").step?.state).toBe("(\\x -> x + 1) 2");
    expect(model.panel("Run semantics").historyDepth).toBe(0);
  });

  it("editing the program invalidates the session and resets step panels", async () => {
    const { model, api } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Run semantics");
    await model.clickStep("Run semantics", 0);

    model.editProgram("(\\x -> x) 5");
    expect(model.panel("Run semantics").step).toBeNull();
    expect(model.panel("Run semantics").stale).toBe(true);

    await model.refreshPanel("Run semantics");
    expect(api.log.filter((e) => e.kind === "createSession")).toHaveLength(2);
    expect(model.panel("Run semantics").historyDepth).toBe(0);
  });

  it("adopts the server snapshot after a stale click", async () => {
    const { model } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Run semantics");
    await model.clickStep("Run semantics", 7); // out of range: stale
    const step = model.panel("Run semantics").step;
    expect(step?.state).toBe("(\\x -> x + 1) 2");
    expect(step?.successors).toHaveLength(1);
  });

  it("keeps an empty check panel invisible", async () => {
    const { model } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Check");
    expect(model.isPanelVisible("Check")).toBe(false);
    expect(model.isPanelVisible("Build LTS")).toBe(true);
  });

  it("marks rendered panels stale after an edit until re-run", async () => {
    const { model } = await freshModel();
    model.pickExample("succ");
    await model.expandPanel("Build LTS");
    expect(model.panel("Build LTS").stale).toBe(false);
    model.editProgram("1 + 1");
    expect(model.panel("Build LTS").stale).toBe(true);
    await model.refreshPanel("Build LTS");
    expect(model.panel("Build LTS").stale).toBe(false);
  });
});
