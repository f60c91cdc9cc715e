// UI state machine, DOM-free so it can be tested headlessly.
//
// Invariants the model maintains:
//  - a collapsed panel never issues a request; expanding it issues exactly
//    the requests needed to populate it;
//  - editing the program (or picking an example) invalidates the step
//    session, resets all step panels and marks every expanded panel stale;
//  - one in-flight request per panel, step clicks serialized per widget.

import {
  Api,
  ApiError,
  LanguageInfo,
  RunResult,
  StepSnapshot,
  WidgetInfo,
  isRejection,
} from "./api.js";

export interface PanelState {
  widget: WidgetInfo;
  collapsed: boolean;
  stale: boolean;
  busy: boolean;
  result: RunResult | null;
  error: ApiError | null;
  step: StepSnapshot | null;
  historyDepth: number;
}

export type Listener = () => void;

export class WorkbenchModel {
  languages: LanguageInfo[] = [];
  language: LanguageInfo | null = null;
  program = "";
  selectedExample: string | null = null;
  panels = new Map<string, PanelState>();
  connectionError: string | null = null;

  private sessionId: string | null = null;
  private listeners: Listener[] = [];

  constructor(private api: Api) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  async loadLanguages(): Promise<void> {
    try {
      this.languages = await this.api.languages();
      this.connectionError = null;
    } catch (err) {
      this.connectionError = `cannot reach the service: ${String(err)}`;
      this.notify();
      return;
    }
    if (this.languages.length > 0) {
      this.selectLanguage(this.languages[0].id);
    } else {
      this.notify();
    }
  }

  selectLanguage(id: string): void {
    const language = this.languages.find((lang) => lang.id === id);
    if (!language) return;
    this.language = language;
    this.program = "";
    this.selectedExample = null;
    this.sessionId = null;
    this.panels = new Map(
      language.widgets.map((widget) => [
        widget.name,
        {
          widget,
          collapsed: true,
          stale: false,
          busy: false,
          result: null,
          error: null,
          step: null,
          historyDepth: 0,
        } satisfies PanelState,
      ]),
    );
    this.notify();
  }

  pickExample(name: string): void {
    const example = this.language?.examples.find((ex) => ex.name === name);
    if (!example) return;
    this.selectedExample = name;
    this.setProgram(example.program);
  }

  editProgram(text: string): void {
    this.selectedExample = null;
    this.setProgram(text);
  }

  private setProgram(text: string): void {
    this.program = text;
    this.sessionId = null;
    for (const panel of this.panels.values()) {
      panel.stale = panel.result !== null || panel.step !== null;
      panel.step = null;
      panel.historyDepth = 0;
    }
    this.notify();
  }

  panel(name: string): PanelState {
    const panel = this.panels.get(name);
    if (!panel) throw new Error(`unknown panel '${name}'`);
    return panel;
  }

  collapsePanel(name: string): void {
    this.panel(name).collapsed = true;
    this.notify();
  }

  async expandPanel(name: string): Promise<void> {
    const panel = this.panel(name);
    panel.collapsed = false;
    await this.refreshPanel(name);
  }

  /** Re-run an expanded panel; never touches collapsed ones. */
  async refreshPanel(name: string): Promise<void> {
    const panel = this.panel(name);
    if (panel.collapsed || panel.busy || !this.language) return;
    panel.busy = true;
    panel.error = null;
    this.notify();
    try {
      if (panel.widget.kind === "steps") {
        await this.populateStepPanel(panel);
      } else {
        const response = await this.api.run(
          this.language.id,
          panel.widget.name,
          this.program,
        );
        if (response.ok) {
          panel.result = response.result;
          panel.stale = false;
        } else {
          panel.result = null;
          panel.error = response.error;
        }
      }
    } catch (err) {
      panel.error = { type: "eval", message: String(err), line: null, col: null };
    } finally {
      panel.busy = false;
      this.notify();
    }
  }

  private async ensureSession(): Promise<string | null> {
    if (this.sessionId) return this.sessionId;
    if (!this.language) return null;
    const response = await this.api.createSession(this.language.id, this.program);
    if (!("sessionId" in response)) {
      throw new Error(response.error.message);
    }
    this.sessionId = response.sessionId;
    return this.sessionId;
  }

  private async populateStepPanel(panel: PanelState): Promise<void> {
    const sid = await this.ensureSession();
    if (!sid) return;
    const response = await this.api.sessionOp(sid, "reset", panel.widget.name);
    if (isRejection(response)) {
      panel.error = response.error;
      return;
    }
    panel.step = response;
    panel.historyDepth = 0;
    panel.stale = false;
  }

  async clickStep(name: string, index: number): Promise<void> {
    const panel = this.panel(name);
    if (panel.collapsed || panel.busy || !this.sessionId || !panel.step) return;
    panel.busy = true;
    this.notify();
    try {
      const response = await this.api.sessionOp(
        this.sessionId,
        "step",
        name,
        index,
        panel.step.version,
      );
      if (isRejection(response)) {
        if (response.snapshot) {
          // Stale click: adopt the server's snapshot, refreshing the buttons.
          panel.step = response.snapshot;
        } else {
          panel.error = response.error;
        }
      } else {
        panel.step = response;
        panel.historyDepth += 1;
      }
    } finally {
      panel.busy = false;
      this.notify();
    }
  }

  async undoStep(name: string): Promise<void> {
    await this.historyOp(name, "undo");
    const panel = this.panel(name);
    if (panel.historyDepth > 0) panel.historyDepth -= 1;
    this.notify();
  }

  async resetSteps(name: string): Promise<void> {
    await this.historyOp(name, "reset");
    this.panel(name).historyDepth = 0;
    this.notify();
  }

  private async historyOp(name: string, op: "undo" | "reset"): Promise<void> {
    const panel = this.panel(name);
    if (panel.collapsed || !this.sessionId) return;
    const response = await this.api.sessionOp(this.sessionId, op, name);
    if (isRejection(response)) {
      panel.error = response.error;
      return;
    }
    panel.step = response;
  }

  /** A check panel with no warnings stays invisible. */
  isPanelVisible(name: string): boolean {
    const panel = this.panel(name);
    if (panel.widget.kind !== "check" || panel.result === null) return true;
    const warnings = panel.result.body;
    return !(Array.isArray(warnings) && warnings.length === 0);
  }
}
