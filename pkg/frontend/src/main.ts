// DOM wiring: language/example pickers, the program editor, and one
// collapsible <details> panel per widget. Mermaid bodies are rendered
// client-side when the mermaid module is reachable, otherwise shown as text.

import { HttpApi, RunResult } from "./api.js";
import { PanelState, WorkbenchModel } from "./model.js";

const model = new WorkbenchModel(new HttpApi());

const languageSelect = document.querySelector("#language") as HTMLSelectElement;
const exampleSelect = document.querySelector("#example") as HTMLSelectElement;
const exampleHint = document.querySelector("#example-hint") as HTMLElement;
const editor = document.querySelector("#editor") as HTMLTextAreaElement;
const panelsHost = document.querySelector("#panels") as HTMLElement;
const banner = document.querySelector("#banner") as HTMLElement;

type MermaidLike = {
  initialize(config: object): void;
  render(id: string, text: string): Promise<{ svg: string }>;
};

const MERMAID_CDN = "https://cdn.jsdelivr.net/npm/mermaid@10/dist/mermaid.esm.min.mjs";

let mermaidPromise: Promise<MermaidLike | null> | null = null;

function loadMermaid(): Promise<MermaidLike | null> {
  if (!mermaidPromise) {
    mermaidPromise = import(/* @vite-ignore */ MERMAID_CDN)
      .then((mod) => {
        const mermaid = (mod.default ?? mod) as MermaidLike;
        mermaid.initialize({ startOnLoad: false });
        return mermaid;
      })
      .catch(() => null);
  }
  return mermaidPromise;
}

let mermaidCounter = 0;

async function renderResult(host: HTMLElement, result: RunResult): Promise<void> {
  host.textContent = "";
  if (result.kind === "mermaid" && typeof result.body === "string") {
    const source = result.body;
    const mermaid = await loadMermaid();
    if (mermaid) {
      try {
        const { svg } = await mermaid.render(`diagram${mermaidCounter++}`, source);
        host.innerHTML = svg;
        return;
      } catch {
        // fall through to the textual fallback
      }
    }
    const pre = document.createElement("pre");
    pre.className = "diagram-source";
    pre.textContent = source;
    host.appendChild(pre);
    return;
  }
  if (result.kind === "warnings" && Array.isArray(result.body)) {
    const list = document.createElement("ul");
    list.className = "warnings";
    for (const warning of result.body) {
      const item = document.createElement("li");
      item.textContent = String(warning);
      list.appendChild(item);
    }
    host.appendChild(list);
    return;
  }
  const pre = document.createElement("pre");
  if (result.kind === "code") pre.className = `code code-${result.language ?? ""}`;
  pre.textContent = String(result.body);
  host.appendChild(pre);
}

function markEditorPosition(line: number | null, col: number | null): void {
  if (line === null || col === null) return;
  const lines = editor.value.split("\n");
  let offset = 0;
  for (let i = 0; i < Math.min(line - 1, lines.length); i++) offset += lines[i].length + 1;
  offset += col - 1;
  editor.focus();
  editor.setSelectionRange(offset, offset + 1);
}

function renderStepPanel(panel: PanelState, body: HTMLElement): void {
  const step = panel.step;
  if (!step) return;
  if (panel.widget.view === "mermaid") {
    const host = document.createElement("div");
    host.className = "step-state";
    body.appendChild(host);
    void renderResult(host, { kind: "mermaid", body: step.state });
  } else {
    const state = document.createElement("pre");
    state.className = "step-state";
    state.textContent = step.state;
    body.appendChild(state);
  }

  if (step.successors.length === 0) {
    const badge = document.createElement("span");
    badge.className = step.accepting ? "badge accepting" : "badge stuck";
    badge.textContent = step.accepting ? "accepting" : "stuck";
    body.appendChild(badge);
  } else {
    const buttons = document.createElement("div");
    buttons.className = "successors";
    for (const successor of step.successors) {
      const button = document.createElement("button");
      button.textContent = successor.label;
      button.addEventListener("click", () => {
        void model.clickStep(panel.widget.name, successor.index);
      });
      buttons.appendChild(button);
    }
    body.appendChild(buttons);
  }

  const controls = document.createElement("div");
  controls.className = "step-controls";
  const undo = document.createElement("button");
  undo.textContent = "undo";
  undo.disabled = panel.historyDepth === 0;
  undo.addEventListener("click", () => {
    void model.undoStep(panel.widget.name);
  });
  const reset = document.createElement("button");
  reset.textContent = "reset";
  reset.addEventListener("click", () => {
    void model.resetSteps(panel.widget.name);
  });
  controls.append(undo, reset);
  body.appendChild(controls);
}

function renderPanel(panel: PanelState): HTMLElement {
  const details = document.createElement("details");
  details.className = "panel";
  details.open = !panel.collapsed;
  if (!model.isPanelVisible(panel.widget.name)) details.classList.add("hidden");
  if (panel.stale) details.classList.add("stale");

  const summary = document.createElement("summary");
  summary.textContent = panel.widget.name;
  if (panel.stale) summary.textContent += " (stale)";
  details.appendChild(summary);

  details.addEventListener("toggle", () => {
    if (details.open && panel.collapsed) {
      void model.expandPanel(panel.widget.name);
    } else if (!details.open && !panel.collapsed) {
      model.collapsePanel(panel.widget.name);
    }
  });

  const body = document.createElement("div");
  body.className = "panel-body";
  if (panel.busy) {
    body.textContent = "running...";
  } else if (panel.error) {
    const error = document.createElement("p");
    error.className = "error";
    const position =
      panel.error.line !== null ? ` (line ${panel.error.line}, col ${panel.error.col})` : "";
    error.textContent = `${panel.error.type} error: ${panel.error.message}${position}`;
    body.appendChild(error);
    markEditorPosition(panel.error.line, panel.error.col);
  } else if (panel.widget.kind === "steps") {
    renderStepPanel(panel, body);
  } else if (panel.result) {
    void renderResult(body, panel.result);
  }
  details.appendChild(body);
  return details;
}

function render(): void {
  banner.textContent = model.connectionError ?? "";
  banner.classList.toggle("hidden", model.connectionError === null);

  languageSelect.textContent = "";
  for (const language of model.languages) {
    const option = document.createElement("option");
    option.value = language.id;
    option.textContent = language.name;
    option.selected = model.language?.id === language.id;
    languageSelect.appendChild(option);
  }

  exampleSelect.textContent = "";
  const examples = model.language?.examples ?? [];
  exampleSelect.disabled = examples.length === 0;
  const placeholder = document.createElement("option");
  placeholder.value = "";
  placeholder.textContent = examples.length ? "pick an example..." : "(no examples)";
  exampleSelect.appendChild(placeholder);
  for (const example of examples) {
    const option = document.createElement("option");
    option.value = example.name;
    option.textContent = example.name;
    option.title = example.description;
    option.selected = model.selectedExample === example.name;
    exampleSelect.appendChild(option);
  }
  const selected = examples.find((e) => e.name === model.selectedExample);
  exampleHint.textContent = selected ? selected.description : "";

  if (editor.value !== model.program) editor.value = model.program;

  panelsHost.textContent = "";
  for (const panel of model.panels.values()) {
    panelsHost.appendChild(renderPanel(panel));
  }
}

languageSelect.addEventListener("change", () => {
  model.selectLanguage(languageSelect.value);
});

exampleSelect.addEventListener("change", () => {
  if (exampleSelect.value) model.pickExample(exampleSelect.value);
});

editor.addEventListener("input", () => {
  model.editProgram(editor.value);
});

// All rendering flows through model notifications, including the busy
// states that async widget runs pass through.
model.onChange(render);

void model.loadLanguages();
