import { ApiClient, ApiError } from "./api.js";
import { ElicitationFlow } from "./flow.js";
import { buildGaugeModel, renderGauge } from "./gauge.js";
import { renderPlaceholder, renderResults } from "./results.js";
import { MAGNITUDES, anchorFor, toSubmissionValue } from "./scale.js";
import type { ConsistencyReport, ModelDoc, Questionnaire } from "./types.js";

const api = new ApiClient("");

interface AppState {
  sessionId: string | null;
  expert: string;
  flow: ElicitationFlow | null;
  labels: Record<string, string>;
  magnitude: string;
  rowDominates: boolean;
  lastReports: Map<string, ConsistencyReport>;
}

const state: AppState = {
  sessionId: null,
  expert: "",
  flow: null,
  labels: {},
  magnitude: "1",
  rowDominates: true,
  lastReports: new Map(),
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function show(view: "setup" | "elicit" | "results"): void {
  for (const name of ["setup", "elicit", "results"] as const) {
    el(`view-${name}`).hidden = name !== view;
  }
}

function flash(message: string): void {
  const box = el("error-box");
  box.textContent = message;
  box.hidden = message === "";
}

function labelsFrom(model: ModelDoc): Record<string, string> {
  const labels: Record<string, string> = { [model.goal]: model.goal_label || model.goal };
  for (const cluster of model.clusters) {
    labels[cluster.id] = cluster.label || cluster.id;
    for (const element of cluster.elements) {
      labels[element.id] = element.label || element.id;
    }
  }
  return labels;
}

function renderQuestion(): void {
  const flow = state.flow;
  if (!flow) {
    return;
  }
  const q = flow.current;
  const counters = flow.counters;
  el("progress").textContent = `${counters.stored} / ${counters.expected} answered`;
  if (!q) {
    return;
  }
  el("prompt").textContent = q.prompt;
  el("toggle-row").textContent = state.labels[q.row] ?? q.row;
  el("toggle-col").textContent = state.labels[q.col] ?? q.col;
  el("question-position").textContent = `question ${flow.position + 1} of ${flow.total}`;
  const stored = flow.storedValue(q);
  el("stored-note").textContent = stored ? `stored: ${stored}` : "";
  renderContextGauge(q.context);
  el<HTMLButtonElement>("compute-button").disabled = !flow.done;
}

function renderContextGauge(context: string): void {
  const report = state.lastReports.get(context) ?? null;
  renderGauge(el("gauge"), buildGaugeModel(report), state.labels, {
    onRevise: (row, col) => {
      state.flow?.jumpToPair(context, row, col);
      renderQuestion();
    },
  });
}

function buildSelector(): void {
  const holder = el("magnitudes");
  holder.innerHTML = "";
  for (const magnitude of MAGNITUDES) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "magnitude";
    button.dataset.value = magnitude;
    const anchor = anchorFor(magnitude);
    button.textContent = anchor ? `${magnitude} ${anchor}` : magnitude;
    button.addEventListener("click", () => {
      state.magnitude = magnitude;
      holder.querySelectorAll(".magnitude").forEach((b) => b.classList.remove("selected"));
      button.classList.add("selected");
    });
    holder.appendChild(button);
  }
}

async function submitCurrent(): Promise<void> {
  const flow = state.flow;
  const q = flow?.current;
  if (!flow || !q || !state.sessionId) {
    return;
  }
  const value = toSubmissionValue(state.magnitude, state.rowDominates);
  try {
    const result = await api.submitJudgment(state.sessionId, {
      expert: state.expert,
      context: q.context,
      row: q.row,
      col: q.col,
      value,
    });
    flow.absorb(result);
    if (result.consistency) {
      state.lastReports.set(result.context, result.consistency);
    }
    flash("");
    flow.advance();
    renderQuestion();
  } catch (err) {
    flash(err instanceof ApiError ? `${err.code}: submission rejected` : String(err));
  }
}

async function compute(): Promise<void> {
  if (!state.sessionId) {
    return;
  }
  try {
    const report = await api.compute(state.sessionId);
    renderResults(el("ranking"), report, state.labels);
    show("results");
  } catch (err) {
    if (err instanceof ApiError && err.code === "consistency_gate_failed") {
      flash("Some blocks are still inconsistent; revise the flagged pairs.");
    } else {
      flash(String(err));
    }
  }
}

async function openResults(): Promise<void> {
  if (!state.sessionId) {
    return;
  }
  const report = await api.report(state.sessionId);
  if (report === null) {
    renderPlaceholder(el("ranking"));
  } else {
    renderResults(el("ranking"), report, state.labels);
  }
  show("results");
}

async function startSession(): Promise<void> {
  const expert = el<HTMLInputElement>("expert-input").value.trim();
  const sessionField = el<HTMLInputElement>("session-input").value.trim();
  const modelText = el<HTMLTextAreaElement>("model-input").value.trim();
  if (!expert) {
    flash("enter an expert id");
    return;
  }
  state.expert = expert;
  try {
    let sessionId = sessionField;
    if (!sessionId) {
      if (!modelText) {
        flash("paste a model document or enter a session id");
        return;
      }
      const model = JSON.parse(modelText) as ModelDoc;
      sessionId = await api.createSession(model, [expert]);
    }
    const questionnaire: Questionnaire = await api.questionnaire(sessionId);
    state.sessionId = sessionId;
    state.labels = labelsFrom(questionnaire.model);
    state.flow = new ElicitationFlow(questionnaire);
    state.lastReports = new Map();
    el("session-id").textContent = sessionId;
    flash("");
    show("elicit");
    renderQuestion();
  } catch (err) {
    flash(err instanceof ApiError ? `${err.code}` : `could not start: ${err}`);
  }
}

export function boot(): void {
  buildSelector();
  el("start-button").addEventListener("click", () => void startSession());
  el("submit-button").addEventListener("click", () => void submitCurrent());
  el("compute-button").addEventListener("click", () => void compute());
  el("results-button").addEventListener("click", () => void openResults());
  el("back-button").addEventListener("click", () => {
    show("elicit");
    renderQuestion();
  });
  const toggle = el<HTMLInputElement>("direction-toggle");
  toggle.addEventListener("change", () => {
    state.rowDominates = !toggle.checked;
  });
  show("setup");
}

if (typeof document !== "undefined" && document.getElementById("view-setup")) {
  boot();
}
