import { formatConsistency } from "./format.js";
import type { ConsistencyReport } from "./types.js";

export const CR_THRESHOLD = 0.1;

export interface GaugeModel {
  state: "pending" | "pass" | "fail";
  ciText: string | null;
  crText: string | null;
  // gauge needle position in [0, 1]; the threshold line sits at 0.5
  needle: number | null;
  worst: { row: string; col: string } | null;
}

/**
 * View model for one context's consistency gauge. Displayed pass/fail is
 * the API's `pass` field verbatim; CI/CR strings are the API numbers
 * formatted to 6 decimals -- no arithmetic beyond needle placement.
 */
export function buildGaugeModel(report: ConsistencyReport | null): GaugeModel {
  if (report === null) {
    return { state: "pending", ciText: null, crText: null, needle: null, worst: null };
  }
  const needle = Math.min(report.cr / (2 * CR_THRESHOLD), 1);
  return {
    state: report.pass ? "pass" : "fail",
    ciText: formatConsistency(report.ci),
    crText: formatConsistency(report.cr),
    needle,
    worst: report.worst_triad ? { row: report.worst_triad.row, col: report.worst_triad.col } : null,
  };
}

export interface GaugeHandlers {
  onRevise?: (row: string, col: string) => void;
}

export function renderGauge(
  el: HTMLElement,
  model: GaugeModel,
  labels: Record<string, string>,
  handlers: GaugeHandlers = {},
): void {
  el.innerHTML = "";
  el.classList.remove("gauge-pass", "gauge-fail", "gauge-pending");
  el.classList.add(`gauge-${model.state}`);

  if (model.state === "pending") {
    const note = document.createElement("p");
    note.className = "gauge-note";
    note.textContent = "Answer every pair in this block to see its consistency.";
    el.appendChild(note);
    return;
  }

  const verdict = document.createElement("div");
  verdict.className = "gauge-verdict";
  verdict.textContent = model.state === "pass" ? "consistent" : "inconsistent";
  el.appendChild(verdict);

  const values = document.createElement("div");
  values.className = "gauge-values";
  const ci = document.createElement("span");
  ci.className = "gauge-ci";
  ci.textContent = `CI ${model.ciText}`;
  const cr = document.createElement("span");
  cr.className = "gauge-cr";
  cr.textContent = `CR ${model.crText}`;
  values.append(ci, cr);
  el.appendChild(values);

  const track = document.createElement("div");
  track.className = "gauge-track";
  const fill = document.createElement("div");
  fill.className = "gauge-fill";
  fill.style.width = `${((model.needle ?? 0) * 100).toFixed(1)}%`;
  const threshold = document.createElement("div");
  threshold.className = "gauge-threshold";
  threshold.title = `CR ${CR_THRESHOLD}`;
  track.append(fill, threshold);
  el.appendChild(track);

  if (model.state === "fail" && model.worst) {
    const hint = document.createElement("div");
    hint.className = "gauge-hint";
    const text = document.createElement("span");
    const rowLabel = labels[model.worst.row] ?? model.worst.row;
    const colLabel = labels[model.worst.col] ?? model.worst.col;
    text.textContent = `Most discordant: ${rowLabel} vs ${colLabel}`;
    const button = document.createElement("button");
    button.className = "gauge-revise";
    button.type = "button";
    button.textContent = "revise";
    button.dataset.row = model.worst.row;
    button.dataset.col = model.worst.col;
    button.addEventListener("click", () => {
      handlers.onRevise?.(model.worst!.row, model.worst!.col);
    });
    hint.append(text, button);
    el.appendChild(hint);
  }
}
