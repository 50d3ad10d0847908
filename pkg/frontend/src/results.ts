import { formatWeight } from "./format.js";
import type { Report } from "./types.js";

/**
 * Ranking view: criteria chips first, then one bar per element in exactly
 * the report's order (global rank 1..n top to bottom) with 5-decimal
 * weight labels. Cluster membership shows as a badge and a per-cluster
 * color on every row. Bars scale against the largest element weight.
 */
export function renderResults(el: HTMLElement, report: Report, labels: Record<string, string>): void {
  el.innerHTML = "";

  const clusterOrder: string[] = [];
  for (const element of report.elements) {
    if (!clusterOrder.includes(element.cluster)) {
      clusterOrder.push(element.cluster);
    }
  }

  const criteria = document.createElement("div");
  criteria.className = "criteria-row";
  for (const c of report.criteria) {
    const chip = document.createElement("span");
    chip.className = `criterion-chip cluster-hue-${clusterOrder.indexOf(c.id) % 6}`;
    chip.textContent = `${c.rank}. ${labels[c.id] ?? c.id} ${formatWeight(c.weight)}`;
    criteria.appendChild(chip);
  }
  el.appendChild(criteria);

  const list = document.createElement("div");
  list.className = "result-list";
  const maxWeight = Math.max(...report.elements.map((e) => e.weight), 1e-12);
  for (const element of report.elements) {
    const hue = clusterOrder.indexOf(element.cluster) % 6;
    const row = document.createElement("div");
    row.className = `result-row cluster-hue-${hue}`;
    row.dataset.element = element.id;
    row.dataset.cluster = element.cluster;
    row.dataset.rank = String(element.rank);

    const rank = document.createElement("span");
    rank.className = "result-rank";
    rank.textContent = String(element.rank);

    const name = document.createElement("span");
    name.className = "result-label";
    name.textContent = labels[element.id] ?? element.id;

    const badge = document.createElement("span");
    badge.className = "result-cluster";
    badge.textContent = labels[element.cluster] ?? element.cluster;

    const bar = document.createElement("div");
    bar.className = "result-bar";
    const fill = document.createElement("div");
    fill.className = "result-fill";
    fill.style.width = `${((element.weight / maxWeight) * 100).toFixed(1)}%`;
    bar.appendChild(fill);

    const weight = document.createElement("span");
    weight.className = "result-weight";
    weight.textContent = formatWeight(element.weight);

    row.append(rank, name, badge, bar, weight);
    list.appendChild(row);
  }
  el.appendChild(list);
}

export function renderPlaceholder(el: HTMLElement): void {
  el.innerHTML = "";
  const note = document.createElement("p");
  note.className = "results-placeholder";
  note.textContent = "Not computed yet: finish the questionnaire and press compute.";
  el.appendChild(note);
}
