// Results view against the published-ranking report produced by the
// engine's extraction path: exact rank order, 5-decimal labels, grouping.
import { beforeEach, describe, expect, it } from "vitest";

import { renderPlaceholder, renderResults } from "../src/results.js";
import type { Report } from "../src/types.js";
import fixtures from "./fixtures/api.json";

const report = fixtures.report_table3 as unknown as Report;
const labels = fixtures.railway_labels as Record<string, string>;

const EXPECTED_ORDER = [
  "e11", "e31", "e14", "e34", "e12", "e32", "e33", "e35", "e36",
  "e13", "e21", "e22", "e23", "e24", "e25",
];

describe("results view", () => {
  let host: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="ranking"></div>';
    host = document.getElementById("ranking")!;
  });

  it("renders the published ranking fixture in exact rank order", () => {
    renderResults(host, report, labels);
    const rows = [...host.querySelectorAll<HTMLElement>(".result-row")];
    expect(rows.map((r) => r.dataset.element)).toEqual(EXPECTED_ORDER);
    expect(rows.map((r) => r.dataset.rank)).toEqual(EXPECTED_ORDER.map((_, i) => String(i + 1)));
    expect(rows[0].querySelector(".result-label")!.textContent).toBe("Prior knowledge");
    expect(rows[14].querySelector(".result-label")!.textContent).toBe("Control skills");
  });

  it("labels every bar with the report weight at 5 decimals", () => {
    renderResults(host, report, labels);
    const shown = [...host.querySelectorAll<HTMLElement>(".result-row")].map(
      (r) => r.querySelector(".result-weight")!.textContent,
    );
    expect(shown).toEqual(report.elements.map((e) => e.weight.toFixed(5)));
    // the published top weight survives normalization at display precision
    expect(shown[0]).toBe("0.11865");
  });

  it("marks every row with its cluster, colored by first appearance", () => {
    renderResults(host, report, labels);
    const rows = [...host.querySelectorAll<HTMLElement>(".result-row")];
    expect(rows.map((r) => r.dataset.cluster)).toEqual(
      report.elements.map((e) => e.cluster),
    );
    // C1 appears first (rank 1), then C3 (rank 2), then C2 (rank 11)
    const hueOf = (cluster: string) =>
      rows.find((r) => r.dataset.cluster === cluster)!.className.match(/cluster-hue-(\d)/)![1];
    expect(hueOf("C1")).toBe("0");
    expect(hueOf("C3")).toBe("1");
    expect(hueOf("C2")).toBe("2");
    const badges = rows.map((r) => r.querySelector(".result-cluster")!.textContent);
    expect(badges[0]).toBe("Culture learning");
    expect(badges[14]).toBe("System structure");
  });

  it("renders criteria chips in report order with 5-decimal weights", () => {
    renderResults(host, report, labels);
    const chips = [...host.querySelectorAll(".criterion-chip")].map((c) => c.textContent);
    expect(chips.length).toBe(3);
    expect(chips[0]).toContain("1. ");
    for (const [i, criterion] of report.criteria.entries()) {
      expect(chips[i]).toContain(criterion.weight.toFixed(5));
    }
  });

  it("scales equal weights to equal bars and keeps id order on ties", () => {
    const uniform: Report = {
      criteria: [{ id: "C1", weight: 1.0, rank: 1 }],
      elements: ["e11", "e12", "e13"].map((id, i) => ({
        id,
        cluster: "C1",
        weight: 1 / 3,
        rank: i + 1,
      })),
      consistency: [],
      convergence: { mode: "power", iterations: 1 },
    };
    renderResults(host, uniform, {});
    const widths = [...host.querySelectorAll<HTMLElement>(".result-fill")].map((f) => f.style.width);
    expect(new Set(widths).size).toBe(1);
    const order = [...host.querySelectorAll<HTMLElement>(".result-row")].map((r) => r.dataset.element);
    expect(order).toEqual(["e11", "e12", "e13"]);
  });

  it("shows the placeholder before any report exists", () => {
    renderPlaceholder(host);
    expect(host.querySelector(".results-placeholder")!.textContent).toContain("Not computed yet");
  });
});
