/** Topic view: per-topic horizontal term bars plus a temporal stacked
 * area chart of daily topic frequencies. */

import { categorical } from "../colors.js";
import type { TopicsDocument } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface TopicsCallbacks {
  onSelectTopic?: (topicId: number) => void;
}

export function renderTopics(
  container: HTMLElement,
  document_: TopicsDocument,
  callbacks: TopicsCallbacks = {},
): void {
  container.textContent = "";
  if (document_.topics.length === 0) {
    const empty = container.ownerDocument.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No topics for this selection.";
    container.appendChild(empty);
    return;
  }

  const grid = container.ownerDocument.createElement("div");
  grid.className = "topic-grid";
  for (const topic of document_.topics) {
    const card = container.ownerDocument.createElement("section");
    card.className = "topic-card";
    card.dataset.topicId = topic.id.toString();
    card.addEventListener("click", () => callbacks.onSelectTopic?.(topic.id));

    const heading = container.ownerDocument.createElement("h3");
    heading.textContent =
      `Topic ${topic.id} · ${topic.size} articles · coherence ${topic.coherence.toFixed(3)}`;
    card.appendChild(heading);

    const maxScore = Math.max(1e-9, ...topic.terms.map(([, score]) => score));
    const barWidth = 220;
    const rowHeight = 16;
    const svg = container.ownerDocument.createElementNS(SVG_NS, "svg");
    svg.setAttribute(
      "viewBox",
      `0 0 ${barWidth + 120} ${topic.terms.length * rowHeight + 4}`,
    );
    svg.setAttribute("class", "term-bars");
    topic.terms.forEach(([term, score], row) => {
      const bar = container.ownerDocument.createElementNS(SVG_NS, "rect");
      bar.setAttribute("class", "term-bar");
      bar.setAttribute("x", "100");
      bar.setAttribute("y", (row * rowHeight + 2).toString());
      bar.setAttribute("height", (rowHeight - 4).toString());
      bar.setAttribute("width", ((score / maxScore) * barWidth).toFixed(1));
      bar.setAttribute("fill", categorical(topic.id));
      bar.setAttribute("data-term", term);
      svg.appendChild(bar);
      const text = container.ownerDocument.createElementNS(SVG_NS, "text");
      text.setAttribute("x", "96");
      text.setAttribute("y", (row * rowHeight + rowHeight - 5).toString());
      text.setAttribute("text-anchor", "end");
      text.setAttribute("class", "term-label");
      text.textContent = term;
      svg.appendChild(text);
    });
    card.appendChild(svg);
    grid.appendChild(card);
  }
  container.appendChild(grid);

  const summary = container.ownerDocument.createElement("p");
  summary.className = "summary";
  summary.textContent =
    `k=${document_.k} · diversity ${document_.diversity.toFixed(3)} · ` +
    `mean coherence ${document_.mean_coherence.toFixed(3)}`;
  container.appendChild(summary);

  if (document_.temporal) {
    container.appendChild(renderTemporal(container.ownerDocument, document_));
  }
}

function renderTemporal(doc: Document, document_: TopicsDocument): SVGSVGElement {
  const temporal = document_.temporal!;
  const width = 800;
  const height = 240;
  const margin = { top: 10, right: 20, bottom: 24, left: 40 };
  const plotWidth = width - margin.left - margin.right;
  const plotHeight = height - margin.top - margin.bottom;

  const topicIds = Object.keys(temporal.counts)
    .map(Number)
    .sort((a, b) => a - b);
  const nDays = temporal.days.length;
  const totals = new Array(nDays).fill(0);
  for (const id of topicIds) {
    temporal.counts[id.toString()].forEach((v, i) => {
      totals[i] += v;
    });
  }
  const maxTotal = Math.max(1, ...totals);
  const x = (i: number) =>
    margin.left + (nDays === 1 ? plotWidth / 2 : (i / (nDays - 1)) * plotWidth);
  const y = (v: number) => margin.top + plotHeight - (v / maxTotal) * plotHeight;

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "temporal-view");

  const baseline = new Array(nDays).fill(0);
  for (const id of topicIds) {
    const counts = temporal.counts[id.toString()];
    const upper = counts.map((v, i) => baseline[i] + v);
    const forward = upper.map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`);
    const backward = baseline
      .map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`)
      .reverse();
    const area = doc.createElementNS(SVG_NS, "polygon");
    area.setAttribute("class", "topic-area");
    area.setAttribute("data-topic-id", id.toString());
    area.setAttribute("points", [...forward, ...backward].join(" "));
    area.setAttribute("fill", categorical(id));
    area.setAttribute("fill-opacity", "0.75");
    svg.appendChild(area);
    for (let i = 0; i < nDays; i++) baseline[i] = upper[i];
  }
  return svg;
}
