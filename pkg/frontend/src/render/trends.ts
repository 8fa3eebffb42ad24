/** Per-label trend lines with legend toggles. */

import { categorical } from "../colors.js";
import type { TrendsDocument } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 800;
const HEIGHT = 360;
const MARGIN = { top: 10, right: 20, bottom: 30, left: 40 };

export function renderTrends(container: HTMLElement, document_: TrendsDocument): void {
  container.textContent = "";
  const labels = Object.keys(document_.series).sort();
  if (labels.length === 0 || document_.bins.length === 0) {
    const empty = container.ownerDocument.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No articles in this window.";
    container.appendChild(empty);
    return;
  }

  const hidden = new Set<string>();
  const svg = container.ownerDocument.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "trends-view");
  container.appendChild(svg);

  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxCount = Math.max(
    1,
    ...labels.map((label) => Math.max(...document_.series[label])),
  );
  const x = (i: number) =>
    MARGIN.left +
    (document_.bins.length === 1 ? plotWidth / 2 : (i / (document_.bins.length - 1)) * plotWidth);
  const y = (v: number) => MARGIN.top + plotHeight - (v / maxCount) * plotHeight;

  const draw = () => {
    svg.textContent = "";
    for (const [index, label] of labels.entries()) {
      if (hidden.has(label)) continue;
      const points = document_.series[label]
        .map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`)
        .join(" ");
      const line = container.ownerDocument.createElementNS(SVG_NS, "polyline");
      line.setAttribute("class", "series");
      line.setAttribute("data-label", label);
      line.setAttribute("points", points);
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", categorical(index));
      line.setAttribute("stroke-width", "2");
      svg.appendChild(line);
    }
  };
  draw();

  const legend = container.ownerDocument.createElement("ul");
  legend.className = "legend";
  for (const [index, label] of labels.entries()) {
    const item = container.ownerDocument.createElement("li");
    item.className = "legend-item";
    item.dataset.label = label;
    const swatch = container.ownerDocument.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = categorical(index);
    item.appendChild(swatch);
    item.appendChild(container.ownerDocument.createTextNode(` ${label}`));
    item.addEventListener("click", () => {
      if (hidden.has(label)) hidden.delete(label);
      else hidden.add(label);
      item.classList.toggle("hidden-series", hidden.has(label));
      draw();
    });
    legend.appendChild(item);
  }
  container.appendChild(legend);
}
