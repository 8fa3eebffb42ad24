/** Sentiment heatmap: rows = days, columns = barrier labels, diverging
 * color scale; a null cell (no articles) renders gray, visibly different
 * from a 0-valued cell (neutral mean), which renders white. */

import { ABSENT_COLOR, diverging } from "../colors.js";
import type { SentimentDocument } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CELL = 18;
const LABEL_GUTTER = 140;
const DAY_GUTTER = 80;

export function renderHeatmap(container: HTMLElement, document_: SentimentDocument): void {
  container.textContent = "";
  if (document_.labels.length === 0 || document_.days.length === 0) {
    const empty = container.ownerDocument.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No articles in this window.";
    container.appendChild(empty);
    return;
  }

  const width = DAY_GUTTER + document_.labels.length * CELL + 10;
  const height = LABEL_GUTTER + document_.days.length * CELL + 10;
  const svg = container.ownerDocument.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "heatmap-view");

  document_.labels.forEach((label, col) => {
    const text = container.ownerDocument.createElementNS(SVG_NS, "text");
    text.setAttribute("class", "col-label");
    text.setAttribute("x", (DAY_GUTTER + col * CELL + CELL / 2).toFixed(1));
    text.setAttribute("y", (LABEL_GUTTER - 6).toFixed(1));
    text.setAttribute(
      "transform",
      `rotate(-60 ${(DAY_GUTTER + col * CELL + CELL / 2).toFixed(1)} ${(LABEL_GUTTER - 6).toFixed(1)})`,
    );
    text.textContent = label;
    svg.appendChild(text);
  });

  document_.days.forEach((day, row) => {
    const text = container.ownerDocument.createElementNS(SVG_NS, "text");
    text.setAttribute("class", "row-label");
    text.setAttribute("x", "4");
    text.setAttribute("y", (LABEL_GUTTER + row * CELL + CELL - 5).toFixed(1));
    text.textContent = day;
    svg.appendChild(text);

    document_.cells[row].forEach((value, col) => {
      const rect = container.ownerDocument.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", (DAY_GUTTER + col * CELL).toFixed(1));
      rect.setAttribute("y", (LABEL_GUTTER + row * CELL).toFixed(1));
      rect.setAttribute("width", CELL.toString());
      rect.setAttribute("height", CELL.toString());
      rect.setAttribute("data-day", day);
      rect.setAttribute("data-label", document_.labels[col]);
      if (value === null) {
        rect.setAttribute("class", "cell absent");
        rect.setAttribute("fill", ABSENT_COLOR);
      } else {
        rect.setAttribute("class", "cell");
        rect.setAttribute("fill", diverging(value));
        rect.setAttribute("data-value", value.toString());
      }
      const tooltip = container.ownerDocument.createElementNS(SVG_NS, "title");
      tooltip.textContent =
        value === null
          ? `${day} · ${document_.labels[col]} · no articles`
          : `${day} · ${document_.labels[col]} · ${value.toFixed(3)}`;
      rect.appendChild(tooltip);
      svg.appendChild(rect);
    });
  });

  container.appendChild(svg);
}
