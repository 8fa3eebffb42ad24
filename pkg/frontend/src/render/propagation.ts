/** Interactive propagation-network view: force-directed layout, nodes
 * colored by community, community legend, click-to-select. */

import { categorical } from "../colors.js";
import { forceLayout } from "../layout.js";
import type { PropagationDocument } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 800;
const HEIGHT = 520;

export interface PropagationCallbacks {
  onSelectCommunity?: (community: number | null) => void;
}

export function renderPropagation(
  container: HTMLElement,
  document_: PropagationDocument,
  callbacks: PropagationCallbacks = {},
): void {
  container.textContent = "";

  if (document_.nodes.length === 0) {
    const empty = container.ownerDocument.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No articles in this window produced a propagation graph.";
    container.appendChild(empty);
    return;
  }

  const svg = container.ownerDocument.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "propagation-view");

  const positions = forceLayout(
    document_.nodes.map((n) => n.id),
    document_.edges.map((e) => [e.src, e.dst]),
    WIDTH,
    HEIGHT,
  );

  for (const edge of document_.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const line = container.ownerDocument.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "edge");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke", "#999");
    line.setAttribute("stroke-opacity", "0.6");
    line.setAttribute("stroke-width", Math.max(0.5, edge.weight * 2).toFixed(2));
    svg.appendChild(line);
  }

  for (const node of document_.nodes) {
    const p = positions.get(node.id);
    if (!p) continue;
    const circle = container.ownerDocument.createElementNS(SVG_NS, "circle");
    circle.setAttribute("class", "node");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", "6");
    const community = node.community ?? -1;
    circle.setAttribute("fill", community >= 0 ? categorical(community) : "#666");
    circle.setAttribute("data-node-id", node.id);
    circle.setAttribute("data-community", community.toString());
    const tooltip = container.ownerDocument.createElementNS(SVG_NS, "title");
    tooltip.textContent = `${node.id} · ${node.label} · ${node.published_at}`;
    circle.appendChild(tooltip);
    circle.addEventListener("click", () => {
      callbacks.onSelectCommunity?.(community >= 0 ? community : null);
    });
    svg.appendChild(circle);
  }

  container.appendChild(svg);

  const legend = container.ownerDocument.createElement("ul");
  legend.className = "legend";
  document_.communities.forEach((members, index) => {
    const item = container.ownerDocument.createElement("li");
    item.className = "legend-item";
    item.dataset.community = index.toString();
    const swatch = container.ownerDocument.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = categorical(index);
    item.appendChild(swatch);
    item.appendChild(
      container.ownerDocument.createTextNode(
        ` community ${index} (${members.length} articles)`,
      ),
    );
    item.addEventListener("click", () => callbacks.onSelectCommunity?.(index));
    legend.appendChild(item);
  });
  container.appendChild(legend);

  const summary = container.ownerDocument.createElement("p");
  summary.className = "summary";
  summary.textContent =
    `${document_.nodes.length} nodes · ${document_.edges.length} edges · ` +
    `${document_.communities.length} communities · ` +
    `modularity ${document_.modularity.toFixed(3)}`;
  container.appendChild(summary);
}
