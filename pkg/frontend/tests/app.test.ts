import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App, SLIDER_DEBOUNCE_MS, type AppElements } from "../src/app.js";
import { parseState } from "../src/state.js";
import {
  HEATMAP_FIXTURE,
  TOPICS_FIXTURE,
  TRENDS_FIXTURE,
  TWO_NODE_PROPAGATION,
  jsonResponse,
} from "./fixtures.js";

function buildElements(): AppElements {
  document.body.innerHTML = `
    <select id="event"></select>
    <select id="tab">
      <option value="propagation">propagation</option>
      <option value="trends">trends</option>
      <option value="sentiment">sentiment</option>
      <option value="topics">topics</option>
    </select>
    <select id="barrier">
      <option value="geographic">geographic</option>
      <option value="economic">economic</option>
      <option value="political">political</option>
    </select>
    <input id="month" type="month" />
    <input id="tau" type="range" min="0" max="1" step="0.05" />
    <input id="k" type="range" min="2" max="20" step="1" />
    <input id="cumulative" type="checkbox" />
    <main id="view"></main>
  `;
  const byId = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;
  return {
    event: byId<HTMLSelectElement>("event"),
    tab: byId<HTMLSelectElement>("tab"),
    barrier: byId<HTMLSelectElement>("barrier"),
    month: byId<HTMLInputElement>("month"),
    tau: byId<HTMLInputElement>("tau"),
    k: byId<HTMLInputElement>("k"),
    cumulative: byId<HTMLInputElement>("cumulative"),
    view: byId<HTMLElement>("view"),
  };
}

function stubApi(log: string[]): ApiClient {
  return new ApiClient("", async (url) => {
    log.push(url);
    if (url.startsWith("/api/events")) return jsonResponse(["conflict"]);
    if (url.includes("/api/analyses/propagation")) return jsonResponse(TWO_NODE_PROPAGATION);
    if (url.includes("/api/analyses/trends")) return jsonResponse(TRENDS_FIXTURE);
    if (url.includes("/api/analyses/sentiment")) return jsonResponse(HEATMAP_FIXTURE);
    if (url.includes("/api/analyses/topics")) return jsonResponse(TOPICS_FIXTURE);
    return jsonResponse({ error: "not_found", message: url, details: {} }, 404);
  });
}

async function flush(): Promise<void> {
  await Promise.resolve();
  await Promise.resolve();
  await Promise.resolve();
}

function analysisRequests(log: string[]): string[] {
  return log.filter((url) => url.includes("/api/analyses/"));
}

describe("App", () => {
  let log: string[];
  let elements: AppElements;

  beforeEach(() => {
    log = [];
    window.history.replaceState(null, "", "?tab=propagation&event=conflict");
    elements = buildElements();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  async function startApp(): Promise<App> {
    const app = new App(stubApi(log), elements, window);
    await app.start();
    await flush();
    return app;
  }

  it("issues one initial request and renders the document", async () => {
    await startApp();
    expect(analysisRequests(log)).toHaveLength(1);
    expect(elements.view.querySelectorAll("circle.node")).toHaveLength(2);
  });

  it("a tau slider drag issues exactly one request with the new value", async () => {
    await startApp();
    vi.useFakeTimers();
    const before = analysisRequests(log).length;

    // a drag fires many input events; only the settled value may query
    for (const value of ["0.55", "0.6", "0.65", "0.7"]) {
      elements.tau.value = value;
      elements.tau.dispatchEvent(new Event("input", { bubbles: true }));
    }
    vi.advanceTimersByTime(SLIDER_DEBOUNCE_MS + 10);
    vi.useRealTimers();
    await flush();

    const issued = analysisRequests(log).slice(before);
    expect(issued).toHaveLength(1);
    expect(issued[0]).toContain("tau=0.7");
  });

  it("tau changes below the debounce window never query", async () => {
    await startApp();
    vi.useFakeTimers();
    const before = analysisRequests(log).length;
    elements.tau.value = "0.9";
    elements.tau.dispatchEvent(new Event("input", { bubbles: true }));
    vi.advanceTimersByTime(SLIDER_DEBOUNCE_MS - 50);
    vi.useRealTimers();
    await flush();
    expect(analysisRequests(log)).toHaveLength(before);
  });

  it("flipping cumulative on the trends tab re-queries with the flag", async () => {
    window.history.replaceState(null, "", "?tab=trends&event=conflict");
    await startApp();
    const before = analysisRequests(log).length;
    elements.cumulative.checked = true;
    elements.cumulative.dispatchEvent(new Event("change", { bubbles: true }));
    await flush();
    const issued = analysisRequests(log).slice(before);
    expect(issued).toHaveLength(1);
    expect(issued[0]).toContain("cumulative=true");
  });

  it("serializes state changes into the URL", async () => {
    const app = await startApp();
    app.update({ barrier: "economic" });
    await flush();
    const state = parseState(window.location.search.replace(/^\?/, ""));
    expect(state.barrier).toBe("economic");
    expect(state.tab).toBe("propagation");
  });

  it("community selection updates the URL without a new request", async () => {
    const app = await startApp();
    const before = analysisRequests(log).length;
    app.update({ selected: 0 });
    await flush();
    expect(analysisRequests(log)).toHaveLength(before);
    expect(window.location.search).toContain("selected=0");
  });

  it("renders the error panel from the API envelope", async () => {
    window.history.replaceState(null, "", "?tab=trends&event=conflict");
    const failing = new ApiClient("", async (url) => {
      if (url.startsWith("/api/events")) return jsonResponse(["conflict"]);
      return jsonResponse(
        { error: "validation_error", message: "bad window", details: {} },
        400,
      );
    });
    const app = new App(failing, elements, window);
    await app.start();
    await flush();
    const panel = elements.view.querySelector(".error-panel") as HTMLElement;
    expect(panel).not.toBeNull();
    expect(panel.dataset.errorCode).toBe("validation_error");
  });
});
