/** Application shell: binds controls to QueryState, keeps the state in the
 * URL, issues exactly one API request per state change, and routes the
 * resulting document to the matching renderer. All displayed numbers come
 * straight from analysis documents — nothing is recomputed client-side. */

import { ApiClient, ApiError } from "./api.js";
import { debounce } from "./debounce.js";
import { renderError } from "./render/error.js";
import { renderHeatmap } from "./render/heatmap.js";
import { renderPropagation } from "./render/propagation.js";
import { renderTopics } from "./render/topics.js";
import { renderTrends } from "./render/trends.js";
import {
  parseState,
  type QueryState,
  requestParams,
  serializeState,
} from "./state.js";
import type {
  PropagationDocument,
  SentimentDocument,
  TopicsDocument,
  TrendsDocument,
} from "./types.js";

export const SLIDER_DEBOUNCE_MS = 250;

export interface AppElements {
  event: HTMLSelectElement;
  tab: HTMLSelectElement;
  barrier: HTMLSelectElement;
  month: HTMLInputElement;
  tau: HTMLInputElement;
  k: HTMLInputElement;
  cumulative: HTMLInputElement;
  view: HTMLElement;
}

export class App {
  private state: QueryState;
  private readonly api: ApiClient;
  private readonly elements: AppElements;
  private readonly window_: Window;

  constructor(api: ApiClient, elements: AppElements, window_: Window) {
    this.api = api;
    this.elements = elements;
    this.window_ = window_;
    this.state = parseState(window_.location.search.replace(/^\?/, ""));
  }

  async start(): Promise<void> {
    const events = await this.api.events();
    for (const event of events) {
      const option = this.elements.event.ownerDocument.createElement("option");
      option.value = event;
      option.textContent = event;
      this.elements.event.appendChild(option);
    }
    if (!this.state.event && events.length > 0) {
      this.state = { ...this.state, event: events[0] };
    }
    this.bindControls();
    this.window_.addEventListener("popstate", () => {
      this.state = parseState(this.window_.location.search.replace(/^\?/, ""));
      this.syncControls();
      void this.refresh();
    });
    this.syncControls();
    await this.refresh();
  }

  /** Apply a partial state change; re-queries only when request-relevant
   * parameters changed. */
  update(patch: Partial<QueryState>): void {
    const next = { ...this.state, ...patch };
    const requery =
      JSON.stringify(requestParams(next)) !== JSON.stringify(requestParams(this.state)) ||
      next.tab !== this.state.tab;
    this.state = next;
    this.pushUrl();
    if (requery) void this.refresh();
  }

  private bindControls(): void {
    const { event, tab, barrier, month, tau, k, cumulative } = this.elements;
    event.addEventListener("change", () => this.update({ event: event.value }));
    tab.addEventListener("change", () =>
      this.update({ tab: tab.value as QueryState["tab"], selected: null }),
    );
    barrier.addEventListener("change", () =>
      this.update({ barrier: barrier.value as QueryState["barrier"] }),
    );
    month.addEventListener("change", () => this.update({ month: month.value }));
    cumulative.addEventListener("change", () =>
      this.update({ cumulative: cumulative.checked }),
    );
    const debouncedTau = debounce(
      (value: number) => this.update({ tau: value }),
      SLIDER_DEBOUNCE_MS,
    );
    tau.addEventListener("input", () => debouncedTau(Number(tau.value)));
    const debouncedK = debounce(
      (value: number) => this.update({ k: value }),
      SLIDER_DEBOUNCE_MS,
    );
    k.addEventListener("input", () => debouncedK(Number(k.value)));
  }

  private syncControls(): void {
    this.elements.event.value = this.state.event;
    this.elements.tab.value = this.state.tab;
    this.elements.barrier.value = this.state.barrier;
    this.elements.month.value = this.state.month;
    this.elements.tau.value = this.state.tau.toString();
    this.elements.k.value = this.state.k.toString();
    this.elements.cumulative.checked = this.state.cumulative;
  }

  private pushUrl(): void {
    this.window_.history.pushState(null, "", `?${serializeState(this.state)}`);
  }

  private async refresh(): Promise<void> {
    const view = this.elements.view;
    try {
      const document_ = await this.api.analysis(this.state.tab, requestParams(this.state));
      if (document_ === null) return; // superseded by a newer request
      switch (document_.analysis) {
        case "propagation":
          renderPropagation(view, document_ as PropagationDocument, {
            onSelectCommunity: (community) => this.update({ selected: community }),
          });
          break;
        case "trends":
          renderTrends(view, document_ as TrendsDocument);
          break;
        case "sentiment":
          renderHeatmap(view, document_ as SentimentDocument);
          break;
        case "topics":
          renderTopics(view, document_ as TopicsDocument, {
            onSelectTopic: (topicId) => this.update({ selected: topicId }),
          });
          break;
      }
    } catch (error) {
      if (error instanceof ApiError) {
        renderError(view, error.body);
      } else {
        renderError(view, {
          error: "network_error",
          message: String(error),
          details: {},
        });
      }
    }
  }
}

export function bootstrap(window_: Window): App {
  const doc = window_.document;
  const byId = <T extends HTMLElement>(id: string) => doc.getElementById(id) as T;
  const app = new App(
    new ApiClient("", (url) => window_.fetch(url)),
    {
      event: byId<HTMLSelectElement>("event"),
      tab: byId<HTMLSelectElement>("tab"),
      barrier: byId<HTMLSelectElement>("barrier"),
      month: byId<HTMLInputElement>("month"),
      tau: byId<HTMLInputElement>("tau"),
      k: byId<HTMLInputElement>("k"),
      cumulative: byId<HTMLInputElement>("cumulative"),
      view: byId<HTMLElement>("view"),
    },
    window_,
  );
  void app.start();
  return app;
}
