/** Query state serialized to the URL so views are shareable and the
 * back button works. One state → one API request. */

import type { AnalysisName, BarrierKind } from "./types.js";

export interface QueryState {
  event: string;
  tab: AnalysisName;
  barrier: BarrierKind;
  /** first month shown, as "YYYY-MM"; the window is that whole month */
  month: string;
  tau: number;
  k: number;
  cumulative: boolean;
  /** selected community (propagation) or topic (topics) id, if any */
  selected: number | null;
}

export const DEFAULT_STATE: QueryState = {
  event: "",
  tab: "trends",
  barrier: "geographic",
  month: "2023-11",
  tau: 0.5,
  k: 10,
  cumulative: false,
  selected: null,
};

const TABS: AnalysisName[] = ["propagation", "trends", "sentiment", "topics"];
const BARRIERS: BarrierKind[] = ["geographic", "economic", "political"];

export function serializeState(state: QueryState): string {
  const params = new URLSearchParams();
  params.set("event", state.event);
  params.set("tab", state.tab);
  params.set("barrier", state.barrier);
  params.set("month", state.month);
  params.set("tau", state.tau.toString());
  params.set("k", state.k.toString());
  if (state.cumulative) params.set("cumulative", "1");
  if (state.selected !== null) params.set("selected", state.selected.toString());
  return params.toString();
}

export function parseState(query: string): QueryState {
  const params = new URLSearchParams(query);
  const tab = params.get("tab") ?? DEFAULT_STATE.tab;
  const barrier = params.get("barrier") ?? DEFAULT_STATE.barrier;
  const tau = Number(params.get("tau") ?? DEFAULT_STATE.tau);
  const k = Number(params.get("k") ?? DEFAULT_STATE.k);
  const selectedRaw = params.get("selected");
  const month = params.get("month") ?? DEFAULT_STATE.month;
  return {
    event: params.get("event") ?? DEFAULT_STATE.event,
    tab: TABS.includes(tab as AnalysisName) ? (tab as AnalysisName) : DEFAULT_STATE.tab,
    barrier: BARRIERS.includes(barrier as BarrierKind)
      ? (barrier as BarrierKind)
      : DEFAULT_STATE.barrier,
    month: /^\d{4}-\d{2}$/.test(month) ? month : DEFAULT_STATE.month,
    tau: Number.isFinite(tau) && tau >= 0 && tau <= 1 ? tau : DEFAULT_STATE.tau,
    k: Number.isInteger(k) && k >= 1 ? k : DEFAULT_STATE.k,
    cumulative: params.get("cumulative") === "1",
    selected:
      selectedRaw !== null && Number.isInteger(Number(selectedRaw))
        ? Number(selectedRaw)
        : null,
  };
}

/** Half-open [start, end) window covering the state's month, ISO UTC. */
export function monthWindow(month: string): { from: string; to: string } {
  const [year, mon] = month.split("-").map(Number);
  const pad = (n: number) => n.toString().padStart(2, "0");
  const nextYear = mon === 12 ? year + 1 : year;
  const nextMon = mon === 12 ? 1 : mon + 1;
  return {
    from: `${year}-${pad(mon)}-01T00:00:00Z`,
    to: `${nextYear}-${pad(nextMon)}-01T00:00:00Z`,
  };
}

/** API query parameters for the state's active tab. Only parameters the
 * analysis consumes are included, so unrelated control changes do not
 * change the request. */
export function requestParams(state: QueryState): Record<string, string> {
  const { from, to } = monthWindow(state.month);
  const base: Record<string, string> = {
    event: state.event,
    barrier: state.barrier,
    from,
    to,
  };
  if (state.tab === "propagation") base.tau = state.tau.toString();
  if (state.tab === "trends" && state.cumulative) base.cumulative = "true";
  if (state.tab === "topics") base.k = state.k.toString();
  return base;
}
