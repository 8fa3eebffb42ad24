import type {
  PropagationDocument,
  SentimentDocument,
  TopicsDocument,
  TrendsDocument,
} from "../src/types.js";

export const TWO_NODE_PROPAGATION: PropagationDocument = {
  analysis: "propagation",
  nodes: [
    { id: "a", published_at: "2023-11-01T00:00:00Z", label: "Israel", community: 0 },
    { id: "b", published_at: "2023-11-01T06:00:00Z", label: "Qatar", community: 0 },
  ],
  edges: [{ src: "a", dst: "b", weight: 0.8 }],
  communities: [["a", "b"]],
  modularity: 0,
  config: { tau: 0.5, max_lag_seconds: 604800, mode: "concepts", max_nodes: 2000 },
};

export const TWO_COMMUNITY_PROPAGATION: PropagationDocument = {
  analysis: "propagation",
  nodes: [
    { id: "a0", published_at: "2023-11-01T00:00:00Z", label: "Israel", community: 0 },
    { id: "a1", published_at: "2023-11-01T01:00:00Z", label: "Israel", community: 0 },
    { id: "b0", published_at: "2023-11-02T00:00:00Z", label: "Russia", community: 1 },
    { id: "b1", published_at: "2023-11-02T01:00:00Z", label: "Russia", community: 1 },
  ],
  edges: [
    { src: "a0", dst: "a1", weight: 0.9 },
    { src: "b0", dst: "b1", weight: 0.7 },
  ],
  communities: [["a0", "a1"], ["b0", "b1"]],
  modularity: 0.5,
  config: { tau: 0.5, max_lag_seconds: 604800, mode: "concepts", max_nodes: 2000 },
};

export const EMPTY_PROPAGATION: PropagationDocument = {
  analysis: "propagation",
  nodes: [],
  edges: [],
  communities: [],
  modularity: 0,
  config: { tau: 0.5, max_lag_seconds: 604800, mode: "concepts", max_nodes: 2000 },
};

export const TRENDS_FIXTURE: TrendsDocument = {
  analysis: "trends",
  kind: "geographic",
  bins: ["2023-11-01", "2023-11-02", "2023-11-03"],
  series: {
    Israel: [2, 0, 1],
    Russia: [0, 1, 0],
  },
  cumulative: false,
};

export const HEATMAP_FIXTURE: SentimentDocument = {
  analysis: "sentiment",
  kind: "geographic",
  days: ["2023-11-01", "2023-11-02"],
  labels: ["Israel", "Russia"],
  cells: [
    [0.0, null],
    [-0.4, 0.6],
  ],
};

export const TOPICS_FIXTURE: TopicsDocument = {
  analysis: "topics",
  k: 2,
  m: 3,
  topics: [
    {
      id: 0,
      size: 3,
      members: ["a0", "a1", "a2"],
      terms: [["ceasefire", 3.1], ["talks", 2.0], ["envoy", 1.2]],
      coherence: 0.8,
    },
    {
      id: 1,
      size: 2,
      members: ["b0", "b1"],
      terms: [["markets", 2.5], ["oil", 1.9], ["exports", 1.0]],
      coherence: 0.6,
    },
  ],
  mean_coherence: 0.7,
  diversity: 1.0,
  temporal: {
    days: ["2023-11-01", "2023-11-02"],
    counts: { "0": [2, 1], "1": [0, 2] },
  },
};

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
