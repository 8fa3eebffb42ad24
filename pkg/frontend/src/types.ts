/** JSON shapes served by the analytics HTTP API. */

export type AnalysisName = "propagation" | "trends" | "sentiment" | "topics";

export type BarrierKind = "geographic" | "economic" | "political";

export interface PropagationNode {
  id: string;
  published_at: string;
  label: string;
  community: number | null;
}

export interface PropagationEdge {
  src: string;
  dst: string;
  weight: number;
}

export interface PropagationDocument {
  analysis: "propagation";
  nodes: PropagationNode[];
  edges: PropagationEdge[];
  communities: string[][];
  modularity: number;
  config: {
    tau: number;
    max_lag_seconds: number | null;
    mode: string;
    max_nodes: number;
  };
}

export interface TrendsDocument {
  analysis: "trends";
  kind: BarrierKind;
  bins: string[];
  series: Record<string, number[]>;
  cumulative: boolean;
}

export interface SentimentDocument {
  analysis: "sentiment";
  kind: BarrierKind;
  days: string[];
  labels: string[];
  /** rows = days, columns = labels; null marks "no articles", distinct from 0 */
  cells: (number | null)[][];
}

export interface TopicSummary {
  id: number;
  size: number;
  members: string[];
  terms: [string, number][];
  coherence: number;
}

export interface TopicsDocument {
  analysis: "topics";
  k: number;
  m: number;
  topics: TopicSummary[];
  mean_coherence: number;
  diversity: number;
  temporal?: {
    days: string[];
    counts: Record<string, number[]>;
  };
}

export type AnalysisDocument =
  | PropagationDocument
  | TrendsDocument
  | SentimentDocument
  | TopicsDocument;

export interface ApiErrorBody {
  error: string;
  message: string;
  details: Record<string, unknown>;
}

export interface LabelCoverage {
  label: string;
  articles: number;
}
