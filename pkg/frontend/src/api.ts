/** Thin API client. At most one in-flight request per analysis tab; stale
 * responses are discarded by sequence number so a slow early response can
 * never overwrite a newer one. */

import type { AnalysisDocument, AnalysisName, ApiErrorBody } from "./types.js";

export type FetchLike = (url: string) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.body = body;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;
  private readonly sequence = new Map<AnalysisName, number>();

  constructor(baseUrl = "", fetchImpl: FetchLike = (url) => fetch(url)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  async events(): Promise<string[]> {
    return (await this.getJson("/api/events")) as string[];
  }

  /** Run one analysis; resolves null when a newer request for the same tab
   * superseded this one before it finished. */
  async analysis(
    name: AnalysisName,
    params: Record<string, string>,
  ): Promise<AnalysisDocument | null> {
    const seq = (this.sequence.get(name) ?? 0) + 1;
    this.sequence.set(name, seq);
    const query = new URLSearchParams(params).toString();
    const document = (await this.getJson(
      `/api/analyses/${name}?${query}`,
    )) as AnalysisDocument;
    if (this.sequence.get(name) !== seq) return null; // stale
    return document;
  }

  private async getJson(path: string): Promise<unknown> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) {
      let body: ApiErrorBody;
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        body = { error: "http_error", message: `HTTP ${response.status}`, details: {} };
      }
      throw new ApiError(response.status, body);
    }
    return response.json();
  }
}
