import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { TRENDS_FIXTURE, jsonResponse } from "./fixtures.js";

describe("ApiClient", () => {
  it("fetches events", async () => {
    const log: string[] = [];
    const client = new ApiClient("", async (url) => {
      log.push(url);
      return jsonResponse(["conflict"]);
    });
    expect(await client.events()).toEqual(["conflict"]);
    expect(log).toEqual(["/api/events"]);
  });

  it("builds analysis URLs from params", async () => {
    const log: string[] = [];
    const client = new ApiClient("", async (url) => {
      log.push(url);
      return jsonResponse(TRENDS_FIXTURE);
    });
    const document_ = await client.analysis("trends", {
      event: "conflict",
      from: "2023-11-01T00:00:00Z",
      to: "2023-12-01T00:00:00Z",
    });
    expect(document_?.analysis).toBe("trends");
    expect(log[0]).toContain("/api/analyses/trends?");
    expect(log[0]).toContain("event=conflict");
  });

  it("raises ApiError with the error envelope", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ error: "unknown_event", message: "unknown event 'x'", details: {} }, 404),
    );
    const error = await client
      .analysis("trends", { event: "x" })
      .then(() => null, (e) => e as ApiError);
    expect(error).toBeInstanceOf(ApiError);
    expect(error?.status).toBe(404);
    expect(error?.body.error).toBe("unknown_event");
  });

  it("discards stale responses when a newer request supersedes them", async () => {
    let resolveFirst!: (r: Response) => void;
    const first = new Promise<Response>((resolve) => {
      resolveFirst = resolve;
    });
    let call = 0;
    const client = new ApiClient("", (url) => {
      call += 1;
      if (call === 1) return first;
      void url;
      return Promise.resolve(jsonResponse(TRENDS_FIXTURE));
    });
    const slow = client.analysis("trends", { event: "old" });
    const fast = client.analysis("trends", { event: "new" });
    resolveFirst(jsonResponse({ ...TRENDS_FIXTURE, bins: ["stale"] }));
    expect(await fast).not.toBeNull();
    expect(await slow).toBeNull(); // superseded
  });

  it("sequences are independent per analysis tab", async () => {
    const client = new ApiClient("", async () => jsonResponse(TRENDS_FIXTURE));
    const trends = client.analysis("trends", { event: "e" });
    const topics = client.analysis("topics", { event: "e" });
    expect(await trends).not.toBeNull();
    expect(await topics).not.toBeNull();
  });
});
