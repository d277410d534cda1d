import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { fakeFetch, snapshot } from "./helpers.js";

describe("ApiClient", () => {
  it("parses successful responses", async () => {
    const client = new ApiClient(
      "http://svc",
      fakeFetch((url) => (url === "http://svc/sessions/w1/snapshot" ? { status: 200, body: snapshot(3) } : undefined)),
    );
    const result = await client.snapshot("w1");
    expect(result.version).toBe(3);
  });

  it("throws ApiError carrying the server detail verbatim", async () => {
    const client = new ApiClient(
      "http://svc",
      fakeFetch(() => ({ status: 422, body: { detail: "score 5 outside score scale 0..4" } })),
    );
    const err = await client
      .submitScore("w1", { expert: "e1", assumption: "a", criterion: "c", score: 5 })
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(422);
    expect(err.detail).toContain("score scale 0..4");
  });

  it("propagates network failures as plain errors", async () => {
    const client = new ApiClient("http://svc", fakeFetch(() => undefined));
    await expect(client.metadata("w1")).rejects.toThrow(TypeError);
  });

  it("url-encodes the expert id on join", async () => {
    let seen = "";
    const client = new ApiClient(
      "http://svc",
      fakeFetch((url) => {
        seen = url;
        return { status: 200, body: {} };
      }),
    );
    await client.join("w1", "dr stone/2");
    expect(seen).toBe("http://svc/sessions/w1/view?expert=dr%20stone%2F2");
  });

  it("posts score submissions as JSON", async () => {
    let captured: RequestInit | undefined;
    const client = new ApiClient(
      "http://svc",
      fakeFetch((_url, init) => {
        captured = init;
        return { status: 201, body: { record_id: 1, version: 1 } };
      }),
    );
    await client.submitScore("w1", { expert: "e1", assumption: "a", criterion: "c", score: 2 });
    expect(captured?.method).toBe("POST");
    expect(JSON.parse(String(captured?.body))).toEqual({
      expert: "e1",
      assumption: "a",
      criterion: "c",
      score: 2,
    });
  });
});
