import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SnapshotPoller, DEFAULT_POLL_INTERVAL_MS } from "../src/poller.js";
import type { Snapshot } from "../src/types.js";
import { fakeFetch, snapshot } from "./helpers.js";

function poller(
  responses: Array<{ status: number; body: unknown } | undefined>,
): { poller: SnapshotPoller; renders: Snapshot[]; staleReasons: string[]; freshes: number } {
  const queue = [...responses];
  const client = new ApiClient(
    "http://svc",
    fakeFetch(() => queue.shift()),
  );
  const renders: Snapshot[] = [];
  const staleReasons: string[] = [];
  const state = { freshes: 0 };
  const p = new SnapshotPoller(client, "w1", {
    onChange: (s) => renders.push(s),
    onStale: (reason) => staleReasons.push(reason),
    onFresh: () => {
      state.freshes += 1;
    },
  });
  return { poller: p, renders, staleReasons, get freshes() { return state.freshes; } } as never;
}

describe("SnapshotPoller", () => {
  it("defaults to a 2 second interval", () => {
    expect(DEFAULT_POLL_INTERVAL_MS).toBe(2000);
  });

  it("renders on the first tick and on version changes only", async () => {
    const { poller: p, renders } = poller([
      { status: 200, body: snapshot(0) },
      { status: 200, body: snapshot(0) },
      { status: 200, body: snapshot(1) },
    ]);
    expect(await p.tick()).toBe("updated");
    expect(await p.tick()).toBe("unchanged");
    expect(await p.tick()).toBe("updated");
    expect(renders.map((s) => s.version)).toEqual([0, 1]);
  });

  it("flags stale data on failure and recovers on the next success", async () => {
    const { poller: p, renders, staleReasons } = poller([
      { status: 200, body: snapshot(0) },
      undefined, // network failure
      { status: 200, body: snapshot(2) },
    ]);
    await p.tick();
    expect(await p.tick()).toBe("stale");
    expect(p.stale).toBe(true);
    expect(staleReasons).toHaveLength(1);

    expect(await p.tick()).toBe("updated");
    expect(p.stale).toBe(false);
    expect(renders.map((s) => s.version)).toEqual([0, 2]);
  });

  it("treats http errors as stale too", async () => {
    const { poller: p } = poller([{ status: 500, body: { detail: "boom" } }]);
    expect(await p.tick()).toBe("stale");
  });

  it("a quadrant change arrives with the version bump", async () => {
    const { poller: p, renders } = poller([
      { status: 200, body: snapshot(1, "Q2") },
      { status: 200, body: snapshot(2, "Q4") },
    ]);
    await p.tick();
    await p.tick();
    expect(renders[0].diagram.points[0].quadrant).toBe("Q2");
    expect(renders[1].diagram.points[0].quadrant).toBe("Q4");
  });
});
