// Shared fakes: an in-memory fetch and canned server payloads.

import type { FetchLike, FetchResponseLike } from "../src/api.js";
import type { JoinViewPayload, SessionMetadata, Snapshot } from "../src/types.js";

export type Route = (url: string, init?: RequestInit) => { status: number; body: unknown } | undefined;

export function fakeFetch(route: Route): FetchLike {
  return async (url, init) => {
    const result = route(url, init);
    if (!result) throw new TypeError(`fetch failed: ${url}`);
    const response: FetchResponseLike = {
      ok: result.status >= 200 && result.status < 300,
      status: result.status,
      json: async () => result.body,
    };
    return response;
  };
}

export function metadata(overrides: Partial<SessionMetadata> = {}): SessionMetadata {
  return {
    id: "w1",
    state: "scoring_open",
    roster: ["e1", "e2"],
    assumptions: [
      { id: "BioRES", title: "Bioenergy resource", statement: "Domestic bioenergy available." },
      { id: "CCS_mbr", title: "CCS build rate", statement: "Maximum CCS build rate." },
    ],
    criteria: {
      name: "nusap-5",
      criteria: [
        {
          id: "proxy",
          name: "Proxy",
          description: "Closeness of the measure.",
          scale_anchors: ["none", "poor", "fair", "good", "exact"],
        },
      ],
    },
    thresholds: { pedigree: 0.5, influence: 0.5 },
    version: 0,
    ...overrides,
  };
}

export function snapshot(version: number, quadrant: "Q1" | "Q2" | "Q3" | "Q4" = "Q4"): Snapshot {
  return {
    session: "w1",
    version,
    state: "scoring_open",
    results: [
      {
        assumption: "BioRES",
        strength: 0.3,
        band: "weak",
        criteria: { proxy: { median: 1, iqr: 2, experts: 3 } },
        gaps: [],
      },
    ],
    diagram: {
      thresholds: { pedigree: 0.5, influence: 0.5 },
      points: [
        { assumption: "BioRES", pedigree: 0.3, influence: 0.9, quadrant, source: "computed:EE" },
      ],
    },
  };
}

export function joinPayload(overrides: Partial<JoinViewPayload> = {}): JoinViewPayload {
  return {
    metadata: metadata(),
    snapshot: snapshot(0),
    expert: "e1",
    my_scores: [],
    read_only: false,
    ...overrides,
  };
}
