import { describe, expect, it } from "vitest";

import { quadrantCounts, renderDiagram, renderDisagreement } from "../src/diagram.js";
import { renderScoringForm, renderStatusLine } from "../src/scoring.js";
import { SessionView } from "../src/session.js";
import { ApiClient } from "../src/api.js";
import type { DiagramJson } from "../src/types.js";
import { fakeFetch, joinPayload, metadata, snapshot } from "./helpers.js";

function diagramWith(points: DiagramJson["points"]): DiagramJson {
  return { thresholds: { pedigree: 0.5, influence: 0.5 }, points };
}

describe("renderDiagram", () => {
  it("draws one marker per point plus two threshold lines and the Q4 zone", () => {
    const svg = renderDiagram(
      diagramWith([
        { assumption: "a1", pedigree: 0.2, influence: 0.9, quadrant: "Q4", source: "elicited" },
        { assumption: "a2", pedigree: 0.8, influence: 0.2, quadrant: "Q1", source: "elicited" },
      ]),
    );
    expect(svg.match(/<circle class="point/g)).toHaveLength(2);
    expect(svg.match(/class="threshold"/g)).toHaveLength(2);
    expect(svg).toContain('class="q4-zone"');
    expect(svg).toContain("pedigree strength");
  });

  it("styles danger strictly from the server's quadrant label", () => {
    // Deliberately inconsistent coordinates: the label wins, nothing is recomputed.
    const svg = renderDiagram(
      diagramWith([
        { assumption: "mislabeled", pedigree: 0.9, influence: 0.1, quadrant: "Q4", source: "elicited" },
        { assumption: "calm", pedigree: 0.1, influence: 0.9, quadrant: "Q1", source: "elicited" },
      ]),
    );
    expect(svg).toContain('class="point danger" data-assumption="mislabeled"');
    expect(svg).toContain('class="point" data-assumption="calm"');
  });

  it("highlights requested assumptions", () => {
    const svg = renderDiagram(
      diagramWith([{ assumption: "a1", pedigree: 0.2, influence: 0.9, quadrant: "Q4", source: "x" }]),
      new Set(["a1"]),
    );
    expect(svg).toContain("highlight");
  });

  it("escapes markup in assumption ids", () => {
    const svg = renderDiagram(
      diagramWith([{ assumption: "<evil>", pedigree: 0.2, influence: 0.9, quadrant: "Q4", source: "x" }]),
    );
    expect(svg).not.toContain("<evil>");
    expect(svg).toContain("&lt;evil&gt;");
  });

  it("counts quadrants from labels", () => {
    const counts = quadrantCounts(
      diagramWith([
        { assumption: "a", pedigree: 0, influence: 0, quadrant: "Q4", source: "x" },
        { assumption: "b", pedigree: 0, influence: 0, quadrant: "Q4", source: "x" },
        { assumption: "c", pedigree: 0, influence: 0, quadrant: "Q2", source: "x" },
      ]),
    );
    expect(counts).toEqual({ Q1: 0, Q2: 1, Q3: 0, Q4: 2 });
  });
});

describe("renderDisagreement", () => {
  it("tabulates medians and IQRs exactly as served", () => {
    const html = renderDisagreement(snapshot(1).results);
    expect(html).toContain('data-assumption="BioRES"');
    expect(html).toContain('data-iqr="2"');
    expect(html).toContain("1 (IQR 2, n=3)");
    expect(html).toContain("0.30 (weak)");
  });
});

describe("scoring form", () => {
  async function view(): Promise<SessionView> {
    const client = new ApiClient(
      "http://svc",
      fakeFetch((url) =>
        url.includes("/view")
          ? {
              status: 200,
              body: joinPayload({ my_scores: [{ assumption: "BioRES", criterion: "proxy", score: 2 }] }),
            }
          : undefined,
      ),
    );
    return SessionView.join(client, "w1", "e1");
  }

  it("shows scale anchors inline and checks acknowledged scores", async () => {
    const html = renderScoringForm(metadata(), await view());
    expect(html).toContain("<b>0</b> — none");
    expect(html).toContain("<b>4</b> — exact");
    expect(html).toContain('value="2" checked');
  });

  it("disables inputs in read-only views", async () => {
    const client = new ApiClient(
      "http://svc",
      fakeFetch(() => ({ status: 200, body: joinPayload({ read_only: true }) })),
    );
    const v = await SessionView.join(client, "w1", "e1");
    expect(renderScoringForm(metadata(), v)).toContain("disabled");
    expect(renderStatusLine(v)).toContain("read-only");
  });
});
