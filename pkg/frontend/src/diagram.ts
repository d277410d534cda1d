// Diagram and disagreement rendering as plain markup strings.
// Quadrant labels, strengths and IQRs are taken from the server snapshot as
// delivered; this module draws, it does not classify.

import type { DiagramJson, PedigreeResultJson, Quadrant } from "./types.js";

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = 60;

function sx(x: number): number {
  return MARGIN + x * (WIDTH - 2 * MARGIN);
}

function sy(y: number): number {
  return HEIGHT - MARGIN - y * (HEIGHT - 2 * MARGIN);
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderDiagram(diagram: DiagramJson, highlight: Set<string> = new Set()): string {
  const tx = sx(diagram.thresholds.pedigree);
  const ty = sy(diagram.thresholds.influence);
  const [left, right, top, bottom] = [sx(0), sx(1), sy(1), sy(0)];
  const xLabel = escapeXml(diagram.labels?.x ?? "pedigree strength");
  const yLabel = escapeXml(diagram.labels?.y ?? "sensitivity / influence");

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="100%" height="100%" fill="white"/>`,
    `<rect class="q4-zone" x="${left}" y="${top}" width="${tx - left}" height="${ty - top}" fill="#fbdcdc"/>`,
    `<text class="q4-label" x="${left + 8}" y="${top + 18}" font-size="13" fill="#a33">Q4 danger zone</text>`,
    `<line class="threshold" x1="${tx}" y1="${top}" x2="${tx}" y2="${bottom}" stroke="#888" stroke-dasharray="5,4"/>`,
    `<line class="threshold" x1="${left}" y1="${ty}" x2="${right}" y2="${ty}" stroke="#888" stroke-dasharray="5,4"/>`,
    `<rect class="frame" x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" fill="none" stroke="black"/>`,
    `<text class="axis-label" x="${(left + right) / 2}" y="${HEIGHT - 18}" font-size="14" text-anchor="middle">${xLabel}</text>`,
    `<text class="axis-label" x="18" y="${(top + bottom) / 2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 ${(top + bottom) / 2})">${yLabel}</text>`,
  ];
  for (const point of diagram.points) {
    // Server classification only: the point's own quadrant field decides styling.
    const danger = point.quadrant === "Q4";
    const classes = ["point", danger ? "danger" : "", highlight.has(point.assumption) ? "highlight" : ""]
      .filter(Boolean)
      .join(" ");
    const fill = danger ? "#c0392b" : "#2c5f8a";
    const r = highlight.has(point.assumption) ? 7 : 5;
    parts.push(
      `<circle class="${classes}" data-assumption="${escapeXml(point.assumption)}" ` +
        `data-quadrant="${point.quadrant}" cx="${sx(point.pedigree)}" cy="${sy(point.influence)}" r="${r}" fill="${fill}"/>`,
    );
    parts.push(
      `<text class="point-label" x="${sx(point.pedigree) + 7}" y="${sy(point.influence) - 6}" font-size="11">${escapeXml(point.assumption)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function quadrantCounts(diagram: DiagramJson): Record<Quadrant, number> {
  const counts: Record<Quadrant, number> = { Q1: 0, Q2: 0, Q3: 0, Q4: 0 };
  for (const point of diagram.points) counts[point.quadrant] += 1;
  return counts;
}

/** Per-criterion disagreement table straight from the server's pedigree results. */
export function renderDisagreement(results: PedigreeResultJson[]): string {
  const rows = results
    .map((result) => {
      const cells = Object.entries(result.criteria)
        .map(
          ([cid, stats]) =>
            `<td data-criterion="${escapeXml(cid)}" data-iqr="${stats.iqr}">` +
            `${stats.median} (IQR ${stats.iqr}, n=${stats.experts})</td>`,
        )
        .join("");
      return (
        `<tr data-assumption="${escapeXml(result.assumption)}" data-band="${escapeXml(result.band)}">` +
        `<th>${escapeXml(result.assumption)}</th>` +
        `<td class="strength">${result.strength.toFixed(2)} (${escapeXml(result.band)})</td>${cells}</tr>`
      );
    })
    .join("\n");
  return `<table class="disagreement">\n${rows}\n</table>`;
}
