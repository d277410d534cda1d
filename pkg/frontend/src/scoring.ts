// Scoring-form markup: one row per (assumption, criterion) cell with the
// scale anchors shown inline, so experts score against definitions rather
// than bare numbers.

import type { SessionMetadata } from "./types.js";
import { SessionView } from "./session.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderScoringForm(metadata: SessionMetadata, view: SessionView): string {
  const disabled = view.readOnly ? " disabled" : "";
  const sections = metadata.assumptions.map((assumption) => {
    const rows = metadata.criteria.criteria
      .map((criterion) => {
        const current = view.scoreFor(assumption.id, criterion.id);
        const anchors = criterion.scale_anchors
          .map((anchor, score) => {
            const checked = current === score ? " checked" : "";
            return (
              `<label class="anchor"><input type="radio" name="${escapeHtml(assumption.id)}:${escapeHtml(criterion.id)}" ` +
              `value="${score}"${checked}${disabled}/> <b>${score}</b> — ${escapeHtml(anchor)}</label>`
            );
          })
          .join("\n");
        return (
          `<fieldset class="criterion" data-assumption="${escapeHtml(assumption.id)}" data-criterion="${escapeHtml(criterion.id)}">` +
          `<legend>${escapeHtml(criterion.name)}</legend>` +
          `<p class="description">${escapeHtml(criterion.description)}</p>\n${anchors}\n</fieldset>`
        );
      })
      .join("\n");
    return (
      `<section class="assumption" data-assumption="${escapeHtml(assumption.id)}">` +
      `<h3>${escapeHtml(assumption.title)}</h3>` +
      `<p class="statement">${escapeHtml(assumption.statement)}</p>\n${rows}\n</section>`
    );
  });
  return sections.join("\n");
}

export function renderStatusLine(view: SessionView): string {
  if (view.pendingRetry) {
    return (
      `<div class="status error">submission not delivered: ${escapeHtml(view.lastError ?? "network failure")} ` +
      `<button id="retry">retry</button></div>`
    );
  }
  if (view.lastError) {
    return `<div class="status rejected">server rejected the submission: ${escapeHtml(view.lastError)}</div>`;
  }
  return `<div class="status ok">synced at version ${view.version}${view.readOnly ? " (read-only)" : ""}</div>`;
}
