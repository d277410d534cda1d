// Browser bootstrap: join form -> scoring form + live diagram.
// All state lives in SessionView/SnapshotPoller; this file only touches the DOM.

import { ApiClient, ApiError } from "./api.js";
import { renderDiagram, renderDisagreement } from "./diagram.js";
import { SnapshotPoller } from "./poller.js";
import { renderScoringForm, renderStatusLine } from "./scoring.js";
import { SessionView } from "./session.js";
import type { Snapshot } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

async function start(): Promise<void> {
  const baseUrl = (byId<HTMLInputElement>("server").value || window.location.origin).replace(/\/$/, "");
  const sessionId = byId<HTMLInputElement>("session").value.trim();
  const expertId = byId<HTMLInputElement>("expert").value.trim();
  const client = new ApiClient(baseUrl);

  let view: SessionView;
  try {
    view = await SessionView.join(client, sessionId, expertId);
  } catch (err) {
    byId("join-error").textContent =
      err instanceof ApiError ? err.detail : `cannot reach the service: ${String(err)}`;
    return;
  }

  byId("join").hidden = true;
  byId("workshop").hidden = false;
  byId("title").textContent = `Session ${sessionId} — ${expertId}`;

  const refreshStatus = () => {
    byId("status").innerHTML = renderStatusLine(view);
    const retry = document.getElementById("retry");
    if (retry) {
      retry.addEventListener("click", async () => {
        await view.retryPending();
        refreshStatus();
      });
    }
  };

  const renderSnapshot = (snapshot: Snapshot) => {
    view.observeVersion(snapshot.version);
    byId("diagram").innerHTML = renderDiagram(snapshot.diagram);
    byId("results").innerHTML = renderDisagreement(snapshot.results);
    refreshStatus();
  };

  byId("form").innerHTML = renderScoringForm(view.metadata, view);
  byId("form").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    if (input.type !== "radio") return;
    const fieldset = input.closest("fieldset.criterion") as HTMLElement | null;
    if (!fieldset) return;
    await view.submit(
      fieldset.dataset.assumption ?? "",
      fieldset.dataset.criterion ?? "",
      Number(input.value),
    );
    refreshStatus();
    await poller.tick();
  });

  const poller = new SnapshotPoller(client, sessionId, {
    onChange: renderSnapshot,
    onStale: (reason) => {
      byId("stale").hidden = false;
      byId("stale").textContent = `showing stale data: ${reason}`;
    },
    onFresh: () => {
      byId("stale").hidden = true;
    },
  });
  refreshStatus();
  poller.start();
}

document.addEventListener("DOMContentLoaded", () => {
  byId("join-button").addEventListener("click", () => void start());
});
