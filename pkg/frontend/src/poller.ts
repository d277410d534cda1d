// Snapshot polling with version gating: the diagram re-renders only when the
// server's version counter moves, and a stale-data flag is raised when a
// poll fails (cleared by the next success).

import { ApiClient } from "./api.js";
import type { Snapshot } from "./types.js";

export const DEFAULT_POLL_INTERVAL_MS = 2000;

export interface PollerCallbacks {
  onChange: (snapshot: Snapshot) => void;
  onStale?: (reason: string) => void;
  onFresh?: () => void;
}

export type TickResult = "updated" | "unchanged" | "stale";

export class SnapshotPoller {
  stale = false;
  private lastVersion = -1;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly sessionId: string,
    private readonly callbacks: PollerCallbacks,
    readonly intervalMs: number = DEFAULT_POLL_INTERVAL_MS,
  ) {}

  /** One poll cycle; exposed directly so tests can drive it synchronously. */
  async tick(): Promise<TickResult> {
    let snapshot: Snapshot;
    try {
      snapshot = await this.client.snapshot(this.sessionId);
    } catch (err) {
      this.stale = true;
      this.callbacks.onStale?.(err instanceof Error ? err.message : String(err));
      return "stale";
    }
    if (this.stale) {
      this.stale = false;
      this.callbacks.onFresh?.();
    }
    if (snapshot.version === this.lastVersion) {
      return "unchanged";
    }
    this.lastVersion = snapshot.version;
    this.callbacks.onChange(snapshot);
    return "updated";
  }

  start(): void {
    if (this.timer !== null) return;
    const loop = async () => {
      await this.tick();
      this.timer = setTimeout(loop, this.intervalMs);
    };
    this.timer = setTimeout(loop, 0);
  }

  stop(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
