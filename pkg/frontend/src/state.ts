import { ApiClient } from "./api.js";
import {
  AnarchyResponse,
  GameInfo,
  SolveResponse,
  SummaryResponse,
  WhatIfBody,
} from "./types.js";

/** Everything the view needs for one game, fetched together. */
export interface SessionView {
  gameId: string;
  info: GameInfo;
  stable: SolveResponse;
  best: SolveResponse;
  anarchy: AnarchyResponse;
  summary: SummaryResponse;
}

export interface Crumb {
  gameId: string;
  label: string;
}

type Listener = () => void;

function checkHashes(gameId: string, view: SessionView): void {
  const hashes = [
    view.stable.game_hash,
    view.best.game_hash,
    view.anarchy.game_hash,
    view.summary.game_hash,
  ];
  for (const h of hashes) {
    if (h !== gameId) {
      throw new Error(`stale response: expected ${gameId}, got ${h}`);
    }
  }
}

/**
 * Client session: the current game view, the exploration breadcrumb
 * trail, and the last removal's delta panel. All numbers come straight
 * from API responses; nothing is recomputed client-side.
 */
export class SessionStore {
  view: SessionView | null = null;
  crumbs: Crumb[] = [];
  lastWhatIf: WhatIfBody | null = null;
  lastRemovedLabel: string | null = null;
  error: string | null = null;
  private listeners: Listener[] = [];

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  label(vertex: number): string {
    const labels = this.view?.info.labels;
    return labels ? labels[vertex] : String(vertex);
  }

  private async fetchView(gameId: string): Promise<SessionView> {
    const [info, stable, best, anarchy, summary] = await Promise.all([
      this.api.gameInfo(gameId),
      this.api.stable(gameId),
      this.api.best(gameId),
      this.api.anarchy(gameId),
      this.api.summary(gameId),
    ]);
    const view = { gameId, info, stable, best, anarchy, summary };
    checkHashes(gameId, view);
    return view;
  }

  /** Load a game document and open its session. */
  async loadDocument(document: unknown): Promise<void> {
    await this.run(async () => {
      const loaded = await this.api.loadGame(document);
      this.view = await this.fetchView(loaded.game_id);
      this.crumbs = [{ gameId: loaded.game_id, label: `${loaded.n} players` }];
      this.lastWhatIf = null;
      this.lastRemovedLabel = null;
    });
  }

  /** Remove a vertex, then switch to the derived game. */
  async removeVertex(vertex: number): Promise<void> {
    if (!this.view) return;
    const from = this.view.gameId;
    const removedLabel = this.label(vertex);
    await this.run(async () => {
      const result = await this.api.whatIf(from, vertex);
      const view = await this.fetchView(result.derived_game_id);
      this.lastWhatIf = result.whatif;
      this.lastRemovedLabel = removedLabel;
      this.view = view;
      this.crumbs.push({
        gameId: view.gameId,
        label: `- ${removedLabel}`,
      });
    });
  }

  /** Pop one exploration step via the service's undo. */
  async undo(): Promise<void> {
    if (!this.view || this.crumbs.length < 2) return;
    const from = this.view.gameId;
    await this.run(async () => {
      const parent = await this.api.undo(from);
      this.view = await this.fetchView(parent.game_id);
      this.crumbs.pop();
      this.lastWhatIf = null;
      this.lastRemovedLabel = null;
      const top = this.crumbs[this.crumbs.length - 1];
      if (top.gameId !== this.view.gameId) {
        throw new Error("undo diverged from the breadcrumb trail");
      }
    });
  }

  private async run(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.notify();
  }
}
