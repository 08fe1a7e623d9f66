import {
  AnarchyResponse,
  GameInfo,
  LoadResponse,
  SolveResponse,
  SummaryResponse,
  UndoResponse,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function handle<T>(response: Response, what: string): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      detail = (await response.json()).detail ?? detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, `${what}: ${detail}`);
  }
  return response.json() as Promise<T>;
}

/** Typed client for the netgame HTTP service. */
export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  private async get<T>(path: string, what: string): Promise<T> {
    return handle<T>(await fetch(this.url(path)), what);
  }

  private async post<T>(path: string, body: unknown, what: string): Promise<T> {
    const response = await fetch(this.url(path), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return handle<T>(response, what);
  }

  loadGame(document: unknown): Promise<LoadResponse> {
    return this.post("/games", document, "Unable to load game");
  }

  gameInfo(gameId: string): Promise<GameInfo> {
    return this.get(`/games/${gameId}`, "Unable to fetch game info");
  }

  stable(gameId: string): Promise<SolveResponse> {
    return this.get(`/games/${gameId}/stable`, "Unable to fetch stable graph");
  }

  best(gameId: string): Promise<SolveResponse> {
    return this.get(`/games/${gameId}/best`, "Unable to fetch best graph");
  }

  anarchy(gameId: string): Promise<AnarchyResponse> {
    return this.get(`/games/${gameId}/anarchy`, "Unable to fetch anarchy report");
  }

  summary(gameId: string): Promise<SummaryResponse> {
    return this.get(`/games/${gameId}/summary`, "Unable to fetch summary");
  }

  whatIf(gameId: string, remove: number): Promise<WhatIfResponse> {
    return this.post(`/games/${gameId}/whatif`, { remove }, "What-if failed");
  }

  undo(gameId: string): Promise<UndoResponse> {
    return this.post(`/games/${gameId}/undo`, {}, "Undo failed");
  }
}
