export interface AnarchyBody {
  worst_stable_value: number;
  best_value: number;
  poa_difference: number;
  poa_ratio: number | null;
  orientation: string;
}

export interface GraphBody {
  n: number;
  edges: number[][];
}

export interface LoadResponse {
  schema_version: string;
  game_id: string;
  kind: string;
  n: number;
}

export interface GameInfo {
  schema_version: string;
  game_id: string;
  kind: string;
  n: number;
  labels: string[] | null;
  parent_id: string | null;
}

export interface SolveResponse {
  schema_version: string;
  game_hash: string;
  graph: GraphBody;
  communal_value: number;
  optimal: boolean;
}

export interface AnarchyResponse {
  schema_version: string;
  game_hash: string;
  report: AnarchyBody;
}

export interface WhatIfBody {
  removed: number;
  report_before: AnarchyBody;
  report_after: AnarchyBody;
  delta_poa_ratio: number | null;
  communal_utility_change: number;
  degree: number;
  eig_centrality: number;
}

export interface SummaryResponse {
  schema_version: string;
  game_hash: string;
  rows: WhatIfBody[];
  pareto: number[];
}

export interface WhatIfResponse {
  schema_version: string;
  game_hash: string;
  whatif: WhatIfBody;
  derived_game_id: string;
}

export interface UndoResponse {
  schema_version: string;
  game_id: string;
}
