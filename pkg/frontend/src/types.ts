/** JSON shapes exchanged with the exploration service. */

export interface ColumnInfo {
  name: string;
  group: string;
  units: string;
}

export interface ColumnsResponse {
  dataset: string;
  row_count: number;
  columns: ColumnInfo[];
  /** per-column [min, max] in original units */
  stats: Record<string, [number, number]>;
}

export interface SessionResponse {
  session_id: string;
  row_count: number;
}

export interface PointsResponse {
  columns: string[];
  /** row-major, normalized to [0, 1] per column */
  points: number[][];
  source_row_ids: number[];
}

/** Slider interval in original units; null leaves that side open. */
export type Interval = [number | null, number | null];

export const LABEL_MATCH = 0;
export const LABEL_SOFT = 1;
export const LABEL_NO = 2;

export interface RankEntry {
  row_id: number;
  distance: number;
  score: number;
}

export interface ExplorationResponse {
  labels: number[];
  label_names: Record<string, string>;
  match_count: number;
  soft_count: number;
  feasible: boolean;
  tolerance: number;
  bounds: Record<string, [number, number]>;
  /** present exactly when feasible is false */
  ranking: RankEntry[] | null;
}

export interface SensitivityResponse {
  axis: string;
  anchor: Record<string, number>;
  x: number[];
  outputs: Record<string, number[]>;
  derivatives: Record<string, number[]>;
}

export interface ResidualRowJson {
  name: string;
  mean: number;
  std: number;
  max_residual_normalized: number;
  max_residual_original: number;
}

export interface ResidualReportJson {
  outputs: ResidualRowJson[];
  average_max_residual_normalized: number;
}

export interface ModelInfo {
  loaded: boolean;
  layer_dims: number[] | null;
  residual_report: ResidualReportJson | null;
}

/** Rectangle selection in one cell, in normalized units, linked across cells. */
export interface BrushRect {
  xCol: string;
  yCol: string;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}
