/**
 * Central view state plus the pure helpers the widgets share.
 *
 * The store applies each exploration response atomically and tags every
 * request with a serial, so a response that arrives late can never clobber
 * a newer one. All classification, distances and derivatives come from the
 * service; nothing in here recomputes them.
 */

import type {
  BrushRect,
  ExplorationResponse,
  Interval,
  SensitivityResponse,
} from "./types.js";
import { LABEL_MATCH } from "./types.js";

export interface ViewState {
  /** every column served with the session, in table order */
  columns: string[];
  stats: Record<string, [number, number]>;
  /** checkbox set, in the order the user enabled them */
  selected: string[];
  /** slider intervals per axis, in original units */
  intervals: Record<string, Interval>;
  toleranceOn: boolean;
  /** element-slider anchor overrides for sensitivity curves */
  overrides: Record<string, number>;
  response: ExplorationResponse | null;
  responseSerial: number;
  curve: SensitivityResponse | null;
  brush: BrushRect | null;
  hovered: number | null;
  /** non-modal failure notice; null when the last call succeeded */
  notice: string | null;
}

export function initialState(
  columns: string[],
  stats: Record<string, [number, number]>,
): ViewState {
  return {
    columns: [...columns],
    stats,
    selected: [],
    intervals: {},
    toleranceOn: true,
    overrides: {},
    response: null,
    responseSerial: 0,
    curve: null,
    brush: null,
    hovered: null,
    notice: null,
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private readonly listeners: Listener[] = [];

  constructor(columns: string[], stats: Record<string, [number, number]>) {
    this.state = initialState(columns, stats);
  }

  get(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of [...this.listeners]) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      const i = this.listeners.indexOf(fn);
      if (i >= 0) this.listeners.splice(i, 1);
    };
  }

  /** Atomic response application; returns false for anything stale. */
  applyResponse(response: ExplorationResponse, serial: number): boolean {
    if (serial < this.state.responseSerial) return false;
    this.update({ response, responseSerial: serial, notice: null });
    return true;
  }
}

export function toggleColumn(selected: string[], name: string): string[] {
  return selected.includes(name) ? selected.filter((c) => c !== name) : [...selected, name];
}

export function needsInstructions(selected: string[]): boolean {
  return selected.length < 2;
}

export interface GridPair {
  x: string;
  y: string;
  row: number;
  col: number;
}

/** Row-major m x m cells over the selected columns. */
export function gridPairs(selected: string[]): GridPair[] {
  const pairs: GridPair[] = [];
  for (let row = 0; row < selected.length; row++) {
    for (let col = 0; col < selected.length; col++) {
      pairs.push({ x: selected[col], y: selected[row], row, col });
    }
  }
  return pairs;
}

/**
 * Bounds payload for the service. A slider side resting at (or beyond) the
 * data extreme is vacuous and is sent as null; an axis that is vacuous on
 * both sides is omitted entirely, so a full reset posts empty bounds.
 */
export function activeBounds(
  intervals: Record<string, Interval>,
  stats: Record<string, [number, number]>,
): Record<string, Interval> {
  const out: Record<string, Interval> = {};
  for (const [axis, [lo, hi]] of Object.entries(intervals)) {
    const range = stats[axis];
    const loOpen = lo === null || (range !== undefined && lo <= range[0]);
    const hiOpen = hi === null || (range !== undefined && hi >= range[1]);
    if (loOpen && hiOpen) continue;
    out[axis] = [loOpen ? null : lo, hiOpen ? null : hi];
  }
  return out;
}

/** Positions of the rows inside the brush rectangle (inclusive). */
export function brushedRows(
  points: number[][],
  columns: string[],
  brush: BrushRect,
): number[] {
  const xi = columns.indexOf(brush.xCol);
  const yi = columns.indexOf(brush.yCol);
  if (xi < 0 || yi < 0) return [];
  const out: number[] = [];
  for (let r = 0; r < points.length; r++) {
    const x = points[r][xi];
    const y = points[r][yi];
    if (x >= brush.x0 && x <= brush.x1 && y >= brush.y0 && y <= brush.y1) out.push(r);
  }
  return out;
}

/** Positions of the Match rows; with no response yet, every row matches. */
export function matchRows(response: ExplorationResponse | null, rowCount: number): number[] {
  if (response === null) return Array.from({ length: rowCount }, (_, i) => i);
  const out: number[] = [];
  for (let i = 0; i < response.labels.length; i++) {
    if (response.labels[i] === LABEL_MATCH) out.push(i);
  }
  return out;
}

/**
 * Source row ids the export button sends: the brushed rows when a brush is
 * active, otherwise the current blue set.
 */
export function exportCandidates(
  state: ViewState,
  points: number[][],
  columns: string[],
  sourceRowIds: number[],
): number[] {
  const positions = state.brush
    ? brushedRows(points, columns, state.brush)
    : matchRows(state.response, sourceRowIds.length);
  return positions.map((p) => sourceRowIds[p]);
}
