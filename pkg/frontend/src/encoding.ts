/**
 * Point color assignment.
 *
 * This is a pure function of the latest exploration response, so a repaint
 * can never mix encodings from two different answers. Every point gets
 * exactly one of four looks:
 *
 *   - blue for Match rows,
 *   - purple for SoftMatch rows (tolerance band),
 *   - an orange gradient over the fallback ranking when the bounds are
 *     infeasible, deepest at score 1,
 *   - desaturated grey for everything else.
 *
 * When the bounds are infeasible the ranking replaces the label encoding
 * entirely: attention shifts to the recommended neighbors, everything that
 * is not ranked goes grey.
 */

import type { ExplorationResponse } from "./types.js";
import { LABEL_MATCH, LABEL_SOFT } from "./types.js";

export const MATCH_BLUE = "#2563eb";
export const SOFT_PURPLE = "#9333ea";
export const MUTED_GREY = "#d9d9de";

const ORANGE_DEEP: readonly number[] = [234, 88, 12];
const ORANGE_PALE: readonly number[] = [254, 215, 170];

export type PointKind = "match" | "soft" | "ranked" | "muted";

export interface PointStyle {
  kind: PointKind;
  color: string;
  /** fallback score when kind is "ranked", otherwise null */
  score: number | null;
}

/** Interpolated ranking color; score is clamped to [0, 1]. */
export function orangeFor(score: number): string {
  const t = Math.min(1, Math.max(0, score));
  const mix = (i: number): number =>
    Math.round(ORANGE_PALE[i] + (ORANGE_DEEP[i] - ORANGE_PALE[i]) * t);
  return `rgb(${mix(0)}, ${mix(1)}, ${mix(2)})`;
}

const match = (): PointStyle => ({ kind: "match", color: MATCH_BLUE, score: null });
const soft = (): PointStyle => ({ kind: "soft", color: SOFT_PURPLE, score: null });
const muted = (): PointStyle => ({ kind: "muted", color: MUTED_GREY, score: null });

/**
 * One style per served row, aligned with `sourceRowIds`. Before any bounds
 * are posted there is no response and every row counts as a match.
 */
export function pointStyles(
  response: ExplorationResponse | null,
  sourceRowIds: number[],
): PointStyle[] {
  const n = sourceRowIds.length;
  const styles = new Array<PointStyle>(n);
  if (response === null) {
    for (let i = 0; i < n; i++) styles[i] = match();
    return styles;
  }
  if (response.feasible) {
    for (let i = 0; i < n; i++) {
      const label = response.labels[i];
      if (label === LABEL_MATCH) styles[i] = match();
      else if (label === LABEL_SOFT) styles[i] = soft();
      else styles[i] = muted();
    }
    return styles;
  }
  for (let i = 0; i < n; i++) styles[i] = muted();
  const position = new Map<number, number>();
  for (let i = 0; i < n; i++) position.set(sourceRowIds[i], i);
  for (const entry of response.ranking ?? []) {
    const pos = position.get(entry.row_id);
    if (pos !== undefined) {
      styles[pos] = { kind: "ranked", color: orangeFor(entry.score), score: entry.score };
    }
  }
  return styles;
}
