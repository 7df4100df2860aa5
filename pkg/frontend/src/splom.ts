/**
 * Canvas SPLOM renderer. Points arrive normalized to [0, 1] per axis; tick
 * labels convert back to original units through the column stats. Cells are
 * drawn muted-first so the highlighted encodings stay visible over the grey
 * mass, and the brush rectangle made in one cell highlights its rows in all
 * of them.
 */

import { curvePolyline } from "./curves.js";
import { pointStyles } from "./encoding.js";
import { formatTick, project, ticks, unproject } from "./scales.js";
import { brushedRows, gridPairs, needsInstructions } from "./state.js";
import type { ViewState } from "./state.js";
import type { PointsResponse } from "./types.js";

export const CELL_SIZE = 168;
export const CELL_GAP = 12;
export const MARGIN = 56;
const INSET = 5;

export interface CellRect {
  x: string;
  y: string;
  left: number;
  top: number;
  size: number;
}

export function cellLayout(
  selected: string[],
  cellSize = CELL_SIZE,
  gap = CELL_GAP,
  margin = MARGIN,
): CellRect[] {
  return gridPairs(selected).map((p) => ({
    x: p.x,
    y: p.y,
    left: margin + p.col * (cellSize + gap),
    top: margin + p.row * (cellSize + gap),
    size: cellSize,
  }));
}

export function canvasExtent(m: number): number {
  return MARGIN + m * CELL_SIZE + Math.max(0, m - 1) * CELL_GAP + CELL_GAP;
}

export class SplomView {
  private cells: CellRect[] = [];

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly data: PointsResponse,
    private readonly stats: Record<string, [number, number]>,
    private readonly groups: Record<string, string>,
  ) {}

  /** Cell under a canvas-local pixel, for brush gestures. */
  cellAt(px: number, py: number): CellRect | null {
    for (const cell of this.cells) {
      if (
        px >= cell.left &&
        px <= cell.left + cell.size &&
        py >= cell.top &&
        py <= cell.top + cell.size
      ) {
        return cell;
      }
    }
    return null;
  }

  /** Canvas-local pixel to normalized cell coordinates, unclamped. */
  normAt(cell: CellRect, px: number, py: number): [number, number] {
    const x = unproject(px, cell.left + INSET, cell.left + cell.size - INSET, 0, 1);
    const y = unproject(py, cell.top + cell.size - INSET, cell.top + INSET, 0, 1);
    return [x, y];
  }

  render(state: ViewState): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    if (needsInstructions(state.selected)) {
      this.cells = [];
      this.resize(420, 160);
      ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
      ctx.fillStyle = "#555";
      ctx.font = "14px sans-serif";
      ctx.fillText("Select at least two columns to draw the scatter matrix.", 16, 48);
      ctx.fillText("Use the checkboxes on the left.", 16, 72);
      return;
    }

    const extent = canvasExtent(state.selected.length);
    this.resize(extent, extent);
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    this.cells = cellLayout(state.selected);

    const styles = pointStyles(state.response, this.data.source_row_ids);
    const brushSet =
      state.brush === null
        ? null
        : new Set(brushedRows(this.data.points, this.data.columns, state.brush));

    for (const cell of this.cells) this.renderCell(ctx, cell, state, styles, brushSet);
    this.renderHeaders(ctx, state.selected);
  }

  private resize(w: number, h: number): void {
    if (this.canvas.width !== w) this.canvas.width = w;
    if (this.canvas.height !== h) this.canvas.height = h;
  }

  private renderHeaders(ctx: CanvasRenderingContext2D, selected: string[]): void {
    ctx.fillStyle = "#333";
    ctx.font = "bold 12px sans-serif";
    for (let i = 0; i < selected.length; i++) {
      const offset = MARGIN + i * (CELL_SIZE + CELL_GAP);
      ctx.textAlign = "center";
      ctx.fillText(selected[i], offset + CELL_SIZE / 2, MARGIN - 40);
      ctx.save();
      ctx.translate(14, offset + CELL_SIZE / 2);
      ctx.rotate(-Math.PI / 2);
      ctx.fillText(selected[i], 0, 0);
      ctx.restore();
    }
    ctx.textAlign = "left";
  }

  private renderCell(
    ctx: CanvasRenderingContext2D,
    cell: CellRect,
    state: ViewState,
    styles: ReturnType<typeof pointStyles>,
    brushSet: Set<number> | null,
  ): void {
    const xi = this.data.columns.indexOf(cell.x);
    const yi = this.data.columns.indexOf(cell.y);
    if (xi < 0 || yi < 0) return;

    ctx.strokeStyle = "#bbb";
    ctx.strokeRect(cell.left, cell.top, cell.size, cell.size);
    this.renderTicks(ctx, cell);

    const x0 = cell.left + INSET;
    const x1 = cell.left + cell.size - INSET;
    const y0 = cell.top + cell.size - INSET;
    const y1 = cell.top + INSET;
    const px = (r: number): number => project(this.data.points[r][xi], 0, 1, x0, x1);
    const py = (r: number): number => project(this.data.points[r][yi], 0, 1, y0, y1);

    // grey mass first, highlights on top
    for (let pass = 0; pass < 2; pass++) {
      for (let r = 0; r < this.data.points.length; r++) {
        const s = styles[r];
        if ((s.kind === "muted") !== (pass === 0)) continue;
        ctx.fillStyle = s.color;
        ctx.beginPath();
        ctx.arc(px(r), py(r), s.kind === "muted" ? 1.6 : 2.4, 0, 2 * Math.PI);
        ctx.fill();
      }
    }

    if (brushSet !== null) {
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 1;
      for (const r of brushSet) {
        ctx.beginPath();
        ctx.arc(px(r), py(r), 3.2, 0, 2 * Math.PI);
        ctx.stroke();
      }
    }

    if (state.brush && state.brush.xCol === cell.x && state.brush.yCol === cell.y) {
      const bx0 = project(state.brush.x0, 0, 1, x0, x1);
      const bx1 = project(state.brush.x1, 0, 1, x0, x1);
      const by0 = project(state.brush.y0, 0, 1, y0, y1);
      const by1 = project(state.brush.y1, 0, 1, y0, y1);
      ctx.fillStyle = "rgba(37, 99, 235, 0.08)";
      ctx.strokeStyle = "#2563eb";
      ctx.fillRect(bx0, by1, bx1 - bx0, by0 - by1);
      ctx.strokeRect(bx0, by1, bx1 - bx0, by0 - by1);
    }

    // overlay: the swept element on x, any property on y
    if (
      state.curve !== null &&
      state.curve.axis === cell.x &&
      this.groups[cell.y] === "property"
    ) {
      const domain = this.stats[cell.x];
      if (domain) {
        const line = curvePolyline(state.curve, cell.y, domain, {
          left: x0,
          top: y1,
          size: x1 - x0,
        });
        if (line && line.length > 1) {
          ctx.strokeStyle = "#0f766e";
          ctx.lineWidth = 1.8;
          ctx.beginPath();
          ctx.moveTo(line[0].x, line[0].y);
          for (let i = 1; i < line.length; i++) ctx.lineTo(line[i].x, line[i].y);
          ctx.stroke();
          ctx.lineWidth = 1;
        }
      }
    }
  }

  private renderTicks(ctx: CanvasRenderingContext2D, cell: CellRect): void {
    const xs = this.stats[cell.x];
    const ys = this.stats[cell.y];
    ctx.fillStyle = "#888";
    ctx.font = "9px sans-serif";
    if (xs) {
      ctx.textAlign = "center";
      for (const t of ticks(xs[0], xs[1], 3)) {
        const p = project(t, xs[0], xs[1], cell.left + INSET, cell.left + cell.size - INSET);
        ctx.fillText(formatTick(t), p, cell.top + cell.size + 10);
      }
    }
    if (ys) {
      ctx.textAlign = "right";
      for (const t of ticks(ys[0], ys[1], 3)) {
        const p = project(t, ys[0], ys[1], cell.top + cell.size - INSET, cell.top + INSET);
        ctx.fillText(formatTick(t), cell.left - 3, p + 3);
      }
    }
    ctx.textAlign = "left";
  }
}
