/**
 * Sensitivity overlays. A curve is sampled over one element axis in original
 * units; every (element, property) cell whose x axis is that element gets the
 * property's polyline drawn on top. The x coordinates share the cell's axis,
 * the y coordinates use the curve's own min/max so the shape stays readable
 * whatever the property's data range is.
 */

import { project } from "./scales.js";
import type { SensitivityResponse } from "./types.js";

export interface PlotRect {
  left: number;
  top: number;
  size: number;
}

export interface CurvePoint {
  x: number;
  y: number;
}

export function curvePolyline(
  curve: SensitivityResponse,
  propertyCol: string,
  xDomain: [number, number],
  plot: PlotRect,
): CurvePoint[] | null {
  const ys = curve.outputs[propertyCol];
  if (!ys || ys.length !== curve.x.length || ys.length === 0) return null;
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of ys) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const right = plot.left + plot.size;
  const bottom = plot.top + plot.size;
  return curve.x.map((xv, i) => ({
    x: project(xv, xDomain[0], xDomain[1], plot.left, right),
    // canvas y grows downward; a degenerate range centers the line
    y: project(ys[i], lo, hi, bottom, plot.top),
  }));
}
