import { describe, expect, test } from "vitest";

import { curvePolyline } from "../src/curves.js";
import { clamp, formatTick, project, ticks, unproject } from "../src/scales.js";
import type { SensitivityResponse } from "../src/types.js";

describe("project and unproject", () => {
  test("endpoints and midpoint", () => {
    expect(project(0, 0, 1, 100, 200)).toBe(100);
    expect(project(1, 0, 1, 100, 200)).toBe(200);
    expect(project(0.5, 0, 1, 100, 200)).toBe(150);
  });

  test("inverted pixel ranges flip the axis", () => {
    expect(project(0, 0, 1, 200, 100)).toBe(200);
    expect(project(1, 0, 1, 200, 100)).toBe(100);
  });

  test("unproject inverts project", () => {
    for (const v of [-3, 0, 0.25, 7.5]) {
      const p = project(v, -5, 10, 40, 360);
      expect(unproject(p, -5, 10, 40, 360)).toBeCloseTo(v, 10);
    }
  });

  test("degenerate domains collapse to the middle", () => {
    expect(project(4, 4, 4, 0, 100)).toBe(50);
    expect(unproject(70, 2, 8, 70, 70)).toBe(5);
  });

  test("clamp", () => {
    expect(clamp(-1, 0, 1)).toBe(0);
    expect(clamp(2, 0, 1)).toBe(1);
    expect(clamp(0.4, 0, 1)).toBe(0.4);
  });
});

describe("ticks", () => {
  test("stay inside the domain and are sorted", () => {
    for (const [lo, hi] of [
      [0, 1],
      [-3.7, 12.2],
      [0.001, 0.009],
      [150, 4200],
    ]) {
      const ts = ticks(lo, hi, 4);
      expect(ts.length).toBeGreaterThan(0);
      for (const t of ts) {
        expect(t).toBeGreaterThanOrEqual(lo - 1e-9);
        expect(t).toBeLessThanOrEqual(hi + 1e-9);
      }
      const sorted = [...ts].sort((a, b) => a - b);
      expect(ts).toEqual(sorted);
    }
  });

  test("steps are uniform", () => {
    const ts = ticks(-2.3, 9.1, 6);
    expect(ts.length).toBeGreaterThan(2);
    const step = ts[1] - ts[0];
    for (let i = 2; i < ts.length; i++) {
      expect(ts[i] - ts[i - 1]).toBeCloseTo(step, 9);
    }
  });

  test("degenerate domain returns the single value", () => {
    expect(ticks(5, 5, 4)).toEqual([5]);
  });

  test("zero renders as 0", () => {
    expect(ticks(-1, 1, 4)).toContain(0);
    expect(formatTick(0)).toBe("0");
  });
});

describe("formatTick", () => {
  test("compact but faithful", () => {
    expect(formatTick(0.5)).toBe("0.5");
    expect(formatTick(250)).toBe("250");
    expect(formatTick(123456)).toBe("1.2e+5");
    expect(formatTick(0.0001)).toBe("1.0e-4");
  });
});

function makeCurve(xs: number[], ys: Record<string, number[]>): SensitivityResponse {
  return { axis: "Si", anchor: {}, x: xs, outputs: ys, derivatives: {} };
}

describe("curvePolyline", () => {
  const plot = { left: 10, top: 5, size: 100 };

  test("endpoints align with the cell's x extent", () => {
    const curve = makeCurve([0, 1, 2, 3, 4], { YS: [5, 9, 2, 7, 7] });
    const line = curvePolyline(curve, "YS", [0, 4], plot);
    expect(line).not.toBeNull();
    expect(line![0].x).toBeCloseTo(10, 9);
    expect(line![line!.length - 1].x).toBeCloseTo(110, 9);
  });

  test("y spans the curve's own range inside the plot", () => {
    const curve = makeCurve([0, 1, 2], { YS: [3, 9, 6] });
    const line = curvePolyline(curve, "YS", [0, 2], plot)!;
    // canvas y grows downward: min output at the bottom, max at the top
    expect(line[0].y).toBeCloseTo(105, 9);
    expect(line[1].y).toBeCloseTo(5, 9);
    expect(line[2].y).toBeCloseTo(55, 9);
  });

  test("a constant curve draws as a centered horizontal line", () => {
    const curve = makeCurve([0, 1], { YS: [4, 4] });
    const line = curvePolyline(curve, "YS", [0, 1], plot)!;
    for (const p of line) expect(p.y).toBeCloseTo(55, 9);
  });

  test("unknown property or shape mismatch yields null", () => {
    const curve = makeCurve([0, 1, 2], { YS: [1, 2, 3] });
    expect(curvePolyline(curve, "Hardness", [0, 2], plot)).toBeNull();
    const bad = makeCurve([0, 1, 2], { YS: [1, 2] });
    expect(curvePolyline(bad, "YS", [0, 2], plot)).toBeNull();
  });
});
