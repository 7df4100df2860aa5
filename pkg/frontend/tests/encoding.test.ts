import { describe, expect, test } from "vitest";

import {
  MATCH_BLUE,
  MUTED_GREY,
  SOFT_PURPLE,
  orangeFor,
  pointStyles,
} from "../src/encoding.js";
import type { ExplorationResponse, RankEntry } from "../src/types.js";

function makeResponse(partial: Partial<ExplorationResponse>): ExplorationResponse {
  const labels = partial.labels ?? [];
  const matchCount = labels.filter((l) => l === 0).length;
  return {
    labels,
    label_names: { "0": "match", "1": "soft_match", "2": "no_match" },
    match_count: matchCount,
    soft_count: labels.filter((l) => l === 1).length,
    feasible: matchCount > 0,
    tolerance: 0.05,
    bounds: {},
    ranking: null,
    ...partial,
  };
}

function parseRgb(color: string): [number, number, number] {
  const m = /^rgb\((\d+), (\d+), (\d+)\)$/.exec(color);
  if (!m) throw new Error(`not an rgb string: ${color}`);
  return [Number(m[1]), Number(m[2]), Number(m[3])];
}

describe("feasible responses", () => {
  test("labels map to blue, purple and desaturated exactly", () => {
    const response = makeResponse({ labels: [0, 1, 2, 0, 1, 2, 2] });
    const styles = pointStyles(response, [0, 1, 2, 3, 4, 5, 6]);
    expect(styles.map((s) => s.kind)).toEqual([
      "match",
      "soft",
      "muted",
      "match",
      "soft",
      "muted",
      "muted",
    ]);
    expect(styles[0].color).toBe(MATCH_BLUE);
    expect(styles[1].color).toBe(SOFT_PURPLE);
    expect(styles[2].color).toBe(MUTED_GREY);
  });

  test("soft rows are purple regardless of the tolerance value", () => {
    for (const tolerance of [0.01, 0.05, 0.2]) {
      const styles = pointStyles(makeResponse({ labels: [0, 1], tolerance }), [0, 1]);
      expect(styles[1].color).toBe(SOFT_PURPLE);
    }
  });

  test("no response yet renders everything as a match", () => {
    const styles = pointStyles(null, [5, 6, 7]);
    expect(styles).toHaveLength(3);
    for (const s of styles) expect(s.color).toBe(MATCH_BLUE);
  });
});

describe("infeasible responses", () => {
  const ranking: RankEntry[] = [
    { row_id: 30, distance: 0.1, score: 1.0 },
    { row_id: 10, distance: 0.4, score: 0.25 },
  ];

  test("ranking rows get the orange gradient, everything else desaturates", () => {
    const response = makeResponse({ labels: [2, 2, 2, 2], feasible: false, ranking });
    const styles = pointStyles(response, [10, 20, 30, 40]);
    expect(styles.map((s) => s.kind)).toEqual(["ranked", "muted", "ranked", "muted"]);
    expect(styles[2].color).toBe(orangeFor(1));
    expect(styles[2].score).toBe(1);
    expect(styles[0].color).toBe(orangeFor(0.25));
    expect(styles[1].color).toBe(MUTED_GREY);
  });

  test("higher score means deeper orange", () => {
    const deep = parseRgb(orangeFor(1));
    const mid = parseRgb(orangeFor(0.5));
    const pale = parseRgb(orangeFor(0));
    // the green and blue channels fall as the score rises
    expect(deep[1]).toBeLessThan(mid[1]);
    expect(mid[1]).toBeLessThan(pale[1]);
    expect(deep[2]).toBeLessThan(mid[2]);
    expect(mid[2]).toBeLessThan(pale[2]);
  });

  test("gradient endpoints and clamping", () => {
    expect(orangeFor(1)).toBe("rgb(234, 88, 12)");
    expect(orangeFor(0)).toBe("rgb(254, 215, 170)");
    expect(orangeFor(2)).toBe(orangeFor(1));
    expect(orangeFor(-1)).toBe(orangeFor(0));
  });

  test("a missing ranking yields an all-desaturated view", () => {
    const response = makeResponse({ labels: [2, 2], feasible: false, ranking: null });
    for (const s of pointStyles(response, [0, 1])) expect(s.kind).toBe("muted");
  });
});

describe("encoding totality", () => {
  test("every point gets exactly one of the four encodings", () => {
    const kinds = new Set(["match", "soft", "ranked", "muted"]);
    let seed = 12345;
    const rand = (): number => {
      // small LCG keeps the fuzz deterministic
      seed = (seed * 1103515245 + 12345) % 2147483648;
      return seed / 2147483648;
    };
    for (let trial = 0; trial < 50; trial++) {
      const n = 1 + Math.floor(rand() * 40);
      const ids = Array.from({ length: n }, (_, i) => i * 3);
      const labels = ids.map(() => Math.floor(rand() * 3));
      const feasible = labels.includes(0);
      const ranking = feasible
        ? null
        : ids
            .slice(0, Math.max(1, Math.floor(n / 2)))
            .map((row_id, i) => ({ row_id, distance: i, score: 1 - i / n }));
      const styles = pointStyles(makeResponse({ labels, feasible, ranking }), ids);
      expect(styles).toHaveLength(n);
      for (const s of styles) {
        expect(kinds.has(s.kind)).toBe(true);
        expect(s.color.length).toBeGreaterThan(0);
      }
    }
  });

  test("a new response fully replaces the previous encoding", () => {
    const ids = [0, 1, 2];
    const infeasible = makeResponse({
      labels: [2, 2, 2],
      feasible: false,
      ranking: [{ row_id: 1, distance: 0, score: 1 }],
    });
    const first = pointStyles(infeasible, ids);
    expect(first.some((s) => s.kind === "ranked")).toBe(true);

    const feasible = makeResponse({ labels: [0, 0, 2] });
    const second = pointStyles(feasible, ids);
    expect(second.some((s) => s.kind === "ranked")).toBe(false);
    expect(second.map((s) => s.kind)).toEqual(["match", "match", "muted"]);
  });
});
