/**
 * Sidebar widgets: column checkboxes, per-axis range sliders, the tolerance
 * toggle, element anchor sliders for the sensitivity overlay, and export.
 * DOM only; every decision flows through the controller. Slider blocks are
 * rebuilt only when the selection changes so an active drag is never torn
 * down under the pointer.
 */

import type { Controller } from "./controller.js";
import type { Store } from "./state.js";
import type { ColumnInfo, Interval } from "./types.js";
import type { ViewState } from "./state.js";

const SLIDER_STEPS = 400;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class Sidebar {
  private readonly axisBlock: HTMLElement;
  private readonly elementBlock: HTMLElement;
  private readonly noticeEl: HTMLElement;
  private readonly countsEl: HTMLElement;
  private lastSelectionKey = "";

  constructor(
    root: HTMLElement,
    private readonly columns: ColumnInfo[],
    private readonly store: Store,
    private readonly controller: Controller,
    private readonly modelLoaded: boolean,
  ) {
    root.appendChild(el("h3", "", "Columns"));
    root.appendChild(this.buildPicker());

    const toggleRow = el("label", "toggle-row");
    const toggle = el("input") as HTMLInputElement;
    toggle.type = "checkbox";
    toggle.checked = store.get().toleranceOn;
    toggle.addEventListener("change", () => controller.onToleranceToggle(toggle.checked));
    toggleRow.appendChild(toggle);
    toggleRow.appendChild(document.createTextNode(" near-match tolerance"));
    root.appendChild(toggleRow);

    root.appendChild(el("h3", "", "Ranges"));
    this.axisBlock = el("div", "axis-block");
    root.appendChild(this.axisBlock);

    if (this.modelLoaded) {
      root.appendChild(el("h3", "", "Element anchors"));
      this.elementBlock = el("div", "element-block");
      root.appendChild(this.elementBlock);
      this.buildElementSliders();
    } else {
      this.elementBlock = el("div");
    }

    this.countsEl = el("div", "counts");
    root.appendChild(this.countsEl);

    const exportBtn = el("button", "", "Export selection");
    exportBtn.addEventListener("click", () => {
      void this.controller.exportSelection().then(
        (csv) => downloadCsv(csv),
        (err) => this.store.update({ notice: `export failed: ${String(err)}` }),
      );
    });
    root.appendChild(exportBtn);

    this.noticeEl = el("div", "notice");
    root.appendChild(this.noticeEl);
  }

  sync(state: ViewState): void {
    const key = state.selected.join("|");
    if (key !== this.lastSelectionKey) {
      this.lastSelectionKey = key;
      this.buildAxisSliders(state);
    }
    this.noticeEl.textContent = state.notice ?? "";
    if (state.response) {
      const r = state.response;
      this.countsEl.textContent = r.feasible
        ? `${r.match_count} match, ${r.soft_count} near`
        : "no exact matches; showing nearest neighbors";
    } else {
      this.countsEl.textContent = "";
    }
  }

  private buildPicker(): HTMLElement {
    const box = el("div", "picker");
    for (const col of this.columns) {
      const row = el("label", "pick-row");
      const cb = el("input") as HTMLInputElement;
      cb.type = "checkbox";
      cb.checked = this.store.get().selected.includes(col.name);
      cb.addEventListener("change", () => this.controller.onColumnToggle(col.name));
      row.appendChild(cb);
      const unit = col.units ? ` (${col.units})` : "";
      row.appendChild(document.createTextNode(` ${col.name}${unit}`));
      box.appendChild(row);
    }
    return box;
  }

  private buildAxisSliders(state: ViewState): void {
    this.axisBlock.replaceChildren();
    for (const axis of state.selected) {
      const range = state.stats[axis];
      if (!range) continue;
      this.axisBlock.appendChild(this.rangeSlider(axis, range, state.intervals[axis]));
    }
  }

  private rangeSlider(
    axis: string,
    range: [number, number],
    interval: Interval | undefined,
  ): HTMLElement {
    const [lo, hi] = range;
    const step = (hi - lo) / SLIDER_STEPS || 1;
    const wrap = el("div", "slider-row");
    const label = el("div", "slider-label", axis);
    const readout = el("span", "slider-readout");
    label.appendChild(readout);
    wrap.appendChild(label);

    const mk = (value: number): HTMLInputElement => {
      const input = el("input") as HTMLInputElement;
      input.type = "range";
      input.min = String(lo);
      input.max = String(hi);
      input.step = String(step);
      input.value = String(value);
      return input;
    };
    const loInput = mk(interval?.[0] ?? lo);
    const hiInput = mk(interval?.[1] ?? hi);

    const show = (a: number, b: number): void => {
      readout.textContent = ` ${a.toPrecision(4)} .. ${b.toPrecision(4)}`;
    };
    show(Number(loInput.value), Number(hiInput.value));

    const emit = (): void => {
      let a = Number(loInput.value);
      let b = Number(hiInput.value);
      if (a > b) [a, b] = [b, a];
      show(a, b);
      this.controller.onSliderChange(axis, [a, b]);
    };
    loInput.addEventListener("input", emit);
    hiInput.addEventListener("input", emit);

    const reset = el("button", "mini", "reset");
    reset.addEventListener("click", () => {
      loInput.value = String(lo);
      hiInput.value = String(hi);
      show(lo, hi);
      this.controller.onSliderReset(axis);
    });

    wrap.appendChild(loInput);
    wrap.appendChild(hiInput);
    wrap.appendChild(reset);
    return wrap;
  }

  private buildElementSliders(): void {
    this.elementBlock.replaceChildren();
    for (const col of this.columns) {
      if (col.group !== "element_fraction") continue;
      const stats = this.store.get().stats[col.name];
      if (!stats) continue;
      const [lo, hi] = stats;
      const row = el("div", "slider-row");
      row.appendChild(el("div", "slider-label", col.name));
      const input = el("input") as HTMLInputElement;
      input.type = "range";
      input.min = String(lo);
      input.max = String(hi);
      input.step = String((hi - lo) / SLIDER_STEPS || 1);
      input.value = String((lo + hi) / 2);
      input.addEventListener("input", () => {
        this.controller.onOverrideChange(col.name, Number(input.value));
      });
      const clear = el("button", "mini", "clear");
      clear.addEventListener("click", () => {
        input.value = String((lo + hi) / 2);
        this.controller.onOverrideChange(col.name, null);
      });
      row.appendChild(input);
      row.appendChild(clear);
      this.elementBlock.appendChild(row);
    }
  }
}

function downloadCsv(text: string): void {
  const blob = new Blob([text], { type: "text/csv" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = "selection.csv";
  a.click();
  URL.revokeObjectURL(url);
}
