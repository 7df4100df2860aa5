/**
 * Wires widget events to the service under the responsiveness contract:
 * slider drags are debounced, at most one bounds request is in flight, and
 * the newest response always wins. A drag gesture is never blocked; a
 * transient failure leaves the last good state visible and raises a
 * non-modal notice instead.
 */

import { ApiError } from "./api.js";
import type { ExplorationApi } from "./api.js";
import { debounce } from "./debounce.js";
import type { Debounced } from "./debounce.js";
import { activeBounds, exportCandidates } from "./state.js";
import type { Store } from "./state.js";
import type { Interval, PointsResponse } from "./types.js";

export const DEBOUNCE_MS = 50;

/** Tolerance posted while the SoftMatch toggle is on; off means exact. */
export const SOFT_TOLERANCE = 0.05;

export class Controller {
  private readonly pushDebounced: Debounced<[]>;
  private readonly curveDebounced: Debounced<[]>;
  private inflight: AbortController | null = null;
  private inflightCurve: AbortController | null = null;
  private serial = 0;
  private curveAxis: string | null = null;

  constructor(
    private readonly api: ExplorationApi,
    readonly store: Store,
    private readonly sessionId: string,
    private readonly data: PointsResponse,
    waitMs: number = DEBOUNCE_MS,
  ) {
    this.pushDebounced = debounce(() => {
      void this.pushBounds();
    }, waitMs);
    this.curveDebounced = debounce(() => {
      if (this.curveAxis !== null) void this.requestCurve(this.curveAxis);
    }, waitMs);
  }

  onColumnToggle(name: string): void {
    const s = this.store.get();
    const selected = s.selected.includes(name)
      ? s.selected.filter((c) => c !== name)
      : [...s.selected, name];
    this.store.update({ selected, brush: null });
  }

  onSliderChange(axis: string, interval: Interval): void {
    const s = this.store.get();
    this.store.update({ intervals: { ...s.intervals, [axis]: interval } });
    this.pushDebounced.call();
  }

  /** Snap the axis back to the full data range, making it vacuous. */
  onSliderReset(axis: string): void {
    const s = this.store.get();
    const intervals = { ...s.intervals };
    delete intervals[axis];
    this.store.update({ intervals });
    this.pushDebounced.call();
  }

  onToleranceToggle(on: boolean): void {
    this.store.update({ toleranceOn: on });
    this.pushDebounced.call();
  }

  /** Element slider: move the curve anchor and refresh the overlay. */
  onOverrideChange(axis: string, value: number | null): void {
    const s = this.store.get();
    const overrides = { ...s.overrides };
    if (value === null) delete overrides[axis];
    else overrides[axis] = value;
    this.store.update({ overrides });
    this.curveAxis = axis;
    this.curveDebounced.call();
  }

  /** Run the pending bounds post right now (the debounce is for drags). */
  flushBounds(): void {
    this.pushDebounced.flush();
  }

  async pushBounds(): Promise<void> {
    this.inflight?.abort();
    const ctl = new AbortController();
    this.inflight = ctl;
    const mySerial = ++this.serial;
    const s = this.store.get();
    const body = {
      bounds: activeBounds(s.intervals, s.stats),
      tolerance: s.toleranceOn ? SOFT_TOLERANCE : 0,
    };
    try {
      const response = await this.api.updateBounds(this.sessionId, body, ctl.signal);
      this.store.applyResponse(response, mySerial);
    } catch (err) {
      if (ctl.signal.aborted) return; // superseded by a newer drag
      const detail = err instanceof ApiError ? err.message : "service unreachable";
      this.store.update({ notice: `update failed: ${detail}` });
    } finally {
      if (this.inflight === ctl) this.inflight = null;
    }
  }

  async requestCurve(axis: string): Promise<void> {
    this.inflightCurve?.abort();
    const ctl = new AbortController();
    this.inflightCurve = ctl;
    this.curveAxis = axis;
    const s = this.store.get();
    try {
      const curve = await this.api.sensitivity(
        this.sessionId,
        { axis, overrides: s.overrides },
        ctl.signal,
      );
      this.store.update({ curve });
    } catch (err) {
      if (ctl.signal.aborted) return;
      if (err instanceof ApiError && err.kind === "ModelNotLoaded") {
        this.store.update({ curve: null }); // overlay simply stays hidden
        return;
      }
      const detail = err instanceof ApiError ? err.message : "service unreachable";
      this.store.update({ notice: `sensitivity failed: ${detail}` });
    } finally {
      if (this.inflightCurve === ctl) this.inflightCurve = null;
    }
  }

  /** CSV for the brushed rows, or for the blue set when nothing is brushed. */
  exportSelection(): Promise<string> {
    const s = this.store.get();
    const rows = exportCandidates(s, this.data.points, this.data.columns, this.data.source_row_ids);
    return this.api.exportRows(this.sessionId, rows);
  }

  dispose(): void {
    this.pushDebounced.cancel();
    this.curveDebounced.cancel();
    this.inflight?.abort();
    this.inflightCurve?.abort();
  }
}
