/**
 * Application bootstrap: one exploration session per page load. The service
 * address defaults to the local development port and can be overridden with
 * ?api=http://host:port.
 */

import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import { clamp } from "./scales.js";
import { Sidebar } from "./sliders.js";
import { SplomView } from "./splom.js";
import { Store } from "./state.js";

const DEFAULT_BASE = "http://127.0.0.1:7341";
const STARTER_COLUMNS = ["Si", "Fe", "YS", "Density"];

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? DEFAULT_BASE;
  const api = new ApiClient(base);

  const info = await api.columns();
  const session = await api.createSession({});
  const data = await api.points(session.session_id);
  const model = await api.modelInfo();

  const store = new Store(data.columns, info.stats);
  const controller = new Controller(api, store, session.session_id, data);

  const app = document.getElementById("app");
  if (!app) throw new Error("missing #app container");
  const sidebarEl = document.createElement("div");
  sidebarEl.id = "sidebar";
  const canvas = document.createElement("canvas");
  canvas.id = "splom";
  app.appendChild(sidebarEl);
  app.appendChild(canvas);

  const groups: Record<string, string> = {};
  for (const col of info.columns) groups[col.name] = col.group;

  const splom = new SplomView(canvas, data, info.stats, groups);
  const sidebar = new Sidebar(sidebarEl, info.columns, store, controller, model.loaded);
  store.subscribe((s) => {
    splom.render(s);
    sidebar.sync(s);
  });

  wireBrush(canvas, splom, store);

  const starter = STARTER_COLUMNS.filter((c) => data.columns.includes(c));
  store.update({ selected: starter.length >= 2 ? starter : data.columns.slice(0, 4) });
  void controller.pushBounds();
}

/** Rectangle brush: drag inside one cell, selection links across all cells. */
function wireBrush(canvas: HTMLCanvasElement, splom: SplomView, store: Store): void {
  let anchor: { cellX: string; cellY: string; x: number; y: number } | null = null;

  const local = (ev: MouseEvent): [number, number] => {
    const r = canvas.getBoundingClientRect();
    return [ev.clientX - r.left, ev.clientY - r.top];
  };

  canvas.addEventListener("mousedown", (ev) => {
    const [px, py] = local(ev);
    const cell = splom.cellAt(px, py);
    if (!cell) return;
    const [x, y] = splom.normAt(cell, px, py);
    anchor = { cellX: cell.x, cellY: cell.y, x: clamp(x, 0, 1), y: clamp(y, 0, 1) };
  });

  canvas.addEventListener("mousemove", (ev) => {
    if (!anchor) return;
    const [px, py] = local(ev);
    const cell = splom.cellAt(px, py);
    if (!cell || cell.x !== anchor.cellX || cell.y !== anchor.cellY) return;
    const [x, y] = splom.normAt(cell, px, py);
    store.update({
      brush: {
        xCol: anchor.cellX,
        yCol: anchor.cellY,
        x0: Math.min(anchor.x, clamp(x, 0, 1)),
        x1: Math.max(anchor.x, clamp(x, 0, 1)),
        y0: Math.min(anchor.y, clamp(y, 0, 1)),
        y1: Math.max(anchor.y, clamp(y, 0, 1)),
      },
    });
  });

  window.addEventListener("mouseup", () => {
    if (!anchor) return;
    anchor = null;
    const brush = store.get().brush;
    // a click without a drag clears the selection
    if (brush && (brush.x1 - brush.x0) < 1e-3 && (brush.y1 - brush.y0) < 1e-3) {
      store.update({ brush: null });
    }
  });
}

boot().catch((err: unknown) => {
  const app = document.getElementById("app");
  if (app) {
    app.textContent = `failed to reach the exploration service: ${String(err)}`;
  }
});
