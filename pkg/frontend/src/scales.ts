/** Linear mapping between data and pixel space for cell axes. */

export function project(v: number, d0: number, d1: number, r0: number, r1: number): number {
  if (d1 === d0) return (r0 + r1) / 2;
  return r0 + ((v - d0) / (d1 - d0)) * (r1 - r0);
}

export function unproject(p: number, d0: number, d1: number, r0: number, r1: number): number {
  if (r1 === r0) return (d0 + d1) / 2;
  return d0 + ((p - r0) / (r1 - r0)) * (d1 - d0);
}

export function clamp(x: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, x));
}

/** Round-valued ticks inside [lo, hi]: steps of 1, 2 or 5 times a power of ten. */
export function ticks(lo: number, hi: number, count = 4): number[] {
  if (!(hi > lo) || count <= 0) return [lo];
  const raw = (hi - lo) / count;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = power;
  for (const m of [1, 2, 5, 10]) {
    step = m * power;
    if (step >= raw) break;
  }
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  const out: number[] = [];
  for (let i = first; i <= last; i++) out.push(i === 0 ? 0 : i * step);
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 10000 || a < 0.01) return v.toExponential(1);
  return String(parseFloat(v.toPrecision(4)));
}
