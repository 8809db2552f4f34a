// Hand-rolled SVG spectrum chart: threshold on a linear x axis, counts on a
// log10 y axis. Step curves hold each level until the next breakpoint
// (right-open), matching how the fitted curve is defined.

import type { CountRow, CurveStep, SpectrumPoint } from './types.js';

export const ESTIMATE_COLOR = '#1f77b4';
export const BASELINE_COLOR = '#2ca02c';
export const EXACT_COLOR = '#000000';
export const SCATTER_COLOR = '#9e9e9e';

// log-scale floor; zero counts are drawn at this level instead of -infinity
const Y_FLOOR = 0.5;

export interface ChartSeries {
  scatter?: SpectrumPoint[];
  estimate?: CurveStep[];
  baseline?: CurveStep[];
  exact?: CountRow[];
}

export interface ChartLayout {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 840,
  height: 460,
  margin: { top: 16, right: 16, bottom: 42, left: 64 },
};

export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const start = Math.ceil(Math.log10(lo) - 1e-9);
  const end = Math.floor(Math.log10(hi) + 1e-9);
  for (let e = start; e <= end; e++) ticks.push(Math.pow(10, e));
  return ticks;
}

export function linearTicks(lo: number, hi: number, want = 8): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const raw = span / want;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
    ticks.push(Math.round(t * 1e6) / 1e6);
  }
  return ticks;
}

function fmtCount(v: number): string {
  if (v >= 1e4 || (v > 0 && v < 1e-2)) {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  return String(v);
}

interface Scales {
  x: (sigma: number) => number;
  y: (value: number) => number;
  xDomain: [number, number];
  yDomain: [number, number];
}

function buildScales(series: ChartSeries, layout: ChartLayout): Scales {
  const sigmas: number[] = [];
  const values: number[] = [];
  for (const p of series.scatter ?? []) {
    sigmas.push(p.sigma);
    values.push(p.estimate);
  }
  for (const s of series.estimate ?? []) {
    sigmas.push(s.sigma);
    values.push(s.value);
  }
  for (const s of series.baseline ?? []) {
    sigmas.push(s.sigma);
    values.push(s.value);
  }
  for (const r of series.exact ?? []) {
    sigmas.push(r.sigma);
    values.push(r.count);
  }
  const xLo = sigmas.length ? Math.min(...sigmas) : 0;
  const xHi = sigmas.length ? Math.max(...sigmas) : 1;
  const positives = values.filter((v) => v > 0);
  const yLo = Math.max(Y_FLOOR, positives.length ? Math.min(...positives) : 1);
  const yHi = Math.max(yLo * 10, positives.length ? Math.max(...positives) : 10);

  const { width, height, margin } = layout;
  const innerW = width - margin.left - margin.right;
  const innerH = height - margin.top - margin.bottom;
  const xSpan = Math.max(xHi - xLo, 1e-9);
  const lyLo = Math.log10(yLo);
  const lySpan = Math.max(Math.log10(yHi) - lyLo, 1e-9);

  return {
    x: (sigma) => margin.left + ((sigma - xLo) / xSpan) * innerW,
    y: (value) => {
      const clamped = Math.max(value, yLo);
      return margin.top + innerH - ((Math.log10(clamped) - lyLo) / lySpan) * innerH;
    },
    xDomain: [xLo, xHi],
    yDomain: [yLo, yHi],
  };
}

export function stepPath(
  steps: { sigma: number; value: number }[],
  scales: Scales,
): string {
  if (steps.length === 0) return '';
  const sorted = [...steps].sort((a, b) => a.sigma - b.sigma);
  const first = sorted[0]!;
  let d = `M${scales.x(first.sigma).toFixed(1)},${scales.y(first.value).toFixed(1)}`;
  for (let i = 1; i < sorted.length; i++) {
    const s = sorted[i]!;
    d += `H${scales.x(s.sigma).toFixed(1)}V${scales.y(s.value).toFixed(1)}`;
  }
  d += `H${scales.x(scales.xDomain[1]).toFixed(1)}`;
  return d;
}

export function renderChart(
  series: ChartSeries,
  layout: ChartLayout = DEFAULT_LAYOUT,
): string {
  const scales = buildScales(series, layout);
  const { width, height, margin } = layout;
  const plotBottom = height - margin.bottom;
  const parts: string[] = [];

  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="spectrum-chart" role="img">`,
  );

  for (const tick of decadeTicks(scales.yDomain[0], scales.yDomain[1])) {
    const y = scales.y(tick).toFixed(1);
    parts.push(
      `<line class="grid" x1="${margin.left}" y1="${y}" x2="${width - margin.right}" y2="${y}"/>`,
      `<text class="tick" x="${margin.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">${fmtCount(tick)}</text>`,
    );
  }
  for (const tick of linearTicks(scales.xDomain[0], scales.xDomain[1])) {
    const x = scales.x(tick).toFixed(1);
    parts.push(
      `<line class="grid" x1="${x}" y1="${margin.top}" x2="${x}" y2="${plotBottom}"/>`,
      `<text class="tick" x="${x}" y="${plotBottom + 18}" text-anchor="middle">${tick}</text>`,
    );
  }
  parts.push(
    `<line class="axis" x1="${margin.left}" y1="${plotBottom}" x2="${width - margin.right}" y2="${plotBottom}"/>`,
    `<line class="axis" x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${plotBottom}"/>`,
    `<text class="label" x="${(margin.left + width - margin.right) / 2}" y="${height - 6}" text-anchor="middle">frequency threshold</text>`,
  );

  for (const p of series.scatter ?? []) {
    parts.push(
      `<circle cx="${scales.x(p.sigma).toFixed(1)}" cy="${scales.y(p.estimate).toFixed(1)}" r="2" fill="${SCATTER_COLOR}" fill-opacity="0.45"/>`,
    );
  }
  const exactSteps = (series.exact ?? []).map((r) => ({ sigma: r.sigma, value: r.count }));
  if (exactSteps.length) {
    parts.push(
      `<path d="${stepPath(exactSteps, scales)}" fill="none" stroke="${EXACT_COLOR}" stroke-width="2.5"/>`,
    );
  }
  if (series.baseline?.length) {
    parts.push(
      `<path d="${stepPath(series.baseline, scales)}" fill="none" stroke="${BASELINE_COLOR}" stroke-width="2"/>`,
    );
  }
  if (series.estimate?.length) {
    parts.push(
      `<path d="${stepPath(series.estimate, scales)}" fill="none" stroke="${ESTIMATE_COLOR}" stroke-width="2"/>`,
    );
  }

  parts.push('</svg>');
  return parts.join('');
}
