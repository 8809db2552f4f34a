// Pure panel/run-history logic, kept out of the DOM layer so it can be
// tested headlessly.

import type { RunResult, ExactResult } from './types.js';

export const UI_DEFAULT_PATHS = 1000;
export const MAX_SEED = 2 ** 64 - 1;
const HISTORY_LIMIT = 20;

export interface PanelParams {
  nPaths: number;
  sigmaMin: number;
  sigmaMax: number;
  seed: number;
  includeEmptySet: boolean;
  logFit: boolean;
  computeExact: boolean;
}

export function defaultSigmaMax(rows: number): number {
  return Math.min(1000, rows);
}

export function defaultParams(rows: number): PanelParams {
  return {
    nPaths: UI_DEFAULT_PATHS,
    sigmaMin: 1,
    sigmaMax: defaultSigmaMax(rows),
    seed: 1,
    includeEmptySet: true,
    logFit: false,
    computeExact: false,
  };
}

export function validateParams(p: PanelParams, rows: number | null): string[] {
  const errors: string[] = [];
  if (!Number.isInteger(p.nPaths) || p.nPaths < 1) {
    errors.push('paths must be a positive integer');
  }
  if (!Number.isInteger(p.sigmaMin) || p.sigmaMin < 1) {
    errors.push('threshold minimum must be >= 1');
  }
  if (!Number.isInteger(p.sigmaMax) || p.sigmaMax < p.sigmaMin) {
    errors.push('threshold maximum must be >= the minimum');
  }
  if (rows !== null && p.sigmaMax > rows) {
    errors.push(`threshold maximum exceeds the ${rows} rows in the data`);
  }
  if (!Number.isInteger(p.seed) || p.seed < 0 || p.seed > MAX_SEED) {
    errors.push('seed must be an unsigned 64-bit integer');
  }
  return errors;
}

export interface RunRecord {
  id: number;
  label: string;
  startedAt: number;
  elapsedMs: number;
  estimate: RunResult;
  baseline: RunResult | null;
  exact: ExactResult | null;
}

export function pushRun(history: RunRecord[], record: RunRecord): RunRecord[] {
  return [record, ...history].slice(0, HISTORY_LIMIT);
}

export function runLabel(source: string, p: PanelParams): string {
  return `${source} N=${p.nPaths} [${p.sigmaMin},${p.sigmaMax}] seed=${p.seed}`;
}

export function formatElapsed(ms: number): string {
  if (ms < 1000) return `${Math.round(ms)} ms`;
  const s = ms / 1000;
  if (s < 60) return `${s.toFixed(1)} s`;
  return `${Math.floor(s / 60)}m ${Math.round(s % 60)}s`;
}

// Stable stringify matching Python's json.dumps(sort_keys=True,
// separators=(",", ":")) for the value types used in result documents.
export function canonicalJson(value: unknown): string {
  if (value === null || typeof value !== 'object') {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return '[' + value.map(canonicalJson).join(',') + ']';
  }
  const obj = value as Record<string, unknown>;
  const keys = Object.keys(obj).sort();
  const body = keys.map((k) => JSON.stringify(k) + ':' + canonicalJson(obj[k]));
  return '{' + body.join(',') + '}';
}

export function withoutRuntime<T extends { runtime_ms?: number }>(doc: T): Omit<T, 'runtime_ms'> {
  const { runtime_ms: _drop, ...rest } = doc;
  return rest;
}

export function exportRunJson(result: RunResult): string {
  return JSON.stringify(result, null, 2) + '\n';
}
