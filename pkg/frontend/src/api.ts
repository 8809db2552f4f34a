// Thin client for the local service. Every request goes to a relative
// /api/... path, so dataset bytes can only ever travel to the page's own
// origin; the parity and privacy tests pin that down.

import type {
  DatasetDetail,
  DatasetEntry,
  DatasetShape,
  ErrorBody,
  ExactResult,
  RunRequest,
  RunResult,
  StreamEvent,
} from './types.js';

export class ApiError extends Error {
  code: string;
  line?: number;
  cap?: number;

  constructor(body: ErrorBody) {
    super(body.message);
    this.code = body.code;
    this.line = body.line;
    this.cap = body.cap;
  }
}

async function getJson<T>(path: string, base = ''): Promise<T> {
  const resp = await fetch(base + path);
  if (!resp.ok) {
    throw await errorFrom(resp);
  }
  return (await resp.json()) as T;
}

async function errorFrom(resp: Response): Promise<ApiError> {
  try {
    const body = (await resp.json()) as { error?: ErrorBody };
    if (body.error) return new ApiError(body.error);
  } catch {
    // non-JSON error body, fall through
  }
  return new ApiError({ code: 'http_error', message: `request failed (${resp.status})` });
}

export function listDatasets(base = ''): Promise<DatasetEntry[]> {
  return getJson<DatasetEntry[]>('/api/datasets', base);
}

export function datasetDetail(name: string, base = ''): Promise<DatasetDetail> {
  return getJson<DatasetDetail>(`/api/datasets/${name}`, base);
}

export async function parseText(data: string, base = ''): Promise<DatasetShape> {
  const resp = await fetch(base + '/api/parse', {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify({ data }),
  });
  if (!resp.ok) throw await errorFrom(resp);
  return (await resp.json()) as DatasetShape;
}

async function* ndjsonEvents(resp: Response): AsyncGenerator<StreamEvent> {
  if (!resp.body) throw new ApiError({ code: 'http_error', message: 'empty response body' });
  const reader = resp.body.getReader();
  const decoder = new TextDecoder();
  let buffer = '';
  for (;;) {
    const { done, value } = await reader.read();
    if (done) break;
    buffer += decoder.decode(value, { stream: true });
    let nl;
    while ((nl = buffer.indexOf('\n')) >= 0) {
      const line = buffer.slice(0, nl).trim();
      buffer = buffer.slice(nl + 1);
      if (line) yield JSON.parse(line) as StreamEvent;
    }
  }
  const tail = buffer.trim();
  if (tail) yield JSON.parse(tail) as StreamEvent;
}

export async function streamRun(
  kind: 'estimate' | 'baseline',
  request: RunRequest,
  onProgress?: (done: number, total: number) => void,
  signal?: AbortSignal,
  base = '',
): Promise<RunResult> {
  const resp = await fetch(`${base}/api/${kind}`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(request),
    signal,
  });
  if (!resp.ok) throw await errorFrom(resp);
  for await (const event of ndjsonEvents(resp)) {
    if (event.type === 'progress') {
      onProgress?.(event.done, event.total);
    } else if (event.type === 'result') {
      return event.result;
    } else {
      throw new ApiError(event);
    }
  }
  throw new ApiError({ code: 'http_error', message: 'stream ended without a result' });
}

export async function runExact(
  request: { data?: string; dataset?: string; sigma_min: number; include_empty_set: boolean },
  signal?: AbortSignal,
  base = '',
): Promise<ExactResult> {
  const resp = await fetch(base + '/api/exact', {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(request),
    signal,
  });
  if (!resp.ok) throw await errorFrom(resp);
  for await (const event of ndjsonEvents(resp)) {
    if (event.type === 'result') return event.result as unknown as ExactResult;
    if (event.type === 'error') throw new ApiError(event);
  }
  throw new ApiError({ code: 'http_error', message: 'stream ended without a result' });
}
