// Wire types mirroring the service's JSON documents. The run result here is
// byte-compatible with what the CLI writes with --format json.

export interface RunConfig {
  kind: 'estimate' | 'baseline';
  sigma_min: number;
  sigma_max: number;
  n_paths: number;
  seed: number;
  include_empty_set: boolean;
  log_fit: boolean;
}

export interface DatasetShape {
  rows: number;
  attrs: number;
}

export interface SpectrumPoint {
  sigma: number;
  estimate: number;
}

export interface CurveStep {
  sigma: number;
  value: number;
}

export interface RunResult {
  config: RunConfig;
  dataset: DatasetShape;
  points: SpectrumPoint[];
  curve: CurveStep[];
  runtime_ms: number;
}

export interface CountRow {
  sigma: number;
  count: number;
}

export interface ExactResult {
  config: {
    kind: 'exact';
    sigma_min: number;
    include_empty_set: boolean;
    max_count: number;
  };
  dataset: DatasetShape;
  counts: CountRow[];
  runtime_ms: number;
}

export interface DatasetEntry {
  name: string;
  rows: number;
  attrs: number;
  description: string;
  default_sigma_min: number;
  default_sigma_max: number;
  default_n_paths: number;
  exact_sigma_min: number;
}

export interface DatasetDetail extends DatasetEntry {
  exact: {
    sigma_min: number;
    counts: [number, number][];
  };
}

export interface ErrorBody {
  code: string;
  message: string;
  line?: number;
  cap?: number;
  count?: number;
}

export type StreamEvent =
  | { type: 'progress'; done: number; total: number }
  | { type: 'result'; result: RunResult }
  | ({ type: 'error' } & ErrorBody);

export interface RunRequest {
  data?: string;
  dataset?: string;
  sigma_min?: number;
  sigma_max?: number;
  n_paths: number;
  seed: number;
  include_empty_set: boolean;
  log_fit: boolean;
}
