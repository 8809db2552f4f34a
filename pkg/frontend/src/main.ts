import { ApiError, datasetDetail, listDatasets, parseText, runExact, streamRun } from './api.js';
import { renderChart } from './chart.js';
import { summarizeFimi, FimiError } from './fimi.js';
import {
  defaultParams,
  defaultSigmaMax,
  exportRunJson,
  formatElapsed,
  pushRun,
  runLabel,
  validateParams,
  type PanelParams,
  type RunRecord,
} from './state.js';
import type { CountRow, DatasetEntry, RunRequest } from './types.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const datasetSelect = el<HTMLSelectElement>('dataset-select');
const fileInput = el<HTMLInputElement>('file-input');
const sourceInfo = el<HTMLElement>('source-info');
const pathsInput = el<HTMLInputElement>('paths-input');
const sigmaMinInput = el<HTMLInputElement>('sigma-min-input');
const sigmaMaxInput = el<HTMLInputElement>('sigma-max-input');
const seedInput = el<HTMLInputElement>('seed-input');
const emptySetInput = el<HTMLInputElement>('empty-set-input');
const logFitInput = el<HTMLInputElement>('log-fit-input');
const exactInput = el<HTMLInputElement>('exact-input');
const runButton = el<HTMLButtonElement>('run-button');
const cancelButton = el<HTMLButtonElement>('cancel-button');
const exportButton = el<HTMLButtonElement>('export-button');
const errorsBox = el<HTMLElement>('param-errors');
const statusBox = el<HTMLElement>('run-status');
const progressBar = el<HTMLProgressElement>('run-progress');
const chartBox = el<HTMLElement>('chart');
const historyList = el<HTMLElement>('history');

interface Source {
  kind: 'dataset' | 'file';
  name: string;
  rows: number;
  data?: string;
  exactCounts?: CountRow[];
  exactSigmaMin?: number;
}

let datasets: DatasetEntry[] = [];
let source: Source | null = null;
let history: RunRecord[] = [];
let activeRecord: RunRecord | null = null;
let controller: AbortController | null = null;
let runCounter = 0;
let ticker: number | null = null;

function readParams(): PanelParams {
  return {
    nPaths: Number(pathsInput.value),
    sigmaMin: Number(sigmaMinInput.value),
    sigmaMax: Number(sigmaMaxInput.value),
    seed: Number(seedInput.value),
    includeEmptySet: emptySetInput.checked,
    logFit: logFitInput.checked,
    computeExact: exactInput.checked,
  };
}

function applyDefaults(rows: number) {
  const p = defaultParams(rows);
  pathsInput.value = String(p.nPaths);
  sigmaMinInput.value = String(p.sigmaMin);
  sigmaMaxInput.value = String(p.sigmaMax);
  refreshValidation();
}

function refreshValidation() {
  const errors = validateParams(readParams(), source?.rows ?? null);
  if (!source) errors.unshift('pick a dataset or load a file');
  errorsBox.textContent = errors.join('; ');
  runButton.disabled = errors.length > 0 || controller !== null;
}

async function selectDataset(name: string) {
  const detail = await datasetDetail(name);
  source = {
    kind: 'dataset',
    name,
    rows: detail.rows,
    exactCounts: detail.exact.counts.map(([sigma, count]) => ({ sigma, count })),
    exactSigmaMin: detail.exact.sigma_min,
  };
  sourceInfo.textContent = `${detail.rows} rows x ${detail.attrs} attributes. ${detail.description}`;
  applyDefaults(detail.rows);
}

async function loadFile(file: File) {
  const text = await file.text();
  try {
    summarizeFimi(text);
  } catch (err) {
    if (err instanceof FimiError) {
      sourceInfo.textContent = `${file.name}: line ${err.line}: ${err.message}`;
      source = null;
      refreshValidation();
      return;
    }
    throw err;
  }
  // server parse is authoritative; it also reports the dense attribute count
  const shape = await parseText(text);
  source = { kind: 'file', name: file.name, rows: shape.rows, data: text };
  sourceInfo.textContent = `${file.name}: ${shape.rows} rows x ${shape.attrs} attributes (processed locally)`;
  datasetSelect.value = '';
  applyDefaults(shape.rows);
}

function buildRequest(p: PanelParams): RunRequest {
  const base: RunRequest = {
    n_paths: p.nPaths,
    sigma_min: p.sigmaMin,
    sigma_max: p.sigmaMax,
    seed: p.seed,
    include_empty_set: p.includeEmptySet,
    log_fit: p.logFit,
  };
  if (source!.kind === 'dataset') base.dataset = source!.name;
  else base.data = source!.data;
  return base;
}

function showRecord(record: RunRecord) {
  activeRecord = record;
  const exact =
    record.exact?.counts ??
    (source?.kind === 'dataset' ? source.exactCounts : undefined);
  chartBox.innerHTML = renderChart({
    scatter: record.estimate.points,
    estimate: record.estimate.curve,
    baseline: record.baseline?.curve,
    exact,
  });
  statusBox.textContent = `${record.label} finished in ${formatElapsed(record.elapsedMs)}`;
  exportButton.disabled = false;
  renderHistory();
}

function renderHistory() {
  historyList.innerHTML = '';
  for (const record of history) {
    const item = document.createElement('li');
    const link = document.createElement('button');
    link.type = 'button';
    link.textContent = `${record.label} (${formatElapsed(record.elapsedMs)})`;
    if (record === activeRecord) link.classList.add('active');
    link.onclick = () => showRecord(record);
    item.appendChild(link);
    historyList.appendChild(item);
  }
}

function startTicker(startedAt: number) {
  stopTicker();
  ticker = window.setInterval(() => {
    statusBox.textContent = `running... ${formatElapsed(performance.now() - startedAt)}`;
  }, 100);
}

function stopTicker() {
  if (ticker !== null) {
    clearInterval(ticker);
    ticker = null;
  }
}

async function run() {
  if (!source) return;
  const p = readParams();
  const request = buildRequest(p);
  controller = new AbortController();
  refreshValidation();
  cancelButton.disabled = false;
  progressBar.hidden = false;
  progressBar.value = 0;
  const startedAt = performance.now();
  startTicker(startedAt);
  try {
    const estimate = await streamRun('estimate', request, (done, total) => {
      progressBar.max = total * 2;
      progressBar.value = done;
    }, controller.signal);
    const baseline = await streamRun('baseline', request, (done, total) => {
      progressBar.max = total * 2;
      progressBar.value = total + done;
    }, controller.signal);
    let exact = null;
    if (p.computeExact) {
      exact = await runExact(
        {
          ...(request.dataset ? { dataset: request.dataset } : { data: request.data }),
          sigma_min: p.sigmaMin,
          include_empty_set: p.includeEmptySet,
        },
        controller.signal,
      );
    }
    const record: RunRecord = {
      id: ++runCounter,
      label: runLabel(source.name, p),
      startedAt,
      elapsedMs: performance.now() - startedAt,
      estimate,
      baseline,
      exact,
    };
    history = pushRun(history, record);
    showRecord(record);
  } catch (err) {
    if (err instanceof DOMException && err.name === 'AbortError') {
      statusBox.textContent = 'run cancelled';
    } else if (err instanceof ApiError) {
      statusBox.textContent = `error (${err.code}): ${err.message}`;
    } else {
      statusBox.textContent = `unexpected error: ${String(err)}`;
    }
  } finally {
    stopTicker();
    controller = null;
    cancelButton.disabled = true;
    progressBar.hidden = true;
    refreshValidation();
  }
}

function exportActive() {
  if (!activeRecord) return;
  const blob = new Blob([exportRunJson(activeRecord.estimate)], {
    type: 'application/json',
  });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = `freqspec-run-${activeRecord.id}.json`;
  a.click();
  URL.revokeObjectURL(url);
}

async function init() {
  datasets = await listDatasets();
  for (const d of datasets) {
    const opt = document.createElement('option');
    opt.value = d.name;
    opt.textContent = `${d.name} (${d.rows} x ${d.attrs})`;
    datasetSelect.appendChild(opt);
  }
  datasetSelect.onchange = () => {
    if (datasetSelect.value) void selectDataset(datasetSelect.value);
  };
  fileInput.onchange = () => {
    const file = fileInput.files?.[0];
    if (file) void loadFile(file);
  };
  for (const input of [pathsInput, sigmaMinInput, sigmaMaxInput, seedInput]) {
    input.oninput = refreshValidation;
  }
  runButton.onclick = () => void run();
  cancelButton.onclick = () => controller?.abort();
  exportButton.onclick = exportActive;
  const first = datasets[0];
  if (first) {
    datasetSelect.value = first.name;
    await selectDataset(first.name);
  }
  refreshValidation();
}

void init();
