// Client-side peek at a transaction file: one line per transaction,
// space-separated non-negative integer item ids, blank lines skipped.
// The server re-parses authoritatively; this exists so the panel can show
// the shape (and refuse junk) before anything is sent.

export class FimiError extends Error {
  line: number;

  constructor(message: string, line: number) {
    super(message);
    this.line = line;
  }
}

export interface FimiSummary {
  rows: number;
  attrs: number;
  maxId: number;
}

export function summarizeFimi(text: string): FimiSummary {
  const items = new Set<number>();
  let rows = 0;
  let maxId = 0;
  const lines = text.split('\n');
  for (let i = 0; i < lines.length; i++) {
    const line = (lines[i] ?? '').trim();
    if (line === '') continue;
    for (const tok of line.split(/\s+/)) {
      if (!/^\d+$/.test(tok)) {
        throw new FimiError(`expected an integer item id, got "${tok}"`, i + 1);
      }
      const id = parseInt(tok, 10);
      items.add(id);
      if (id > maxId) maxId = id;
    }
    rows++;
  }
  if (rows === 0) {
    throw new FimiError('no transactions found', 1);
  }
  return { rows, attrs: items.size, maxId };
}
