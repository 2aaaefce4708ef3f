/**
 * Parsing for the simulator's BLER CSV schema and for two-column overlay
 * (bound) curves. Any deviation from the expected schema is reported as an
 * error naming the offending column.
 */

export const BLER_HEADER = [
  'scheme',
  'snr_db',
  'sigma',
  'trials',
  'block_errors',
  'bler',
  'ci_low',
  'ci_high',
  'seed',
] as const;

export interface BlerPoint {
  scheme: string;
  snrDb: number;
  sigma: number;
  trials: number;
  blockErrors: number;
  bler: number;
  ciLow: number;
  ciHigh: number;
  seed: number;
}

export interface OverlayPoint {
  snrDb: number;
  bler: number;
}

function parseNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === '' || Number.isNaN(value)) {
    throw new Error(`line ${line}: column '${column}' is not numeric: '${raw}'`);
  }
  return value;
}

/** Parse simulator output; rejects anything not matching the exact header. */
export function parseBlerCsv(text: string): BlerPoint[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== '');
  if (lines.length === 0) {
    throw new Error('empty CSV');
  }
  const header = lines[0].split(',').map((h) => h.trim());
  for (let i = 0; i < BLER_HEADER.length; i++) {
    if (header[i] !== BLER_HEADER[i]) {
      throw new Error(
        `header mismatch at column ${i + 1}: expected '${BLER_HEADER[i]}', got '${header[i] ?? '<missing>'}'`,
      );
    }
  }
  if (header.length !== BLER_HEADER.length) {
    throw new Error(`unexpected extra column '${header[BLER_HEADER.length]}'`);
  }
  const points: BlerPoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(',');
    if (cells.length !== BLER_HEADER.length) {
      throw new Error(`line ${i + 1}: expected ${BLER_HEADER.length} cells, got ${cells.length}`);
    }
    points.push({
      scheme: cells[0],
      snrDb: parseNumber(cells[1], 'snr_db', i + 1),
      sigma: parseNumber(cells[2], 'sigma', i + 1),
      trials: parseNumber(cells[3], 'trials', i + 1),
      blockErrors: parseNumber(cells[4], 'block_errors', i + 1),
      bler: parseNumber(cells[5], 'bler', i + 1),
      ciLow: parseNumber(cells[6], 'ci_low', i + 1),
      ciHigh: parseNumber(cells[7], 'ci_high', i + 1),
      seed: parseNumber(cells[8], 'seed', i + 1),
    });
  }
  return points;
}

/**
 * Parse an externally supplied bound curve: two columns snr_db,bler with an
 * optional header row.
 */
export function parseOverlayCsv(text: string): OverlayPoint[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== '');
  if (lines.length === 0) {
    throw new Error('empty overlay CSV');
  }
  let start = 0;
  const first = lines[0].split(',').map((c) => c.trim());
  if (Number.isNaN(Number(first[0]))) {
    if (first[0] !== 'snr_db' || first[1] !== 'bler') {
      throw new Error(
        `overlay header mismatch: expected 'snr_db,bler', got '${lines[0]}'`,
      );
    }
    start = 1;
  }
  const points: OverlayPoint[] = [];
  for (let i = start; i < lines.length; i++) {
    const cells = lines[i].split(',');
    if (cells.length !== 2) {
      throw new Error(`line ${i + 1}: overlay rows need exactly snr_db,bler`);
    }
    points.push({
      snrDb: parseNumber(cells[0], 'snr_db', i + 1),
      bler: parseNumber(cells[1], 'bler', i + 1),
    });
  }
  return points;
}
