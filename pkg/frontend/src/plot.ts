/**
 * Deterministic SVG rendering of BLER-vs-SNR curves: one marked curve with
 * confidence whiskers per labeled simulation CSV, optional dashed overlay
 * curves for externally computed bounds, logarithmic BLER axis.
 */

import { BlerPoint, OverlayPoint } from './csv.js';

export interface Curve {
  label: string;
  points: BlerPoint[];
}

export interface Overlay {
  label: string;
  points: OverlayPoint[];
}

export interface PlotOptions {
  title?: string;
  width?: number;
  height?: number;
}

const PALETTE = ['#1f6fb4', '#d13d3d', '#2e8b57', '#946bc7', '#c78a1e', '#3aa6a6'];
const OVERLAY_PALETTE = ['#555555', '#888888', '#333333'];

const MARGIN = { left: 70, right: 24, top: 40, bottom: 52 };

function fmt(x: number): string {
  return Number(x.toFixed(3)).toString();
}

/**
 * Zero block-error points cannot sit on a log axis; they are drawn at half
 * of 1/trials, below every resolvable rate.
 */
export function effectiveBler(p: BlerPoint): number {
  return p.bler > 0 ? p.bler : 0.5 / Math.max(p.trials, 1);
}

export function renderSvg(curves: Curve[], overlays: Overlay[], opts: PlotOptions = {}): string {
  if (curves.length === 0) {
    throw new Error('nothing to plot: no input curves');
  }
  const width = opts.width ?? 760;
  const height = opts.height ?? 520;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs: number[] = [];
  const ys: number[] = [];
  for (const curve of curves) {
    for (const p of curve.points) {
      xs.push(p.snrDb);
      ys.push(effectiveBler(p));
      if (p.ciLow > 0) ys.push(p.ciLow);
      ys.push(p.ciHigh > 0 ? p.ciHigh : effectiveBler(p));
    }
  }
  for (const ov of overlays) {
    for (const p of ov.points) {
      xs.push(p.snrDb);
      if (p.bler > 0) ys.push(p.bler);
    }
  }
  let xMin = Math.min(...xs);
  let xMax = Math.max(...xs);
  if (xMin === xMax) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  const yMaxExp = Math.ceil(Math.log10(Math.max(...ys)));
  const yMinExp = Math.floor(Math.log10(Math.min(...ys)));

  const sx = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const sy = (y: number) =>
    MARGIN.top + ((yMaxExp - Math.log10(y)) / Math.max(yMaxExp - yMinExp, 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(
      `<text x="${width / 2}" y="22" text-anchor="middle" font-size="15">${opts.title}</text>`,
    );
  }

  // grid and axes
  for (let e = yMaxExp; e >= yMinExp; e--) {
    const y = sy(10 ** e);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${width - MARGIN.right}" y2="${fmt(y)}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">1e${e}</text>`,
    );
  }
  const xTickStep = xMax - xMin > 4 ? 1 : 0.5;
  for (let x = Math.ceil(xMin / xTickStep) * xTickStep; x <= xMax + 1e-9; x += xTickStep) {
    const px = sx(x);
    parts.push(
      `<line x1="${fmt(px)}" y1="${MARGIN.top}" x2="${fmt(px)}" y2="${height - MARGIN.bottom}" stroke="#eeeeee" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${height - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${fmt(x)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 14}" text-anchor="middle" font-size="13">SNR (dB)</text>`,
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">BLER</text>`,
  );

  // overlay (bound) curves first, underneath the data
  overlays.forEach((ov, i) => {
    const color = OVERLAY_PALETTE[i % OVERLAY_PALETTE.length];
    const pts = ov.points
      .filter((p) => p.bler > 0)
      .map((p) => `${fmt(sx(p.snrDb))},${fmt(sy(p.bler))}`)
      .join(' ');
    parts.push(
      `<polyline class="overlay" points="${pts}" fill="none" stroke="${color}" stroke-width="1.5" stroke-dasharray="6 4"/>`,
    );
  });

  // data curves with markers and Wilson whiskers
  curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length];
    const sorted = [...curve.points].sort((a, b) => a.snrDb - b.snrDb);
    const pts = sorted.map((p) => `${fmt(sx(p.snrDb))},${fmt(sy(effectiveBler(p)))}`).join(' ');
    parts.push(
      `<polyline class="curve" points="${pts}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
    for (const p of sorted) {
      const px = sx(p.snrDb);
      const py = sy(effectiveBler(p));
      const lo = p.ciLow > 0 ? p.ciLow : effectiveBler(p);
      const hi = p.ciHigh > 0 ? p.ciHigh : effectiveBler(p);
      parts.push(
        `<line class="whisker" x1="${fmt(px)}" y1="${fmt(sy(lo))}" x2="${fmt(px)}" y2="${fmt(sy(hi))}" stroke="${color}" stroke-width="1"/>`,
      );
      parts.push(
        `<circle class="marker" cx="${fmt(px)}" cy="${fmt(py)}" r="3.4" fill="${color}"/>`,
      );
    }
  });

  // legend
  const legendEntries = [
    ...curves.map((c, i) => ({ label: c.label, color: PALETTE[i % PALETTE.length], dash: '' })),
    ...overlays.map((o, i) => ({
      label: o.label,
      color: OVERLAY_PALETTE[i % OVERLAY_PALETTE.length],
      dash: ' stroke-dasharray="6 4"',
    })),
  ];
  legendEntries.forEach((entry, i) => {
    const y = MARGIN.top + 16 + 18 * i;
    const x = width - MARGIN.right - 180;
    parts.push(
      `<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${entry.color}" stroke-width="2"${entry.dash}/>`,
    );
    parts.push(
      `<text x="${x + 32}" y="${y + 4}" font-size="12">${entry.label}</text>`,
    );
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
