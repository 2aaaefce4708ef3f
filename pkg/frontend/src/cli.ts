/**
 * Command line figure renderer.
 *
 *   pacsim-plot --input "joint=results/joint.csv" \
 *               --input "separate=results/separate.csv" \
 *               --overlay "JSCC bound=bounds/jscc.csv" \
 *               --title "N=128 joint vs separate" --out figure.svg
 */

import { readFileSync, writeFileSync } from 'node:fs';

import { parseBlerCsv, parseOverlayCsv } from './csv.js';
import { Curve, Overlay, renderSvg } from './plot.js';

interface Args {
  inputs: { label: string; path: string }[];
  overlays: { label: string; path: string }[];
  out: string;
  title?: string;
}

function splitLabeled(raw: string, flag: string): { label: string; path: string } {
  const idx = raw.indexOf('=');
  if (idx <= 0 || idx === raw.length - 1) {
    throw new Error(`${flag} expects label=path, got '${raw}'`);
  }
  return { label: raw.slice(0, idx), path: raw.slice(idx + 1) };
}

export function parseArgs(argv: string[]): Args {
  const args: Args = { inputs: [], overlays: [], out: '' };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case '--input':
        if (value === undefined) throw new Error('--input needs a value');
        args.inputs.push(splitLabeled(value, '--input'));
        i++;
        break;
      case '--overlay':
        if (value === undefined) throw new Error('--overlay needs a value');
        args.overlays.push(splitLabeled(value, '--overlay'));
        i++;
        break;
      case '--out':
        if (value === undefined) throw new Error('--out needs a value');
        args.out = value;
        i++;
        break;
      case '--title':
        if (value === undefined) throw new Error('--title needs a value');
        args.title = value;
        i++;
        break;
      default:
        throw new Error(`unknown flag '${flag}'`);
    }
  }
  if (args.inputs.length === 0) throw new Error('at least one --input is required');
  if (!args.out) throw new Error('--out is required');
  return args;
}

export function run(argv: string[]): void {
  const args = parseArgs(argv);
  const curves: Curve[] = args.inputs.map(({ label, path }) => {
    try {
      return { label, points: parseBlerCsv(readFileSync(path, 'ascii')) };
    } catch (err) {
      throw new Error(`${path}: ${(err as Error).message}`);
    }
  });
  const overlays: Overlay[] = args.overlays.map(({ label, path }) => {
    try {
      return { label, points: parseOverlayCsv(readFileSync(path, 'ascii')) };
    } catch (err) {
      throw new Error(`${path}: ${(err as Error).message}`);
    }
  });
  writeFileSync(args.out, renderSvg(curves, overlays, { title: args.title }));
  console.log(`wrote ${args.out}`);
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  try {
    run(process.argv.slice(2));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exit(1);
  }
}
