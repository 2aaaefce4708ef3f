import assert from 'node:assert/strict';
import { test } from 'node:test';

import { parseBlerCsv, parseOverlayCsv } from '../src/csv.js';

const HEADER = 'scheme,snr_db,sigma,trials,block_errors,bler,ci_low,ci_high,seed';

test('parses simulator output losslessly', () => {
  const text = [
    HEADER,
    'jscc-joint,2.5,0.4216965034,10000,17,0.0017,0.001060094907,0.002725428593,1',
    'jscc-joint,3.5,0.3758374043,10000,3,0.0003,0.0001023097803,0.0008794596919,1',
  ].join('\n');
  const points = parseBlerCsv(text);
  assert.equal(points.length, 2);
  assert.equal(points[0].scheme, 'jscc-joint');
  assert.equal(points[0].snrDb, 2.5);
  assert.equal(points[0].trials, 10000);
  assert.equal(points[0].blockErrors, 17);
  assert.equal(points[0].bler, 0.0017);
  assert.ok(points[0].ciLow < points[0].bler && points[0].bler < points[0].ciHigh);
  assert.equal(points[1].seed, 1);
});

test('rejects a renamed column and names it', () => {
  const bad = HEADER.replace('sigma', 'stddev');
  assert.throws(
    () => parseBlerCsv(`${bad}\njscc-joint,2.5,0.42,10,1,0.1,0.01,0.3,1`),
    /expected 'sigma', got 'stddev'/,
  );
});

test('rejects a missing column and names it', () => {
  const bad = HEADER.split(',').slice(0, 8).join(',');
  assert.throws(() => parseBlerCsv(`${bad}\n`), /expected 'seed', got '<missing>'/);
});

test('rejects extra columns', () => {
  assert.throws(() => parseBlerCsv(`${HEADER},extra\n`), /unexpected extra column 'extra'/);
});

test('rejects non-numeric cells with the column name', () => {
  const text = `${HEADER}\njscc-joint,2.5,0.42,10,one,0.1,0.01,0.3,1`;
  assert.throws(() => parseBlerCsv(text), /column 'block_errors' is not numeric/);
});

test('rejects short rows', () => {
  const text = `${HEADER}\njscc-joint,2.5,0.42`;
  assert.throws(() => parseBlerCsv(text), /expected 9 cells, got 3/);
});

test('rejects an empty file', () => {
  assert.throws(() => parseBlerCsv(''), /empty CSV/);
});

test('parses overlays with and without header', () => {
  const withHeader = parseOverlayCsv('snr_db,bler\n2.0,0.1\n3.0,0.01');
  const bare = parseOverlayCsv('2.0,0.1\n3.0,0.01');
  assert.deepEqual(withHeader, bare);
  assert.equal(withHeader[1].bler, 0.01);
});

test('rejects malformed overlay header', () => {
  assert.throws(() => parseOverlayCsv('snr,value\n1,0.5'), /overlay header mismatch/);
  assert.throws(() => parseOverlayCsv('1.0,0.5,9'), /exactly snr_db,bler/);
});
