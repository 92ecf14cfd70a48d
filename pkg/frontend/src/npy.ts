/**
 * Minimal reader for the float32 `.npy` rasters the primary toolkit emits.
 * Supports C-ordered little-endian float32 arrays (npy format 1.0/2.0).
 */

import { readFileSync } from 'node:fs';

export interface Raster {
  data: Float32Array;
  shape: number[];
}

const MAGIC = [0x93, 0x4e, 0x55, 0x4d, 0x50, 0x59]; // \x93NUMPY

export function parseNpy(buf: Buffer): Raster {
  for (let i = 0; i < MAGIC.length; i++) {
    if (buf[i] !== MAGIC[i]) throw new Error('not an npy file');
  }
  const major = buf[6];
  let headerLen: number;
  let offset: number;
  if (major === 1) {
    headerLen = buf.readUInt16LE(8);
    offset = 10;
  } else {
    headerLen = buf.readUInt32LE(8);
    offset = 12;
  }
  const header = buf.toString('latin1', offset, offset + headerLen);

  const descr = /'descr':\s*'([^']+)'/.exec(header)?.[1];
  if (descr !== '<f4') throw new Error(`unsupported dtype ${descr}; expected <f4`);
  if (/'fortran_order':\s*True/.test(header)) {
    throw new Error('fortran-ordered npy is not supported');
  }
  const shapeText = /'shape':\s*\(([^)]*)\)/.exec(header)?.[1] ?? '';
  const shape = shapeText
    .split(',')
    .map((s) => s.trim())
    .filter((s) => s.length > 0)
    .map(Number);

  const count = shape.reduce((a, b) => a * b, 1);
  const start = offset + headerLen;
  // Copy to guarantee 4-byte alignment regardless of the Buffer's offset.
  const bytes = Uint8Array.prototype.slice.call(buf, start, start + 4 * count);
  return { data: new Float32Array(bytes.buffer, 0, count), shape };
}

export function readNpy(path: string): Raster {
  return parseNpy(readFileSync(path));
}
