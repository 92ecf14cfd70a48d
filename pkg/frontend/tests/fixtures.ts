import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { readNpy, Raster } from '../src/npy.js';

const ROOT = join(dirname(fileURLToPath(import.meta.url)), '..', 'fixtures');

export interface WarpCase {
  name: string;
  intrinsics: { fx: number; fy: number; cx: number; cy: number; width: number; height: number };
  rotation: number[];
  rgb_in: string;
  depth_in: string;
  rgb_out: string;
  depth_out: string;
}

export interface PoseMapCase {
  name: string;
  prior: { roll_deg: number; pitch_deg: number; height_m: number };
  intrinsics: { fx: number; fy: number; cx: number; cy: number; width: number; height: number };
  ceiling: number;
  variant: 'atan' | 'clip';
  clip_threshold: number;
  expected: string;
}

export interface MetricsCase {
  name: string;
  gt: string;
  pred: string;
  min_depth: number;
  max_depth: number;
  expected: {
    abs_rel: number;
    sq_rel: number;
    rms_log: number;
    delta1: number;
    delta2: number;
    n_pixels: number;
  };
}

export interface Meta {
  warp: WarpCase[];
  posemap: PoseMapCase[];
  metrics: MetricsCase[];
}

export const meta: Meta = JSON.parse(readFileSync(join(ROOT, 'meta.json'), 'utf-8'));

export function raster(name: string): Raster {
  return readNpy(join(ROOT, name));
}

export function maxAbsDiff(a: ArrayLike<number>, b: ArrayLike<number>): number {
  if (a.length !== b.length) throw new Error('length mismatch');
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    const d = Math.abs(a[i] - b[i]);
    if (Number.isNaN(d)) {
      if (a[i] === b[i]) continue; // both infinite with the same sign
      return Infinity;
    }
    if (d > worst) worst = d;
  }
  return worst;
}
