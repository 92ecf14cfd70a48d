/**
 * Per-pixel pose-prior encoding: axis-depth of each pixel ray's intersection
 * with an infinite floor/ceiling pair, squashed by atan or clip+rescale.
 */

import { Intrinsics, PosePrior, rotationFromPrior } from './geometry.js';

const PARALLEL_EPS = 1e-12;

export interface PoseMapConfig {
  ceiling: number; // floor-to-ceiling distance, meters
  variant: 'atan' | 'clip';
  clipThreshold?: number; // meters, clip variant only (default 20)
}

/** Raw pseudo depth along the camera axis; +Infinity on horizon rays. */
export function pseudoDepthMap(
  prior: PosePrior,
  intr: Intrinsics,
  ceiling: number,
  yaw = 0,
): Float64Array {
  if (!(prior.height > 0 && prior.height < ceiling)) {
    throw new Error(`camera height ${prior.height} must lie inside (0, ${ceiling})`);
  }
  const r = rotationFromPrior(prior, yaw);
  const r20 = r[6];
  const r21 = r[7];
  const r22 = r[8];
  const { fx, fy, cx, cy, width, height } = intr;
  const out = new Float64Array(width * height);
  for (let i = 0; i < height; i++) {
    const b = (i - cy) / fy;
    for (let j = 0; j < width; j++) {
      const a = (j - cx) / fx;
      const dz = r20 * a + r21 * b + r22;
      if (Math.abs(dz) < PARALLEL_EPS) {
        out[width * i + j] = Infinity;
      } else if (dz < 0) {
        out[width * i + j] = -prior.height / dz;
      } else {
        out[width * i + j] = (ceiling - prior.height) / dz;
      }
    }
  }
  return out;
}

/** Encode the prior as a single-channel map per the configured variant. */
export function encodePoseMap(
  prior: PosePrior,
  intr: Intrinsics,
  cfg: PoseMapConfig,
  yaw = 0,
): Float64Array {
  const m = pseudoDepthMap(prior, intr, cfg.ceiling, yaw);
  if (cfg.variant === 'atan') {
    for (let i = 0; i < m.length; i++) m[i] = Math.atan(m[i]);
    return m;
  }
  const tau = cfg.clipThreshold ?? 20;
  if (!(tau > 0)) throw new Error(`clip threshold must be positive, got ${tau}`);
  for (let i = 0; i < m.length; i++) {
    m[i] = Math.min(m[i], tau) * (2 / tau) - 1;
  }
  return m;
}
