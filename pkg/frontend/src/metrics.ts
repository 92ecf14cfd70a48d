/**
 * Depth evaluation metrics over an eligibility-masked raster pair; matches
 * the primary's definitions (strict < on the max-ratio thresholds, ground
 * truth gated to [minDepth, maxDepth]).
 */

export interface MetricsOptions {
  minDepth?: number;
  maxDepth?: number;
  deltaBase?: number;
  predValid?: Uint8Array;
  gtValid?: Uint8Array;
}

export interface MetricsReport {
  absRel: number;
  sqRel: number;
  rmsLog: number;
  delta1: number;
  delta2: number;
  nPixels: number;
}

export function computeMetrics(
  pred: ArrayLike<number>,
  gt: ArrayLike<number>,
  opts: MetricsOptions = {},
): MetricsReport {
  if (pred.length !== gt.length) {
    throw new Error(`shape mismatch: pred ${pred.length} vs gt ${gt.length}`);
  }
  const minDepth = opts.minDepth ?? 1.0;
  const maxDepth = opts.maxDepth ?? 10.0;
  const base = opts.deltaBase ?? 1.25;
  const thr1 = base;
  const thr2 = base * base;

  let n = 0;
  let sAbs = 0;
  let sSq = 0;
  let sLog2 = 0;
  let n1 = 0;
  let n2 = 0;
  for (let i = 0; i < gt.length; i++) {
    const g = gt[i];
    if (!Number.isFinite(g) || g < minDepth || g > maxDepth) continue;
    if (opts.gtValid && !opts.gtValid[i]) continue;
    if (opts.predValid && !opts.predValid[i]) continue;
    const p = pred[i];
    if (!(p > 0)) {
      throw new Error('prediction is nonpositive on an eligible pixel (log undefined)');
    }
    n += 1;
    const diff = p - g;
    sAbs += Math.abs(diff / g);
    sSq += (diff * diff) / g;
    const lg = Math.log(p) - Math.log(g);
    sLog2 += lg * lg;
    const ratio = p > g ? p / g : g / p;
    if (ratio < thr1) n1 += 1;
    if (ratio < thr2) n2 += 1;
  }
  if (n === 0) {
    throw new Error('no eligible pixels in the evaluation range');
  }
  return {
    absRel: sAbs / n,
    sqRel: sSq / n,
    rmsLog: Math.sqrt(sLog2 / n),
    delta1: n1 / n,
    delta2: n2 / n,
    nPixels: n,
  };
}
