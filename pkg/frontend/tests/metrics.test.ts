import { describe, expect, it } from 'vitest';

import { computeMetrics } from '../src/index.js';
import { meta, raster } from './fixtures.js';

describe('computeMetrics golden parity', () => {
  for (const c of meta.metrics) {
    it(`matches the primary eval report for ${c.name}`, () => {
      const report = computeMetrics(raster(c.pred).data, raster(c.gt).data, {
        minDepth: c.min_depth,
        maxDepth: c.max_depth,
      });
      expect(report.nPixels).toBe(c.expected.n_pixels);
      expect(Math.abs(report.absRel - c.expected.abs_rel)).toBeLessThanOrEqual(1e-6);
      expect(Math.abs(report.sqRel - c.expected.sq_rel)).toBeLessThanOrEqual(1e-6);
      expect(Math.abs(report.rmsLog - c.expected.rms_log)).toBeLessThanOrEqual(1e-6);
      expect(Math.abs(report.delta1 - c.expected.delta1)).toBeLessThanOrEqual(1e-6);
      expect(Math.abs(report.delta2 - c.expected.delta2)).toBeLessThanOrEqual(1e-6);
    });
  }

  it('hand oracle: constant 2.0 vs 2.4', () => {
    const gt = new Float64Array(100).fill(2.0);
    const pred = new Float64Array(100).fill(2.4);
    const report = computeMetrics(pred, gt);
    expect(report.absRel).toBeCloseTo(0.2, 6);
    expect(report.sqRel).toBeCloseTo(0.08, 6);
    expect(report.rmsLog).toBeCloseTo(0.182322, 6);
    expect(report.delta1).toBe(1.0);
    expect(report.delta2).toBe(1.0);
  });

  it('ratio 1.3 fails delta1 and passes delta2', () => {
    const gt = new Float64Array(16).fill(2.0);
    const report = computeMetrics(new Float64Array(16).fill(2.6), gt);
    expect(report.delta1).toBe(0.0);
    expect(report.delta2).toBe(1.0);
  });

  it('rejects an empty eligible set with the primary error message', () => {
    const gt = new Float64Array(8).fill(0.5);
    expect(() => computeMetrics(gt, gt)).toThrow('no eligible pixels in the evaluation range');
  });

  it('rejects nonpositive predictions with the primary error message', () => {
    const gt = new Float64Array(8).fill(2.0);
    expect(() => computeMetrics(new Float64Array(8), gt)).toThrow(
      'prediction is nonpositive on an eligible pixel (log undefined)',
    );
  });
});
