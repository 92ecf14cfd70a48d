"""Depth normalization, the evaluation metric suite and non-learned baselines."""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation range and accuracy-threshold settings."""

    min_depth: float = 1.0
    max_depth: float = 10.0
    delta_base: float = 1.25

    def __post_init__(self):
        if not 0 < self.min_depth < self.max_depth:
            raise ValueError(
                f"need 0 < min_depth < max_depth, got [{self.min_depth}, {self.max_depth}]"
            )
        if not self.delta_base > 1:
            raise ValueError(f"delta base must exceed 1, got {self.delta_base}")


@dataclass(frozen=True)
class MetricsReport:
    abs_rel: float
    sq_rel: float
    rms_log: float
    delta1: float
    delta2: float
    n_pixels: int

    def as_dict(self):
        return {
            "abs_rel": self.abs_rel,
            "sq_rel": self.sq_rel,
            "rms_log": self.rms_log,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "n_pixels": self.n_pixels,
        }


DEFAULT_EVAL = EvalConfig()


def normalize_depth(depth, cfg=DEFAULT_EVAL):
    """Affine map sending [min_depth, max_depth] to [-1, 1] (values outside pass through)."""
    depth = np.asarray(depth, dtype=np.float64)
    return ((depth - cfg.min_depth) / (cfg.max_depth - cfg.min_depth) - 0.5) * 2.0


def denormalize_depth(values, cfg=DEFAULT_EVAL):
    """Inverse of normalize_depth."""
    values = np.asarray(values, dtype=np.float64)
    return (values * 0.5 + 0.5) * (cfg.max_depth - cfg.min_depth) + cfg.min_depth


def eligible_mask(gt, cfg=DEFAULT_EVAL, gt_valid=None, pred_valid=None):
    """Pixels that enter the metrics: valid on both sides, gt inside the range."""
    gt = np.asarray(gt, dtype=np.float64)
    mask = (gt >= cfg.min_depth) & (gt <= cfg.max_depth) & np.isfinite(gt)
    if gt_valid is not None:
        mask &= gt_valid
    if pred_valid is not None:
        mask &= pred_valid
    return mask


def _sums(pred, gt, mask, cfg):
    pred = np.ascontiguousarray(pred, dtype=np.float64).ravel()
    gt = np.ascontiguousarray(gt, dtype=np.float64).ravel()
    mask = np.ascontiguousarray(mask, dtype=np.uint8).ravel()
    if np.any((pred <= 0) & (mask != 0)):
        raise ValueError("prediction is nonpositive on an eligible pixel (log undefined)")
    return _kernels.metric_sums(pred, gt, mask, cfg.delta_base, cfg.delta_base**2)


def _report(n, s_abs, s_sq, s_log2, n1, n2):
    return MetricsReport(
        abs_rel=s_abs / n,
        sq_rel=s_sq / n,
        rms_log=math.sqrt(s_log2 / n),
        delta1=n1 / n,
        delta2=n2 / n,
        n_pixels=n,
    )


def compute_metrics(pred, gt, cfg=DEFAULT_EVAL, pred_valid=None, gt_valid=None):
    """Depth error metrics over the eligible pixels of one raster pair.

    Metrics: mean |p-g|/g, mean (p-g)^2/g, sqrt(mean (ln p - ln g)^2) and the
    fractions with max(p/g, g/p) strictly below delta_base and delta_base^2.

    Raises ValueError when no pixel is eligible or when the prediction is
    nonpositive on an eligible pixel.
    """
    pred = np.asarray(pred, dtype=np.float64)
    gt = np.asarray(gt, dtype=np.float64)
    if pred.shape != gt.shape:
        raise ValueError(f"shape mismatch: pred {pred.shape} vs gt {gt.shape}")
    mask = eligible_mask(gt, cfg, gt_valid=gt_valid, pred_valid=pred_valid)
    n, s_abs, s_sq, s_log2, n1, n2 = _sums(pred, gt, mask, cfg)
    if n == 0:
        raise ValueError("no eligible pixels in the evaluation range")
    return _report(n, s_abs, s_sq, s_log2, n1, n2)


class PooledMetrics:
    """Streaming pixel-pooled accumulator for dataset-scale evaluation."""

    def __init__(self, cfg=DEFAULT_EVAL):
        self.cfg = cfg
        self._totals = np.zeros(6)
        self.n_images = 0

    def add(self, pred, gt, pred_valid=None, gt_valid=None):
        mask = eligible_mask(gt, self.cfg, gt_valid=gt_valid, pred_valid=pred_valid)
        self._totals += _sums(pred, gt, mask, self.cfg)
        self.n_images += 1

    def report(self):
        n = int(self._totals[0])
        if n == 0:
            raise ValueError("no eligible pixels were accumulated")
        return _report(
            n, self._totals[1], self._totals[2], self._totals[3],
            int(self._totals[4]), int(self._totals[5]),
        )


@dataclass(frozen=True)
class BinReport:
    """Per-bin aggregation entry; report is None for empty bins."""

    lo: float
    hi: float
    count: int
    report: MetricsReport | None


_BIN_KEYS = ("pitch", "roll", "height")


def metrics_by_bin(records, preds, gts, key, edges, cfg=DEFAULT_EVAL,
                   pred_valids=None, gt_valids=None, per_image=False):
    """Metric breakdown over pose bins.

    Pools the eligible pixels of every image falling in a bin (default), or
    averages per-image reports when per_image is set.  ``records`` only needs
    a ``prior`` attribute carrying roll/pitch/height in radians/meters.
    """
    if key not in _BIN_KEYS:
        raise ValueError(f"bin key must be one of {_BIN_KEYS}, got {key!r}")
    if not (len(records) == len(preds) == len(gts)):
        raise ValueError(
            f"misaligned sequences: {len(records)} records, {len(preds)} preds, {len(gts)} gts"
        )
    edges = np.asarray(edges, dtype=np.float64)
    values = np.array([getattr(r.prior, key) for r in records])
    bins = np.clip(np.digitize(values, edges) - 1, 0, len(edges) - 2)

    out = []
    for b in range(len(edges) - 1):
        members = np.nonzero(bins == b)[0]
        if members.size == 0:
            out.append(BinReport(lo=float(edges[b]), hi=float(edges[b + 1]), count=0, report=None))
            continue
        if per_image:
            reports = []
            for i in members:
                reports.append(compute_metrics(
                    preds[i], gts[i], cfg,
                    pred_valid=None if pred_valids is None else pred_valids[i],
                    gt_valid=None if gt_valids is None else gt_valids[i],
                ))
            report = MetricsReport(
                abs_rel=float(np.mean([r.abs_rel for r in reports])),
                sq_rel=float(np.mean([r.sq_rel for r in reports])),
                rms_log=float(np.mean([r.rms_log for r in reports])),
                delta1=float(np.mean([r.delta1 for r in reports])),
                delta2=float(np.mean([r.delta2 for r in reports])),
                n_pixels=int(sum(r.n_pixels for r in reports)),
            )
        else:
            totals = np.zeros(6)
            for i in members:
                mask = eligible_mask(
                    gts[i], cfg,
                    gt_valid=None if gt_valids is None else gt_valids[i],
                    pred_valid=None if pred_valids is None else pred_valids[i],
                )
                totals += _sums(preds[i], gts[i], mask, cfg)
            n = int(totals[0])
            if n == 0:
                raise ValueError(f"bin {b} has images but no eligible pixels")
            report = _report(n, totals[1], totals[2], totals[3], int(totals[4]), int(totals[5]))
        out.append(BinReport(
            lo=float(edges[b]), hi=float(edges[b + 1]), count=int(members.size), report=report
        ))
    return out


def average_depth_map(depths, valids=None):
    """Per-pixel mean depth over a dataset, the no-input prediction baseline.

    A pixel of the result is invalid only where every input is invalid.
    Returns (depth, valid).
    """
    if len(depths) == 0:
        raise ValueError("need at least one depth map")
    stack = np.stack([np.asarray(d, dtype=np.float64) for d in depths])
    if valids is None:
        vstack = np.isfinite(stack) & (stack > 0)
    else:
        vstack = np.stack([np.asarray(v, dtype=bool) for v in valids])
        if vstack.shape != stack.shape:
            raise ValueError("validity masks do not match the depth maps")
    counts = vstack.sum(axis=0)
    total = np.where(vstack, stack, 0.0).sum(axis=0)
    valid = counts > 0
    depth = np.where(valid, total / np.maximum(counts, 1), 0.0)
    return depth, valid
