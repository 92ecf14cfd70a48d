import math

import numpy as np
import pytest

from rgbdpose import (
    EvalConfig,
    PooledMetrics,
    average_depth_map,
    compute_metrics,
    denormalize_depth,
    metrics_by_bin,
    normalize_depth,
)


class TestNormalization:
    def test_endpoints(self):
        assert normalize_depth(1.0) == -1.0
        assert normalize_depth(10.0) == 1.0

    def test_midpoint(self):
        assert normalize_depth(5.5) == 0.0

    def test_roundtrip(self):
        y = np.linspace(0.5, 20.0, 1001)
        assert np.abs(denormalize_depth(normalize_depth(y)) - y).max() <= 1e-12

    def test_out_of_range_passes_through_affinely(self):
        cfg = EvalConfig()
        assert normalize_depth(19.0, cfg) == pytest.approx(3.0)

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            EvalConfig(min_depth=5.0, max_depth=2.0)


class TestComputeMetrics:
    def test_identity_prediction(self):
        gt = np.full((20, 30), 2.0)
        report = compute_metrics(gt, gt)
        assert report.abs_rel == 0.0
        assert report.sq_rel == 0.0
        assert report.rms_log == 0.0
        assert report.delta1 == 1.0
        assert report.delta2 == 1.0
        assert report.n_pixels == 600

    def test_hand_oracle_2p0_vs_2p4(self):
        # By hand: |2.4-2|/2 = 0.2; (0.4)^2/2 = 0.08; ln(1.2) = 0.182322;
        # ratio 1.2 < 1.25 and < 1.5625.
        gt = np.full((10, 10), 2.0)
        pred = np.full((10, 10), 2.4)
        report = compute_metrics(pred, gt)
        assert report.abs_rel == pytest.approx(0.2, abs=1e-6)
        assert report.sq_rel == pytest.approx(0.08, abs=1e-6)
        assert report.rms_log == pytest.approx(0.182322, abs=1e-6)
        assert report.delta1 == 1.0
        assert report.delta2 == 1.0

    def test_hand_oracle_2p0_vs_2p6(self):
        # Ratio 1.3: fails the 1.25 gate, passes 1.5625.
        gt = np.full((4, 4), 2.0)
        pred = np.full((4, 4), 2.6)
        report = compute_metrics(pred, gt)
        assert report.delta1 == 0.0
        assert report.delta2 == 1.0

    def test_boundary_ratio_counts_as_failure(self):
        gt = np.full((4, 4), 2.0)
        report = compute_metrics(gt * 1.25, gt)
        assert report.delta1 == 0.0

    def test_no_eligible_pixels_rejected(self):
        gt = np.full((4, 4), 0.5)  # below the evaluation range
        with pytest.raises(ValueError, match="eligible"):
            compute_metrics(gt, gt)

    def test_nonpositive_prediction_rejected(self):
        gt = np.full((4, 4), 2.0)
        pred = np.full((4, 4), -1.0)
        with pytest.raises(ValueError, match="nonpositive"):
            compute_metrics(pred, gt)

    def test_mismatched_shapes_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            compute_metrics(np.ones((3, 3)), np.ones((4, 4)))

    def test_pixels_outside_range_are_ignored(self):
        rng = np.random.default_rng(0)
        gt = rng.uniform(1.5, 9.0, size=(30, 40))
        pred = gt * rng.uniform(0.9, 1.1, size=gt.shape)
        gt2 = gt.copy()
        pred2 = pred.copy()
        gt2[::3, ::3] = 0.2           # out of range: arbitrary garbage allowed
        pred2[::3, ::3] = 123.0
        base = compute_metrics(np.where(gt2 != 0.2, pred, 1.0), np.where(gt2 != 0.2, gt, 0.2))
        poked = compute_metrics(np.where(gt2 != 0.2, pred, 123.0), gt2)
        assert base == poked

    def test_delta_symmetry(self):
        # Both rasters stay inside the evaluation range so the eligible set
        # is identical after the swap; the max-ratio itself is symmetric.
        rng = np.random.default_rng(1)
        gt = rng.uniform(1.5, 7.0, size=(25, 25))
        pred = gt * rng.uniform(0.8, 1.25, size=gt.shape)
        a = compute_metrics(pred, gt)
        b = compute_metrics(gt, pred)
        assert a.delta1 == b.delta1 and a.delta2 == b.delta2

    def test_scaling_prediction_degrades_monotonically(self):
        rng = np.random.default_rng(2)
        gt = rng.uniform(1.5, 9.0, size=(25, 25))
        pred = gt * rng.uniform(0.95, 1.05, size=gt.shape)
        prev = compute_metrics(pred, gt)
        for lam in (1.1, 1.3, 1.8):
            cur = compute_metrics(pred * lam, gt)
            assert cur.abs_rel >= prev.abs_rel
            assert cur.rms_log >= prev.rms_log
            assert cur.delta1 <= prev.delta1
            assert cur.delta2 <= prev.delta2
            prev = cur

    def test_validity_masks_respected(self):
        gt = np.full((6, 6), 2.0)
        pred = np.full((6, 6), 2.0)
        pred[0, 0] = 400.0
        mask = np.ones_like(gt, dtype=bool)
        mask[0, 0] = False
        report = compute_metrics(pred, gt, pred_valid=mask)
        assert report.abs_rel == 0.0
        assert report.n_pixels == 35


class _Rec:
    def __init__(self, prior):
        self.prior = prior


class _Prior:
    def __init__(self, pitch):
        self.pitch = pitch
        self.roll = 0.0
        self.height = 1.5


class TestBreakdown:
    def test_single_image_bin_equals_direct_metrics(self):
        rng = np.random.default_rng(3)
        gt = rng.uniform(1.5, 9.0, size=(20, 20))
        pred = gt * 1.05
        rows = metrics_by_bin(
            [_Rec(_Prior(1.0))], [pred], [gt], "pitch", [0.0, math.pi / 2, math.pi]
        )
        assert rows[0].count == 1 and rows[1].count == 0
        assert rows[1].report is None
        assert rows[0].report == compute_metrics(pred, gt)

    def test_identical_images_in_two_bins_match(self):
        rng = np.random.default_rng(4)
        gt = rng.uniform(1.5, 9.0, size=(20, 20))
        pred = gt * 0.93
        rows = metrics_by_bin(
            [_Rec(_Prior(1.0)), _Rec(_Prior(2.0))],
            [pred, pred], [gt, gt],
            "pitch", [0.0, math.pi / 2, math.pi],
        )
        assert rows[0].report == rows[1].report

    def test_pooled_equals_pixel_weighted_mean(self):
        rng = np.random.default_rng(5)
        gt1 = rng.uniform(1.5, 9.0, size=(10, 10))
        gt2 = rng.uniform(1.5, 9.0, size=(30, 30))
        pred1, pred2 = gt1 * 1.2, gt2 * 0.8
        rows = metrics_by_bin(
            [_Rec(_Prior(1.0)), _Rec(_Prior(1.1))],
            [pred1, pred2], [gt1, gt2],
            "pitch", [0.0, math.pi],
        )
        r1 = compute_metrics(pred1, gt1)
        r2 = compute_metrics(pred2, gt2)
        n1, n2 = r1.n_pixels, r2.n_pixels
        expected = (r1.abs_rel * n1 + r2.abs_rel * n2) / (n1 + n2)
        assert rows[0].report.abs_rel == pytest.approx(expected, rel=1e-12)

    def test_misaligned_sequences_rejected(self):
        with pytest.raises(ValueError, match="misaligned"):
            metrics_by_bin([_Rec(_Prior(1.0))], [], [], "pitch", [0, 3])

    def test_per_image_mode_averages_reports(self):
        gt = np.full((5, 5), 2.0)
        rows = metrics_by_bin(
            [_Rec(_Prior(1.0)), _Rec(_Prior(1.2))],
            [gt * 1.2, gt * 0.8], [gt, gt],
            "pitch", [0.0, math.pi],
            per_image=True,
        )
        assert rows[0].report.abs_rel == pytest.approx((0.2 + 0.2) / 2)


class TestPooledAccumulator:
    def test_streaming_matches_batch(self):
        rng = np.random.default_rng(6)
        pooled = PooledMetrics()
        gts, preds = [], []
        for _ in range(5):
            gt = rng.uniform(1.5, 9.0, size=(15, 15))
            pred = gt * rng.uniform(0.8, 1.2, size=gt.shape)
            pooled.add(pred, gt)
            gts.append(gt)
            preds.append(pred)
        batch = compute_metrics(np.concatenate(preds), np.concatenate(gts))
        streamed = pooled.report()
        assert streamed.abs_rel == pytest.approx(batch.abs_rel, rel=1e-12)
        assert streamed.n_pixels == batch.n_pixels

    def test_empty_accumulator_rejected(self):
        with pytest.raises(ValueError):
            PooledMetrics().report()


class TestAverageDepthMap:
    def test_single_input_passthrough(self):
        d = np.array([[1.0, 2.0], [0.0, 3.0]])
        out, valid = average_depth_map([d])
        assert np.array_equal(out, np.where(d > 0, d, 0.0))
        assert valid.tolist() == [[True, True], [False, True]]

    def test_two_constant_maps(self):
        out, valid = average_depth_map([np.full((3, 3), 1.0), np.full((3, 3), 3.0)])
        assert np.allclose(out, 2.0)
        assert valid.all()

    def test_disjoint_validity_passthrough(self):
        a = np.array([[2.0, 0.0]])
        b = np.array([[0.0, 4.0]])
        out, valid = average_depth_map([a, b])
        assert np.array_equal(out, [[2.0, 4.0]])
        assert valid.all()

    def test_invalid_only_where_all_invalid(self):
        a = np.array([[0.0, 1.0]])
        b = np.array([[0.0, 0.0]])
        _, valid = average_depth_map([a, b])
        assert valid.tolist() == [[False, True]]

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            average_depth_map([])
