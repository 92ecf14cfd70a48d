import math

import numpy as np
import pytest

from rgbdpose import (
    CropAugmentConfig,
    PosePrior,
    RotationAugmentConfig,
    pose_from_prior,
    relative_rotation,
    render_empty_room,
    sample_rotation_perturbation,
    warp_rgbd,
)
from rgbdpose.augment import rotation_source_coords
from rgbdpose.geometry import rot_y, rot_z
from rgbdpose.rasters import resize_bilinear

from conftest import erode, make_intrinsics


def tilted_scene(pitch=2.4, height=1.5, ceiling=3.0, intr=None, texture="checker", period=None):
    intr = intr or make_intrinsics()
    prior = PosePrior(roll=0.0, pitch=pitch, height=height)
    pose = pose_from_prior(prior)
    if period is None:
        period = 2.0 if texture == "smooth" else 0.5
    rgb, depth, valid = render_empty_room(pose, intr, ceiling, texture=texture, period=period)
    return prior, pose, intr, rgb, depth, valid


class TestPerturbationSampling:
    def test_zero_range(self):
        cfg = RotationAugmentConfig(0.0, 0.0, 0.0)
        rng = np.random.default_rng(0)
        assert sample_rotation_perturbation(cfg, rng) == (0.0, 0.0, 0.0)

    def test_scale_two_is_ten_degrees(self):
        cfg = RotationAugmentConfig.from_scale(2)
        assert cfg.pitch_range == pytest.approx(math.radians(10.0))
        rng = np.random.default_rng(1)
        for _ in range(200):
            angles = sample_rotation_perturbation(cfg, rng)
            assert all(abs(a) <= math.radians(10.0) for a in angles)

    def test_seed_determinism(self):
        cfg = RotationAugmentConfig()
        a = sample_rotation_perturbation(cfg, np.random.default_rng(7))
        b = sample_rotation_perturbation(cfg, np.random.default_rng(7))
        assert a == b

    def test_negative_range_rejected(self):
        with pytest.raises(ValueError):
            RotationAugmentConfig(pitch_range=-0.1)
        with pytest.raises(ValueError):
            RotationAugmentConfig.from_scale(-1)


class TestWarp:
    def test_identity_exact(self):
        _, _, intr, rgb, depth, valid = tilted_scene()
        rgb2, depth2, valid2 = warp_rgbd(rgb, depth, intr, np.eye(3))
        assert np.array_equal(rgb2, rgb)
        assert np.array_equal(depth2, depth)
        assert valid2.all()

    def test_non_rotation_rejected(self):
        _, _, intr, rgb, depth, _ = tilted_scene()
        with pytest.raises(ValueError, match="rotation"):
            warp_rgbd(rgb, depth, intr, 2.0 * np.eye(3))

    def test_roll_90_rotates_raster_and_keeps_depth(self):
        intr = make_intrinsics(width=240, height=240, f=300.0)
        rng = np.random.default_rng(2)
        rgb = rng.uniform(-1, 1, size=(240, 240, 3))
        depth = np.full((240, 240), 2.5)
        src = pose_from_prior(PosePrior(roll=0.0, pitch=math.pi / 2, height=1.5))
        dst = pose_from_prior(PosePrior(roll=math.pi / 2, pitch=math.pi / 2, height=1.5))
        rgb2, depth2, valid2 = warp_rgbd(rgb, depth, intr, relative_rotation(src, dst))
        assert valid2.all()
        assert np.abs(depth2 - 2.5).max() <= 1e-6
        assert np.abs(rgb2 - np.rot90(rgb, 1)).max() <= 1e-9

    def test_pitch_warp_matches_analytic_render(self):
        prior, _, intr, rgb, depth, valid = tilted_scene()
        d_pitch = 0.1
        moved = PosePrior(roll=prior.roll, pitch=prior.pitch + d_pitch, height=prior.height)
        t_rel = relative_rotation(pose_from_prior(prior), pose_from_prior(moved))
        _, depth_w, valid_w = warp_rgbd(rgb, depth, intr, t_rel, valid=valid)
        _, depth_ref, valid_ref = render_empty_room(pose_from_prior(moved), intr, 3.0)
        keep = valid_w & valid_ref
        assert keep.mean() > 0.7  # a 0.1 rad warp voids some of the frame
        rel = np.abs(depth_w[keep] - depth_ref[keep]) / depth_ref[keep]
        assert np.quantile(rel, 0.99) <= 0.01

    def test_round_trip_recovers_depth_and_rgb(self):
        # A band-limited texture keeps double-bilinear smoothing inside the
        # tolerance; fine checkerboard edges would not survive resampling.
        _, _, intr, rgb, depth, valid = tilted_scene(texture="smooth")
        rot = rot_y(0.15) @ rot_z(-0.12)
        rgb_f, depth_f, valid_f = warp_rgbd(rgb, depth, intr, rot, valid=valid)
        rgb_b, depth_b, valid_b = warp_rgbd(rgb_f, depth_f, intr, rot.T, valid=valid_f)
        keep = erode(valid_b & valid, 2)
        assert keep.mean() > 0.5
        rel = np.abs(depth_b[keep] - depth[keep]) / depth[keep]
        assert rel.max() <= 0.01
        # 2/255 on the 8-bit scale equals 2/255 * 2 on [-1, 1] rasters.
        assert np.abs(rgb_b[keep] - rgb[keep]).max() <= 2.0 / 255.0 * 2.0

    def test_forward_backward_consistency(self):
        _, _, intr, rgb, depth, valid = tilted_scene()
        rot = rot_y(-0.08) @ rot_z(0.05)
        _, depth_w, valid_w = warp_rgbd(rgb, depth, intr, rot, valid=valid)
        k = intr.matrix()
        k_inv = intr.inverse_matrix()
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 1000:
            u = rng.integers(2, intr.width - 2)
            v = rng.integers(2, intr.height - 2)
            if not valid[v, u]:
                continue
            z = depth[v, u]
            # Forward map per the rotation homography (depth cancels).
            q = k @ rot @ k_inv @ np.array([u, v, 1.0])
            uq, vq = q[0] / q[2], q[1] / q[2]
            if not (1 <= uq <= intr.width - 2 and 1 <= vq <= intr.height - 2):
                continue
            i0, j0 = int(vq), int(uq)
            if not valid_w[i0 : i0 + 2, j0 : j0 + 2].all():
                continue
            fu, fv = uq - j0, vq - i0
            sampled = (
                depth_w[i0, j0] * (1 - fv) * (1 - fu)
                + depth_w[i0, j0 + 1] * (1 - fv) * fu
                + depth_w[i0 + 1, j0] * fv * (1 - fu)
                + depth_w[i0 + 1, j0 + 1] * fv * fu
            )
            expected = z * (rot @ k_inv @ np.array([u, v, 1.0]))[2]
            assert abs(sampled - expected) / expected <= 0.01
            checked += 1

    def test_output_depth_positive_on_mask(self):
        _, _, intr, rgb, depth, valid = tilted_scene(pitch=2.0)
        rng = np.random.default_rng(4)
        for _ in range(10):
            rot = rot_y(rng.uniform(-0.3, 0.3)) @ rot_z(rng.uniform(-0.3, 0.3))
            _, depth_w, valid_w = warp_rgbd(rgb, depth, intr, rot, valid=valid)
            assert (depth_w[valid_w] > 0).all()

    def test_homography_scale_invariance(self):
        intr = make_intrinsics()
        rot = rot_y(0.2) @ rot_z(0.1)
        u0, v0, _, f0 = rotation_source_coords(intr, rot)
        for s in (2.0, 3.0, -1.0, 0.25):
            u1, v1, _, f1 = rotation_source_coords(intr, s * rot)
            keep = f0 & f1
            assert keep.all()
            assert np.abs(u1[keep] - u0[keep]).max() <= 1e-9
            assert np.abs(v1[keep] - v0[keep]).max() <= 1e-9

    def test_pan_rescales_constant_depth_by_z_factor(self):
        intr = make_intrinsics(width=100, height=80, f=90.0)
        z0 = 2.0
        rgb = np.zeros((80, 100, 3))
        depth = np.full((80, 100), z0)
        t_rel = rot_y(0.2)  # pan about the camera's vertical axis
        _, depth_w, valid_w = warp_rgbd(rgb, depth, intr, t_rel)
        a_grid, b_grid = intr.pixel_grid()
        inv = t_rel.T
        sx = inv[0, 0] * a_grid + inv[0, 1] * b_grid + inv[0, 2]
        sy = inv[1, 0] * a_grid + inv[1, 1] * b_grid + inv[1, 2]
        sz = inv[2, 0] * a_grid + inv[2, 1] * b_grid + inv[2, 2]
        # Depth factor evaluated at the source pixel, as the depth equation
        # prescribes: third component of rot @ (source unit-z ray).
        w_expected = np.empty_like(depth)
        for idx in np.ndindex(depth.shape):
            ray = np.array([sx[idx] / sz[idx], sy[idx] / sz[idx], 1.0])
            w_expected[idx] = (t_rel @ ray)[2]
        assert np.abs(depth_w[valid_w] - z0 * w_expected[valid_w]).max() <= 1e-6


class _FixedRng:
    """Duck-typed rng driving crop_augment to a chosen crop."""

    def __init__(self, scale, offset=0):
        self.scale = scale
        self.offset = offset

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.scale if hi > lo else lo

    def integers(self, lo, hi):
        return self.offset


class TestCropBaseline:
    def test_full_scale_is_identity(self):
        from rgbdpose import crop_augment

        _, _, intr, rgb, depth, valid = tilted_scene()
        rgb2, depth2, valid2 = crop_augment(
            rgb, depth, CropAugmentConfig(min_scale=1.0), np.random.default_rng(0), valid=valid
        )
        assert np.array_equal(rgb2, rgb)
        assert np.array_equal(depth2, depth)
        assert np.array_equal(valid2, valid)

    def test_half_crop_copies_depth_values(self):
        from rgbdpose import crop_augment

        _, _, intr, rgb, depth, valid = tilted_scene()
        h, w = depth.shape
        rng = _FixedRng(scale=0.0, offset=0)  # scale 0.0 -> min_scale, top-left corner
        rgb2, depth2, valid2 = crop_augment(rgb, depth, CropAugmentConfig(min_scale=0.5), rng)
        assert rgb2.shape == rgb.shape and depth2.shape == depth.shape
        # Depth values are verbatim copies from the cropped quadrant.
        quadrant = depth[: h // 2, : w // 2]
        assert np.isin(depth2, quadrant).all()
        assert np.allclose(rgb2, resize_bilinear(rgb[: h // 2, : w // 2], h, w))

    def test_seed_reproducibility(self):
        from rgbdpose import crop_augment

        _, _, intr, rgb, depth, valid = tilted_scene()
        cfg = CropAugmentConfig(min_scale=0.6)
        a = crop_augment(rgb, depth, cfg, np.random.default_rng(11))
        b = crop_augment(rgb, depth, cfg, np.random.default_rng(11))
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_bad_min_scale_rejected(self):
        with pytest.raises(ValueError):
            CropAugmentConfig(min_scale=0.0)
        with pytest.raises(ValueError):
            CropAugmentConfig(min_scale=1.5)
