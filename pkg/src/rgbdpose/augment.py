"""Rotation-only RGB-D view synthesis and the pose-ignorant crop baseline.

The warp exploits the fact that a pure camera rotation induces a
depth-independent homography between the two views, so the whole raster can
be backward-warped without knowing per-pixel geometry; only the resampled
depth values need the per-pixel z-component rescale.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .rasters import resize_bilinear, resize_nearest

_FIVE_DEG = math.radians(5.0)


@dataclass(frozen=True)
class RotationAugmentConfig:
    """Symmetric per-axis rotation jitter half-ranges, radians."""

    pitch_range: float = 0.1
    roll_range: float = 0.1
    yaw_range: float = 0.1

    def __post_init__(self):
        if min(self.pitch_range, self.roll_range, self.yaw_range) < 0:
            raise ValueError("jitter ranges must be nonnegative")

    @classmethod
    def from_scale(cls, scale):
        """Integer jitter scale; each axis range is scale * 5 degrees."""
        if scale < 0:
            raise ValueError(f"scale must be nonnegative, got {scale}")
        r = scale * _FIVE_DEG
        return cls(pitch_range=r, roll_range=r, yaw_range=r)


@dataclass(frozen=True)
class CropAugmentConfig:
    """Random crop-and-resize baseline that copies depth values verbatim."""

    min_scale: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.min_scale <= 1.0:
            raise ValueError(f"min_scale must lie in (0, 1], got {self.min_scale}")


def sample_rotation_perturbation(cfg, rng):
    """Draw (d_pitch, d_roll, d_yaw) independently and uniformly, radians."""
    return (
        float(rng.uniform(-cfg.pitch_range, cfg.pitch_range)),
        float(rng.uniform(-cfg.roll_range, cfg.roll_range)),
        float(rng.uniform(-cfg.yaw_range, cfg.yaw_range)),
    )


def _check_rotation(matrix):
    m = np.asarray(matrix, dtype=np.float64)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 rotation, got shape {m.shape}")
    if np.abs(m.T @ m - np.eye(3)).max() > 1e-9 or abs(np.linalg.det(m) - 1.0) > 1e-9:
        raise ValueError("relative transform is not a rotation")
    return m


def rotation_source_coords(intr, rotation):
    """Backward-map source coordinates and depth factors for a rotation.

    Projective helper behind warp_rgbd, exposed for correspondence tests:
    any nonzero scaling of ``rotation`` yields the same coordinates.

    Returns (u, v, w, front): source pixel coordinates, the per-pixel depth
    rescale factor, and whether the source ray points in front of the
    source camera.
    """
    m = np.asarray(rotation, dtype=np.float64)
    a_grid, b_grid = intr.pixel_grid()
    inv = np.linalg.inv(m)
    sx = inv[0, 0] * a_grid + inv[0, 1] * b_grid + inv[0, 2]
    sy = inv[1, 0] * a_grid + inv[1, 1] * b_grid + inv[1, 2]
    sz = inv[2, 0] * a_grid + inv[2, 1] * b_grid + inv[2, 2]
    front = np.abs(sz) > 1e-9
    sz_safe = np.where(front, sz, 1.0)
    u = intr.fx * (sx / sz_safe) + intr.cx
    v = intr.fy * (sy / sz_safe) + intr.cy
    return u, v, 1.0 / sz_safe, front


def warp_rgbd(rgb, depth, intr, rotation, valid=None):
    """Synthesize the RGB-D pair seen after rotating the camera.

    Args:
        rgb: (H, W, 3) raster in [-1, 1].
        depth: (H, W) metric depth.
        intr: CameraIntrinsics matching the rasters.
        rotation: 3x3 relative rotation taking source-camera vectors to the
            new camera frame (see geometry.relative_rotation).
        valid: optional (H, W) bool mask; defaults to finite positive depth.

    Returns:
        (rgb, depth, valid) in the new view.  RGB is reflection-padded where
        the source coordinate leaves the raster; depth is masked there and
        wherever the bilinear stencil touches an invalid source pixel.
    """
    rgb = np.ascontiguousarray(rgb, dtype=np.float64)
    depth = np.ascontiguousarray(depth, dtype=np.float64)
    if rgb.shape != (intr.height, intr.width, 3) or depth.shape != (intr.height, intr.width):
        raise ValueError(
            f"raster shapes {rgb.shape}/{depth.shape} do not match intrinsics "
            f"{intr.height}x{intr.width}"
        )
    m = _check_rotation(rotation)
    if valid is None:
        valid = np.isfinite(depth) & (depth > 0)
    valid = np.ascontiguousarray(valid, dtype=np.uint8)

    if np.array_equal(m, np.eye(3)):
        return rgb.copy(), depth.copy(), valid.astype(bool)

    rot_to_src = np.ascontiguousarray(m.T)
    rgb_out, depth_out, valid_out = _kernels.warp_rotation_rgbd(
        rgb, depth, valid, rot_to_src, intr.fx, intr.fy, intr.cx, intr.cy
    )
    return rgb_out, depth_out, valid_out.astype(bool)


def crop_augment(rgb, depth, cfg, rng, valid=None):
    """Random axis-aligned crop resized back to the input dimensions.

    Deliberately reproduces the naive baseline: depth values are copied
    (nearest-neighbor) rather than recomputed, and the caller's intrinsics
    and pose are left untouched, so the result is geometrically inconsistent
    whenever the crop is not the full frame.
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    depth = np.asarray(depth, dtype=np.float64)
    if valid is None:
        valid = np.isfinite(depth) & (depth > 0)
    h, w = depth.shape
    scale = float(rng.uniform(cfg.min_scale, 1.0))
    ch = max(1, int(round(h * scale)))
    cw = max(1, int(round(w * scale)))
    oy = int(rng.integers(0, h - ch + 1))
    ox = int(rng.integers(0, w - cw + 1))
    rgb_c = rgb[oy : oy + ch, ox : ox + cw]
    depth_c = depth[oy : oy + ch, ox : ox + cw]
    valid_c = valid[oy : oy + ch, ox : ox + cw]
    return (
        resize_bilinear(rgb_c, h, w),
        resize_nearest(depth_c, h, w),
        resize_nearest(valid_c, h, w),
    )
