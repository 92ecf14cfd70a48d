"""Vectorized numpy implementations of the per-pixel kernels.

This is the fallback backend; `rgbdpose._kernels._core` is the compiled
twin with identical semantics.  Keep the arithmetic in the two files
textually parallel so they agree to rounding noise.
"""

import numpy as np

BACKEND_NAME = "numpy"

# Source rays with a z-component at or below this are behind the source
# camera and produce no correspondence.
_BEHIND_EPS = 1e-9
# Rays closer to plane-parallel than this denominator yield +inf depth.
_PARALLEL_EPS = 1e-12


def _reflect(x, n):
    """Fold coordinates into [0, n] by mirroring about the endpoints."""
    if n <= 0:
        return np.zeros_like(x)
    period = 2.0 * n
    m = np.abs(x) % period
    return np.minimum(m, period - m)


def _stencil(u, v, height, width):
    """Bilinear stencil corners and weights for sample coordinates."""
    j0 = np.clip(np.floor(u).astype(np.int64), 0, max(width - 2, 0))
    i0 = np.clip(np.floor(v).astype(np.int64), 0, max(height - 2, 0))
    j1 = np.minimum(j0 + 1, width - 1)
    i1 = np.minimum(i0 + 1, height - 1)
    fu = u - j0
    fv = v - i0
    w00 = (1.0 - fv) * (1.0 - fu)
    w01 = (1.0 - fv) * fu
    w10 = fv * (1.0 - fu)
    w11 = fv * fu
    return i0, i1, j0, j1, w00, w01, w10, w11


def warp_rotation_rgbd(rgb, depth, valid, rot_to_src, fx, fy, cx, cy):
    """Backward-warp an RGB-D pair under a pure camera rotation.

    rot_to_src maps target-camera ray directions into the source camera
    frame.  RGB samples use reflection padding; depth samples are bilinear,
    multiplied by the per-pixel z-component ratio of the rotation, and masked
    wherever the source coordinate leaves the raster, the source ray points
    behind the camera, or any stencil corner is invalid.
    """
    height, width = depth.shape
    a = (np.arange(width, dtype=np.float64) - cx) / fx
    b = (np.arange(height, dtype=np.float64) - cy) / fy
    a_grid, b_grid = np.meshgrid(a, b)
    m = rot_to_src
    sx = m[0, 0] * a_grid + m[0, 1] * b_grid + m[0, 2]
    sy = m[1, 0] * a_grid + m[1, 1] * b_grid + m[1, 2]
    sz = m[2, 0] * a_grid + m[2, 1] * b_grid + m[2, 2]

    front = sz > _BEHIND_EPS
    sz_safe = np.where(front, sz, 1.0)
    u = fx * (sx / sz_safe) + cx
    v = fy * (sy / sz_safe) + cy
    w = 1.0 / sz_safe

    ur = _reflect(u, width - 1.0)
    vr = _reflect(v, height - 1.0)
    i0, i1, j0, j1, w00, w01, w10, w11 = _stencil(ur, vr, height, width)
    rgb_out = (
        w00[..., None] * rgb[i0, j0]
        + w01[..., None] * rgb[i0, j1]
        + w10[..., None] * rgb[i1, j0]
        + w11[..., None] * rgb[i1, j1]
    )
    rgb_out[~front] = 0.0

    in_bounds = front & (u >= 0.0) & (u <= width - 1.0) & (v >= 0.0) & (v <= height - 1.0)
    i0, i1, j0, j1, w00, w01, w10, w11 = _stencil(
        np.clip(u, 0.0, width - 1.0), np.clip(v, 0.0, height - 1.0), height, width
    )
    stencil_ok = valid[i0, j0] & valid[i0, j1] & valid[i1, j0] & valid[i1, j1]
    valid_out = in_bounds & (stencil_ok != 0)
    depth_out = (
        w00 * depth[i0, j0] + w01 * depth[i0, j1] + w10 * depth[i1, j0] + w11 * depth[i1, j1]
    ) * w
    depth_out = np.where(valid_out, depth_out, 0.0)
    return rgb_out, depth_out, valid_out.astype(np.uint8)


def plane_depth(r20, r21, r22, height_m, ceiling, fx, fy, cx, cy, out_h, out_w):
    """Per-pixel depth along the camera axis to the floor/ceiling pair.

    (r20, r21, r22) is the third row of the world-from-camera rotation; the
    camera sits at height_m inside (0, ceiling).  Exactly one plane lies in
    front of each non-parallel ray, so the value is that intersection's
    axis-depth; plane-parallel rays yield +inf.
    """
    a = (np.arange(out_w, dtype=np.float64) - cx) / fx
    b = (np.arange(out_h, dtype=np.float64) - cy) / fy
    a_grid, b_grid = np.meshgrid(a, b)
    dz = r20 * a_grid + r21 * b_grid + r22
    with np.errstate(divide="ignore"):
        lam = np.where(dz < 0.0, -height_m / dz, (ceiling - height_m) / dz)
    return np.where(np.abs(dz) < _PARALLEL_EPS, np.inf, lam)


def metric_sums(pred, gt, eligible, thr1, thr2):
    """Error sums over eligible pixels for the depth metric suite.

    All inputs are flat 1D arrays (eligible is uint8).  Returns (count,
    sum |p-g|/g, sum (p-g)^2/g, sum (ln p - ln g)^2, count max-ratio < thr1,
    count max-ratio < thr2).
    """
    keep = eligible.astype(bool)
    p = pred[keep]
    g = gt[keep]
    n = int(p.size)
    if n == 0:
        return 0, 0.0, 0.0, 0.0, 0, 0
    diff = p - g
    s_abs = float(np.abs(diff / g).sum())
    s_sq = float((diff * diff / g).sum())
    lg = np.log(p) - np.log(g)
    s_log2 = float((lg * lg).sum())
    ratio = np.maximum(p / g, g / p)
    return n, s_abs, s_sq, s_log2, int((ratio < thr1).sum()), int((ratio < thr2).sum())
