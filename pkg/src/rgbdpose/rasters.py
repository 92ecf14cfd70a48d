"""Raster codecs and resampling.

On-disk conventions:

* RGB: 8-bit PNG; in memory rasters are float64 (H, W, 3) in [-1, 1].
* Depth: 16-bit single-channel PNG in millimeters, 0 = invalid pixel.
* Encoded pose maps / float fixtures: single-channel float32 ``.npy``.
"""

import numpy as np
from PIL import Image

DEPTH_UNIT = 1000.0  # millimeters per meter
MAX_PNG_DEPTH = 65535 / DEPTH_UNIT


def write_rgb_png(path, rgb):
    """Store a [-1, 1] float RGB raster as 8-bit PNG."""
    arr = np.clip(np.rint((np.asarray(rgb) + 1.0) * 0.5 * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(arr).save(path, format="PNG")


def read_rgb_png(path):
    with Image.open(path) as img:
        arr = np.asarray(img.convert("RGB"), dtype=np.float64)
    return arr / 255.0 * 2.0 - 1.0


def write_depth_png(path, depth, valid=None):
    """Store metric depth as 16-bit millimeter PNG (0 marks invalid pixels).

    Depths beyond the 16-bit millimeter range are a hard error; clip or mask
    such pixels before writing, or use write_float_raster for unbounded data.
    """
    depth = np.asarray(depth, dtype=np.float64)
    if valid is None:
        valid = np.isfinite(depth) & (depth > 0)
    mm = np.where(valid, np.rint(depth * DEPTH_UNIT), 0.0)
    if np.any(mm > 65535):
        raise ValueError(
            f"depth exceeds the 16-bit PNG limit of {MAX_PNG_DEPTH} m; "
            "mask far pixels or store the raster as float32 .npy instead"
        )
    Image.fromarray(mm.astype(np.uint16)).save(path, format="PNG")


def read_depth_png(path):
    """Read a millimeter PNG; returns (depth_m, valid)."""
    with Image.open(path) as img:
        if img.mode not in ("I;16", "I", "I;16B"):
            raise ValueError(f"{path}: expected a 16-bit depth PNG, got mode {img.mode}")
        arr = np.asarray(img, dtype=np.uint32)
    valid = arr > 0
    return arr.astype(np.float64) / DEPTH_UNIT, valid


def write_float_raster(path, values):
    """Store a single-channel raster as float32 .npy."""
    arr = np.asarray(values, dtype=np.float32)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D raster, got shape {arr.shape}")
    with open(path, "wb") as f:
        np.save(f, arr)


def read_float_raster(path):
    arr = np.load(path)
    if arr.ndim != 2:
        raise ValueError(f"{path}: expected a 2D raster, got shape {arr.shape}")
    return arr.astype(np.float64)


def write_float_rgb(path, rgb):
    """Store an RGB raster as float32 .npy (fixture/debug format)."""
    arr = np.asarray(rgb, dtype=np.float32)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) raster, got shape {arr.shape}")
    with open(path, "wb") as f:
        np.save(f, arr)


def read_float_rgb(path):
    arr = np.load(path)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"{path}: expected an (H, W, 3) raster, got shape {arr.shape}")
    return arr.astype(np.float64)


def _coords(n_in, n_out):
    # Center-aligned resampling grid, clamped to the source extent.
    x = (np.arange(n_out, dtype=np.float64) + 0.5) * (n_in / n_out) - 0.5
    return np.clip(x, 0.0, n_in - 1.0)


def resize_bilinear(img, out_h, out_w):
    """Bilinear resize on the leading two axes; identity dims return a copy."""
    img = np.asarray(img)
    h, w = img.shape[:2]
    if (h, w) == (out_h, out_w):
        return img.copy()
    u = _coords(w, out_w)
    v = _coords(h, out_h)
    j0 = np.clip(np.floor(u).astype(np.int64), 0, max(w - 2, 0))
    i0 = np.clip(np.floor(v).astype(np.int64), 0, max(h - 2, 0))
    j1 = np.minimum(j0 + 1, w - 1)
    i1 = np.minimum(i0 + 1, h - 1)
    fu = (u - j0).reshape((1, out_w) + (1,) * (img.ndim - 2))
    fv = (v - i0).reshape((out_h, 1) + (1,) * (img.ndim - 2))
    p00 = img[np.ix_(i0, j0)]
    p01 = img[np.ix_(i0, j1)]
    p10 = img[np.ix_(i1, j0)]
    p11 = img[np.ix_(i1, j1)]
    return (
        p00 * (1 - fv) * (1 - fu)
        + p01 * (1 - fv) * fu
        + p10 * fv * (1 - fu)
        + p11 * fv * fu
    )


def resize_nearest(img, out_h, out_w):
    """Nearest-neighbor resize on the leading two axes."""
    img = np.asarray(img)
    h, w = img.shape[:2]
    if (h, w) == (out_h, out_w):
        return img.copy()
    j = np.floor(_coords(w, out_w) + 0.5).astype(np.int64)
    i = np.floor(_coords(h, out_h) + 0.5).astype(np.int64)
    return img[np.ix_(i, j)]
