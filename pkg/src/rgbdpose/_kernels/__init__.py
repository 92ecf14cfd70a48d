"""Hot-path kernels with a compiled core and a numpy fallback.

The backend is selected once at import time.  Set RGBDPOSE_KERNELS to
"native" or "numpy" to force a backend ("native" raises if the compiled
extension is unavailable); the default "auto" prefers the compiled core.
"""

import os

_requested = os.environ.get("RGBDPOSE_KERNELS", "auto").lower()
if _requested not in ("auto", "native", "numpy"):
    raise RuntimeError(
        f"RGBDPOSE_KERNELS must be auto, native or numpy, got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "native"):
    try:
        from . import _core as _impl
    except ImportError:
        if _requested == "native":
            raise
if _impl is None:
    from . import _numpy_ref as _impl

BACKEND = _impl.BACKEND_NAME
warp_rotation_rgbd = _impl.warp_rotation_rgbd
plane_depth = _impl.plane_depth
metric_sums = _impl.metric_sums

__all__ = ["BACKEND", "warp_rotation_rgbd", "plane_depth", "metric_sums"]
