import numpy as np

from rgbdpose import CameraIntrinsics


def make_intrinsics(width=320, height=240, f=289.0, cx=None, cy=None):
    return CameraIntrinsics(
        fx=f,
        fy=f,
        cx=(width - 1) / 2.0 if cx is None else cx,
        cy=(height - 1) / 2.0 if cy is None else cy,
        width=width,
        height=height,
    )


def erode(mask, iterations=1):
    """Shrink a boolean mask by a 4-neighborhood per iteration (border counts as outside)."""
    out = np.asarray(mask, dtype=bool).copy()
    for _ in range(iterations):
        nxt = out.copy()
        nxt[1:, :] &= out[:-1, :]
        nxt[:-1, :] &= out[1:, :]
        nxt[:, 1:] &= out[:, :-1]
        nxt[:, :-1] &= out[:, 1:]
        nxt[0, :] = False
        nxt[-1, :] = False
        nxt[:, 0] = False
        nxt[:, -1] = False
        out = nxt
    return out
