#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--size 240x320] [--repeats 50]
"""

import argparse
import time

import numpy as np

from rgbdpose._kernels import _numpy_ref
from rgbdpose.geometry import rot_x, rot_y, rot_z

try:
    from rgbdpose._kernels import _core
except ImportError:
    _core = None


def timeit(fn, repeats):
    fn()  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", default="240x320")
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()
    h, w = (int(x) for x in args.size.split("x"))

    rng = np.random.default_rng(0)
    rgb = np.ascontiguousarray(rng.uniform(-1, 1, size=(h, w, 3)))
    depth = np.ascontiguousarray(rng.uniform(0.5, 6.0, size=(h, w)))
    valid = np.ones((h, w), dtype=np.uint8)
    rot = np.ascontiguousarray(rot_z(0.1) @ rot_y(0.15) @ rot_x(-0.08))
    fx = fy = 289.0 * w / 320.0
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0

    pred = np.ascontiguousarray(rng.uniform(1.2, 9.0, size=h * w))
    gt = np.ascontiguousarray(pred * rng.uniform(0.8, 1.2, size=h * w))
    eligible = np.ones(h * w, dtype=np.uint8)

    cases = {
        "warp_rotation_rgbd": lambda mod: mod.warp_rotation_rgbd(
            rgb, depth, valid, rot, fx, fy, cx, cy),
        "plane_depth": lambda mod: mod.plane_depth(
            rot[2, 0], rot[2, 1], rot[2, 2], 1.5, 3.0, fx, fy, cx, cy, h, w),
        "metric_sums": lambda mod: mod.metric_sums(pred, gt, eligible, 1.25, 1.25**2),
    }

    backends = [("numpy", _numpy_ref)]
    if _core is not None:
        backends.append(("native", _core))
    else:
        print("compiled extension unavailable; timing the fallback only")

    print(f"raster {h}x{w}, {args.repeats} repeats, times in ms per call\n")
    header = f"{'kernel':<22}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, fn in cases.items():
        times = [timeit(lambda mod=mod: fn(mod), args.repeats) for _, mod in backends]
        row = f"{name:<22}" + "".join(f"{t * 1e3:>12.3f}" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
