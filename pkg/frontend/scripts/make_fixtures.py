#!/usr/bin/env python3
"""Generate golden fixtures for the TS bindings from the primary CLI.

Talks to the primary package only through its external interfaces: CLI
subcommands and the documented file formats (versioned manifest CSV,
float32 .npy rasters, 16-bit depth PNG, report CSV).  Re-run after any
primary change and commit the results:

    python frontend/scripts/make_fixtures.py
"""

import csv
import json
import os
import shutil
import subprocess
import sys
import tempfile

import numpy as np

FRONTEND = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(FRONTEND, "fixtures")
CLI = [sys.executable, "-m", "rgbdpose.cli"]

MANIFEST_HEADER = "rgb,depth,fx,fy,cx,cy,width,height,roll,pitch,height_m,scene,pose_map"


def run_cli(*args):
    subprocess.run([*CLI, *[str(a) for a in args]], check=True)


def write_manifest(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("#rgbdpose-manifest-v1\n")
        f.write(MANIFEST_HEADER + "\n")
        for row in rows:
            f.write(",".join(str(c) for c in row) + "\n")


def read_manifest_rows(path):
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    return [dict(zip(MANIFEST_HEADER.split(","), row)) for row in csv.reader(lines[2:]) if row]


def intrinsics_of(row):
    return {
        "fx": float(row["fx"]), "fy": float(row["fy"]),
        "cx": float(row["cx"]), "cy": float(row["cy"]),
        "width": int(row["width"]), "height": int(row["height"]),
    }


def save_npy(path, values):
    with open(path, "wb") as f:
        np.save(f, np.asarray(values, dtype=np.float32))


def copy_into(src, dest_name):
    dest = os.path.join(FIXTURES, dest_name)
    os.makedirs(os.path.dirname(dest), exist_ok=True)
    shutil.copyfile(src, dest)
    return dest_name


def warp_fixtures(work):
    scenes = os.path.join(work, "scenes")
    run_cli("synth", "--out", scenes, "--count", 2, "--seed", 7,
            "--width", 80, "--height", 60, "--fx", 72.25, "--fy", 72.25,
            "--pitch-min", 135, "--pitch-max", 150,
            "--texture", "smooth", "--texture-period", 2.0,
            "--raster-format", "npy", "--scenes", 1)
    manifest = os.path.join(scenes, "manifest.csv")

    identity = os.path.join(work, "warp_identity")
    run_cli("augment", "--manifest", manifest, "--out", identity,
            "--method", "rotate", "--scale", 0, "--seed", 0,
            "--raster-format", "npy", "--no-resize")
    rotated = os.path.join(work, "warp_rotated")
    transforms = os.path.join(work, "transforms.csv")
    run_cli("augment", "--manifest", manifest, "--out", rotated,
            "--method", "rotate", "--scale", 2, "--seed", 3,
            "--raster-format", "npy", "--no-resize",
            "--dump-transforms", transforms)

    with open(transforms, "r", encoding="utf-8") as f:
        t_rows = list(csv.DictReader(f))

    cases = []
    for i, row in enumerate(read_manifest_rows(manifest)):
        rgb_in = copy_into(os.path.join(scenes, f"rgb_{i:05d}.npy"), f"warp/rgb_in_{i}.npy")
        depth_in = copy_into(os.path.join(scenes, f"depth_{i:05d}.npy"), f"warp/depth_in_{i}.npy")
        cases.append({
            "name": f"identity_{i}",
            "intrinsics": intrinsics_of(row),
            "rotation": np.eye(3).ravel().tolist(),
            "rgb_in": rgb_in,
            "depth_in": depth_in,
            "rgb_out": copy_into(os.path.join(identity, f"rgb_{i:05d}.npy"),
                                 f"warp/rgb_identity_{i}.npy"),
            "depth_out": copy_into(os.path.join(identity, f"depth_{i:05d}.npy"),
                                   f"warp/depth_identity_{i}.npy"),
        })
        t = t_rows[i]
        rotation = [float(t[f"m{r}{c}"]) for r in range(3) for c in range(3)]
        cases.append({
            "name": f"rotated_{i}",
            "intrinsics": intrinsics_of(row),
            "rotation": rotation,
            "rgb_in": rgb_in,
            "depth_in": depth_in,
            "rgb_out": copy_into(os.path.join(rotated, f"rgb_{i:05d}.npy"),
                                 f"warp/rgb_rotated_{i}.npy"),
            "depth_out": copy_into(os.path.join(rotated, f"depth_{i:05d}.npy"),
                                   f"warp/depth_rotated_{i}.npy"),
        })
    return cases


def posemap_fixtures(work):
    # encode reads only the manifest (intrinsics + prior), never the rasters,
    # so the raster paths are placeholders.
    priors = [
        ("down", 0.0, 180.0, 1.5, 72.25, 39.5, 29.5),
        ("tilted", 12.0, 100.0, 1.3, 72.25, 39.5, 29.5),
        ("ceilingward", -25.0, 70.0, 0.7, 80.0, 39.5, 29.5),
        ("horizon", 0.0, 90.0, 1.5, 72.25, 40.0, 30.0),  # integer center row
    ]
    rows = [
        (f"rgb_{name}.npy", f"depth_{name}.npy", fx, fx, cx, cy, 80, 60,
         roll, pitch, height, "s", "")
        for name, roll, pitch, height, fx, cx, cy in priors
    ]
    manifest = os.path.join(work, "posemap_manifest.csv")
    write_manifest(manifest, rows)

    cases = []
    for variant, extra in (("atan", []), ("clip", ["--clip-threshold", 20.0])):
        out = os.path.join(work, f"maps_{variant}")
        run_cli("encode", "--manifest", manifest, "--out", out,
                "--ceiling", 3.0, "--variant", variant, *extra)
        for name, roll, pitch, height, fx, cx, cy in priors:
            cases.append({
                "name": f"{variant}_{name}",
                "prior": {"roll_deg": roll, "pitch_deg": pitch, "height_m": height},
                "intrinsics": {"fx": fx, "fy": fx, "cx": cx, "cy": cy,
                               "width": 80, "height": 60},
                "ceiling": 3.0,
                "variant": variant,
                "clip_threshold": 20.0,
                "expected": copy_into(os.path.join(out, f"depth_{name}.npy"),
                                      f"posemap/{variant}_{name}.npy"),
            })
    return cases


def metrics_fixtures(work):
    rng = np.random.default_rng(42)
    gt_random = rng.uniform(0.5, 12.0, size=(24, 32))
    pred_random = np.clip(gt_random * rng.uniform(0.7, 1.45, size=gt_random.shape), 0.05, None)
    pairs = [
        ("const_24", np.full((20, 30), 2.0), np.full((20, 30), 2.4)),
        ("const_26", np.full((20, 30), 2.0), np.full((20, 30), 2.6)),
        ("random", gt_random, pred_random),
    ]
    cases = []
    for name, gt, pred in pairs:
        gt_dir = os.path.join(work, f"metrics_{name}_gt")
        pred_dir = os.path.join(work, f"metrics_{name}_pred")
        os.makedirs(gt_dir, exist_ok=True)
        os.makedirs(pred_dir, exist_ok=True)
        save_npy(os.path.join(gt_dir, "depth_00000.npy"), gt)
        save_npy(os.path.join(pred_dir, "depth_00000.npy"), pred)
        manifest = os.path.join(gt_dir, "manifest.csv")
        h, w = gt.shape
        write_manifest(manifest, [
            ("rgb_00000.npy", "depth_00000.npy", 72.25, 72.25, (w - 1) / 2, (h - 1) / 2,
             w, h, 0.0, 90.0, 1.5, "s", "")
        ])
        report = os.path.join(work, f"metrics_{name}.csv")
        run_cli("eval", "--gt-manifest", manifest, "--pred-dir", pred_dir,
                "--out", report)
        with open(report, "r", encoding="utf-8") as f:
            header, row = f.read().splitlines()
        expected = dict(zip(header.split(","), row.split(",")))
        cases.append({
            "name": name,
            "gt": copy_into(os.path.join(gt_dir, "depth_00000.npy"), f"metrics/{name}_gt.npy"),
            "pred": copy_into(os.path.join(pred_dir, "depth_00000.npy"), f"metrics/{name}_pred.npy"),
            "min_depth": 1.0,
            "max_depth": 10.0,
            "expected": {
                "abs_rel": float(expected["abs_rel"]),
                "sq_rel": float(expected["sq_rel"]),
                "rms_log": float(expected["rms_log"]),
                "delta1": float(expected["delta1"]),
                "delta2": float(expected["delta2"]),
                "n_pixels": int(expected["n_pixels"]),
            },
        })
    return cases


def main():
    if os.path.exists(FIXTURES):
        shutil.rmtree(FIXTURES)
    os.makedirs(FIXTURES)
    with tempfile.TemporaryDirectory() as work:
        meta = {
            "warp": warp_fixtures(work),
            "posemap": posemap_fixtures(work),
            "metrics": metrics_fixtures(work),
        }
    with open(os.path.join(FIXTURES, "meta.json"), "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")
    total = sum(len(v) for v in meta.values())
    print(f"wrote {total} fixture cases under {FIXTURES}")


if __name__ == "__main__":
    main()
