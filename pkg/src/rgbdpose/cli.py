"""Command-line pipeline: synth | split | sample | augment | encode | eval | breakdown.

Every run is deterministic given its flags: per-record generators are
derived from (seed, record index), so parallel workers and reruns produce
byte-identical rasters, manifests and CSV reports.  Each command writes a
reproducibility record (tool version + configuration) next to its output.

Exit codes: 0 success, 1 hard error, 2 finished with skipped records.
"""

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .augment import (
    CropAugmentConfig,
    RotationAugmentConfig,
    crop_augment,
    sample_rotation_perturbation,
    warp_rgbd,
)
from .geometry import CameraIntrinsics, pose_from_prior, relative_rotation, render_empty_room
from .manifest import ManifestError, read_manifest, write_manifest
from .metrics import EvalConfig, PooledMetrics
from .posemap import PoseMapConfig, clamp_prior, encode_pose_map, perturb_prior, pseudo_depth_map
from .rasters import (
    MAX_PNG_DEPTH,
    read_depth_png,
    read_float_raster,
    read_rgb_png,
    resize_bilinear,
    resize_nearest,
    write_depth_png,
    write_float_raster,
    write_float_rgb,
    write_rgb_png,
)
from .sampling import (
    RestrictedRanges,
    SampleRecord,
    SamplingSpec,
    run_sampling,
    split_scenes,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2


def record_rng(seed, index):
    """Deterministic per-record generator derived from the run seed."""
    return np.random.default_rng([seed, index])


def _fmt(x):
    return repr(float(x))


def _write_run_record(path, command, args):
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    payload = {"tool": "rgbdpose", "version": __version__, "command": command, "config": config}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def _edges(lo, hi, bins):
    return np.linspace(lo, hi, bins + 1)


def _read_rgb(path):
    if path.endswith(".npy"):
        arr = np.load(path)
        return arr.astype(np.float64)
    return read_rgb_png(path)


def _read_depth(path):
    if path.endswith(".npy"):
        depth = read_float_raster(path)
        return depth, np.isfinite(depth) & (depth > 0)
    return read_depth_png(path)


def _write_rgb(path, rgb):
    if path.endswith(".npy"):
        write_float_rgb(path, rgb)
    else:
        write_rgb_png(path, rgb)


def _write_depth(path, depth, valid):
    if path.endswith(".npy"):
        write_float_raster(path, np.where(valid, depth, 0.0))
    else:
        # The PNG codec tops out at 65.535 m; mask anything beyond.
        write_depth_png(path, depth, valid & (depth <= MAX_PNG_DEPTH))


def _raster_ext(fmt):
    return ".npy" if fmt == "npy" else ".png"


def _depth_stem(record):
    return os.path.splitext(os.path.basename(record.depth))[0]


# ---------------------------------------------------------------------------
# synth


def cmd_synth(args):
    args.out = os.path.abspath(args.out)  # record paths must be unambiguous
    os.makedirs(args.out, exist_ok=True)
    ext = _raster_ext(args.raster_format)
    cx = (args.width - 1) / 2.0 if args.cx is None else args.cx
    cy = (args.height - 1) / 2.0 if args.cy is None else args.cy
    intr = CameraIntrinsics(fx=args.fx, fy=args.fy, cx=cx, cy=cy,
                            width=args.width, height=args.height)
    records = []
    for i in range(args.count):
        rng = record_rng(args.seed, i)
        if args.pitch is not None:
            roll_deg, pitch_deg, height_m = args.roll, args.pitch, args.cam_height
        else:
            pitch_deg = float(rng.uniform(args.pitch_min, args.pitch_max))
            roll_deg = float(rng.uniform(args.roll_min, args.roll_max))
            height_m = float(rng.uniform(args.height_min, args.height_max))
        prior = clamp_prior(math.radians(roll_deg), math.radians(pitch_deg),
                            height_m, ceiling=args.ceiling)
        yaw = float(rng.uniform(-math.pi, math.pi))
        pose = pose_from_prior(prior, yaw)
        rgb, depth, valid = render_empty_room(
            pose, intr, args.ceiling, texture=args.texture, period=args.texture_period
        )
        rgb_name = f"rgb_{i:05d}{ext}"
        depth_name = f"depth_{i:05d}{ext}"
        _write_rgb(os.path.join(args.out, rgb_name), rgb)
        _write_depth(os.path.join(args.out, depth_name), depth, valid)
        records.append(SampleRecord(
            rgb=os.path.join(args.out, rgb_name),
            depth=os.path.join(args.out, depth_name),
            intrinsics=intr,
            roll_deg=math.degrees(prior.roll),
            pitch_deg=math.degrees(prior.pitch),
            height_m=prior.height,
            scene=f"scene{i % args.scenes:04d}",
        ))
    write_manifest(os.path.join(args.out, "manifest.csv"), records)
    _write_run_record(os.path.join(args.out, "run.json"), "synth", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# split / sample


def cmd_split(args):
    records = read_manifest(args.manifest)
    train, test = split_scenes(records, args.ratio, args.seed)
    for out, part in ((args.train_out, train), (args.test_out, test)):
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        write_manifest(out, part)
    _write_run_record(args.train_out + ".run.json", "split", args)
    return EXIT_OK


def _restricted_from_args(args):
    return RestrictedRanges(
        pitch=(math.radians(args.restricted_pitch_deg[0]), math.radians(args.restricted_pitch_deg[1])),
        height=tuple(args.restricted_height),
        roll=(math.radians(args.restricted_roll_deg[0]), math.radians(args.restricted_roll_deg[1])),
    )


def cmd_sample(args):
    records = read_manifest(args.manifest)
    spec = SamplingSpec(
        strategy=args.strategy,
        count=args.count,
        seed=args.seed,
        pitch_edges=_edges(math.radians(args.pitch_range_deg[0]),
                           math.radians(args.pitch_range_deg[1]), args.pitch_bins),
        roll_edges=_edges(math.radians(args.roll_range_deg[0]),
                          math.radians(args.roll_range_deg[1]), args.roll_bins),
        height_edges=_edges(args.height_range[0], args.height_range[1], args.height_bins),
        restricted=_restricted_from_args(args),
    )
    out = run_sampling(records, spec)
    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    write_manifest(args.out, out)
    _write_run_record(args.out + ".run.json", "sample", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# augment


def _load_record_rasters(record, resize_to):
    rgb = _read_rgb(record.rgb)
    depth, valid = _read_depth(record.depth)
    intr = record.intrinsics
    if rgb.shape[:2] != (intr.height, intr.width) or depth.shape != (intr.height, intr.width):
        raise ValueError(
            f"raster dimensions {depth.shape} do not match manifest intrinsics "
            f"{intr.height}x{intr.width}"
        )
    if resize_to is not None and (intr.height, intr.width) != resize_to:
        h, w = resize_to
        rgb = resize_bilinear(rgb, h, w)
        depth = resize_nearest(depth, h, w)
        valid = resize_nearest(valid, h, w)
        intr = intr.resized(width=w, height=h)
    return rgb, depth, valid, intr


def _rotation_config(args):
    if args.scale is not None:
        return RotationAugmentConfig.from_scale(args.scale)
    def rad(value):
        return math.radians(value) if value is not None else 0.1
    return RotationAugmentConfig(
        pitch_range=rad(args.pitch_range_deg),
        roll_range=rad(args.roll_range_deg),
        yaw_range=rad(args.yaw_range_deg),
    )


def _augment_one(record, index, args, cfg, ext, resize_to):
    rng = record_rng(args.seed, index)
    rgb, depth, valid, intr = _load_record_rasters(record, resize_to)
    transform = None
    if args.method == "rotate":
        d_pitch, d_roll, d_yaw = sample_rotation_perturbation(cfg, rng)
        prior = record.prior
        new_prior = clamp_prior(prior.roll + d_roll, prior.pitch + d_pitch, prior.height)
        t_rel = relative_rotation(pose_from_prior(prior), pose_from_prior(new_prior, d_yaw))
        rgb, depth, valid = warp_rgbd(rgb, depth, intr, t_rel, valid=valid)
        roll_deg = math.degrees(new_prior.roll)
        pitch_deg = math.degrees(new_prior.pitch)
        transform = (d_pitch, d_roll, d_yaw, t_rel)
    else:
        rgb, depth, valid = crop_augment(rgb, depth, cfg, rng, valid=valid)
        roll_deg, pitch_deg = record.roll_deg, record.pitch_deg

    rgb_name = f"rgb_{index:05d}{ext}"
    depth_name = f"depth_{index:05d}{ext}"
    _write_rgb(os.path.join(args.out, rgb_name), rgb)
    _write_depth(os.path.join(args.out, depth_name), depth, valid)
    new_record = SampleRecord(
        rgb=os.path.join(args.out, rgb_name),
        depth=os.path.join(args.out, depth_name),
        intrinsics=intr,
        roll_deg=roll_deg,
        pitch_deg=pitch_deg,
        height_m=record.height_m,
        scene=record.scene,
    )
    return new_record, transform


def cmd_augment(args):
    records = read_manifest(args.manifest)
    args.out = os.path.abspath(args.out)
    os.makedirs(args.out, exist_ok=True)
    ext = _raster_ext(args.raster_format)
    resize_to = None if args.no_resize else tuple(args.resize)
    cfg = _rotation_config(args) if args.method == "rotate" else CropAugmentConfig(args.min_crop_scale)

    results = [None] * len(records)
    failures = []

    def run(i):
        return _augment_one(records[i], i, args, cfg, ext, resize_to)

    if args.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.workers) as pool:
            futures = {pool.submit(run, i): i for i in range(len(records))}
            for fut in concurrent.futures.as_completed(futures):
                i = futures[fut]
                try:
                    results[i] = fut.result()
                except Exception as err:  # noqa: BLE001 - per-record isolation
                    failures.append((i, str(err)))
    else:
        for i in range(len(records)):
            try:
                results[i] = run(i)
            except Exception as err:  # noqa: BLE001
                failures.append((i, str(err)))

    kept = [r for r in results if r is not None]
    write_manifest(os.path.join(args.out, "manifest.csv"), [rec for rec, _ in kept])

    if args.dump_transforms and args.method == "rotate":
        with open(args.dump_transforms, "w", encoding="utf-8") as f:
            f.write("index,d_pitch,d_roll,d_yaw," + ",".join(f"m{r}{c}" for r in range(3) for c in range(3)) + "\n")
            for i, result in enumerate(results):
                if result is None or result[1] is None:
                    continue
                d_pitch, d_roll, d_yaw, t_rel = result[1]
                cells = [str(i), _fmt(d_pitch), _fmt(d_roll), _fmt(d_yaw)]
                cells += [_fmt(v) for v in t_rel.ravel()]
                f.write(",".join(cells) + "\n")

    _write_run_record(os.path.join(args.out, "run.json"), "augment", args)
    for i, msg in sorted(failures):
        print(f"skipped record {i}: {msg}", file=sys.stderr)
    if failures:
        print(f"augment finished with {len(failures)} skipped of {len(records)}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# encode


def cmd_encode(args):
    records = read_manifest(args.manifest)
    args.out = os.path.abspath(args.out)
    os.makedirs(args.out, exist_ok=True)
    pseudo_dir = os.path.join(args.out, "pseudo")
    if args.export_pseudo_depth:
        os.makedirs(pseudo_dir, exist_ok=True)
    cfg = PoseMapConfig(
        ceiling=args.ceiling,
        variant=args.variant,
        clip_threshold=args.clip_threshold,
        fixed_pitch=math.radians(args.fixed_pitch_deg) if args.fixed_pitch_deg is not None else None,
        fixed_height=args.fixed_height,
    )

    out_records = []
    failures = []
    for i, record in enumerate(records):
        try:
            prior = record.prior
            if args.pitch_noise_deg > 0 or args.height_noise > 0:
                rng = record_rng(args.seed, i)
                prior = perturb_prior(
                    prior, math.radians(args.pitch_noise_deg), args.height_noise,
                    rng, ceiling=args.ceiling,
                )
            name = f"{_depth_stem(record)}.npy"
            if args.variant == "naive":
                from .posemap import encode_constant_channels
                channels = encode_constant_channels(prior, (record.intrinsics.height,
                                                            record.intrinsics.width))
                with open(os.path.join(args.out, name), "wb") as f:
                    np.save(f, channels.astype(np.float32))
            else:
                pose_map = encode_pose_map(prior, record.intrinsics, cfg)
                write_float_raster(os.path.join(args.out, name), pose_map.values)
                if args.export_pseudo_depth:
                    m = pseudo_depth_map(prior, record.intrinsics, args.ceiling)
                    write_float_raster(os.path.join(pseudo_dir, name), m)
            out_records.append(SampleRecord(
                rgb=record.rgb, depth=record.depth, intrinsics=record.intrinsics,
                roll_deg=record.roll_deg, pitch_deg=record.pitch_deg,
                height_m=record.height_m, scene=record.scene,
                pose_map=os.path.join(args.out, name),
            ))
        except Exception as err:  # noqa: BLE001 - per-record isolation
            failures.append((i, str(err)))

    write_manifest(os.path.join(args.out, "manifest.csv"), out_records)
    _write_run_record(os.path.join(args.out, "run.json"), "encode", args)
    for i, msg in failures:
        print(f"skipped record {i}: {msg}", file=sys.stderr)
    if failures:
        print(f"encode finished with {len(failures)} skipped of {len(records)}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval / breakdown


_REPORT_FIELDS = ["abs_rel", "sq_rel", "rms_log", "delta1", "delta2"]


def _find_prediction(pred_dir, record):
    base = os.path.basename(record.depth)
    stem = os.path.splitext(base)[0]
    for candidate in (base, stem + ".npy", stem + ".png"):
        path = os.path.join(pred_dir, candidate)
        if os.path.exists(path):
            return path
    raise FileNotFoundError(f"no prediction for {base!r} under {pred_dir}")


def _mean_of_reports(reports):
    return {
        field: float(np.mean([getattr(r, field) for r in reports]))
        for field in _REPORT_FIELDS
    } | {"n_pixels": int(sum(r.n_pixels for r in reports))}


def cmd_eval(args):
    records = read_manifest(args.gt_manifest)
    cfg = EvalConfig(min_depth=args.min_depth, max_depth=args.max_depth)
    pooled = PooledMetrics(cfg)
    per_image = []
    failures = []
    for i, record in enumerate(records):
        try:
            gt, gt_valid = _read_depth(record.depth)
            pred, pred_valid = _read_depth(_find_prediction(args.pred_dir, record))
            if pred.shape != gt.shape:
                raise ValueError(f"prediction shape {pred.shape} does not match gt {gt.shape}")
            if args.per_image:
                from .metrics import compute_metrics
                per_image.append(compute_metrics(pred, gt, cfg, pred_valid=pred_valid,
                                                 gt_valid=gt_valid))
            else:
                pooled.add(pred, gt, pred_valid=pred_valid, gt_valid=gt_valid)
        except Exception as err:  # noqa: BLE001
            failures.append((i, str(err)))

    for i, msg in failures:
        print(f"skipped record {i}: {msg}", file=sys.stderr)
    if args.per_image:
        if not per_image:
            print("eval failed: no evaluable records", file=sys.stderr)
            return EXIT_ERROR
        values = _mean_of_reports(per_image)
        n_images = len(per_image)
    else:
        try:
            report = pooled.report()
        except ValueError as err:
            print(f"eval failed: {err}", file=sys.stderr)
            return EXIT_ERROR
        values = report.as_dict()
        n_images = pooled.n_images

    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("n_images,n_pixels," + ",".join(_REPORT_FIELDS) + "\n")
        f.write(",".join(
            [str(n_images), str(values["n_pixels"])] + [_fmt(values[k]) for k in _REPORT_FIELDS]
        ) + "\n")
    _write_run_record(args.out + ".run.json", "eval", args)
    if failures:
        return EXIT_PARTIAL
    return EXIT_OK


_BREAKDOWN_DEFAULTS = {
    "pitch": (0.0, 180.0, 18),
    "roll": (-30.0, 30.0, 12),
    "height": (0.0, 3.0, 10),
}


def cmd_breakdown(args):
    records = read_manifest(args.gt_manifest)
    cfg = EvalConfig(min_depth=args.min_depth, max_depth=args.max_depth)
    lo, hi, bins = _BREAKDOWN_DEFAULTS[args.key]
    lo = args.range[0] if args.range is not None else lo
    hi = args.range[1] if args.range is not None else hi
    bins = args.bins if args.bins is not None else bins
    if args.key == "height":
        edges = _edges(lo, hi, bins)
        values = np.array([r.height_m for r in records])
    else:
        edges = _edges(math.radians(lo), math.radians(hi), bins)
        attr = "pitch" if args.key == "pitch" else "roll"
        values = np.array([getattr(r.prior, attr) for r in records])

    bin_of = np.clip(np.digitize(values, edges) - 1, 0, len(edges) - 2)
    accumulators = [PooledMetrics(cfg) for _ in range(len(edges) - 1)]
    per_image = [[] for _ in range(len(edges) - 1)]
    failures = []
    for i, record in enumerate(records):
        try:
            gt, gt_valid = _read_depth(record.depth)
            pred, pred_valid = _read_depth(_find_prediction(args.pred_dir, record))
            if args.per_image:
                from .metrics import compute_metrics
                per_image[bin_of[i]].append(
                    compute_metrics(pred, gt, cfg, pred_valid=pred_valid, gt_valid=gt_valid)
                )
            else:
                accumulators[bin_of[i]].add(pred, gt, pred_valid=pred_valid, gt_valid=gt_valid)
        except Exception as err:  # noqa: BLE001
            failures.append((i, str(err)))

    display = (lambda x: _fmt(math.degrees(x))) if args.key != "height" else _fmt
    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(f"{args.key}_lo,{args.key}_hi,count,n_pixels," + ",".join(_REPORT_FIELDS) + "\n")
        for b in range(len(edges) - 1):
            if args.per_image:
                count = len(per_image[b])
                values_b = _mean_of_reports(per_image[b]) if count else None
            else:
                count = accumulators[b].n_images
                values_b = accumulators[b].report().as_dict() if count else None
            cells = [display(edges[b]), display(edges[b + 1]), str(count)]
            if values_b is None:
                cells += [""] * (len(_REPORT_FIELDS) + 1)
            else:
                cells += [str(values_b["n_pixels"])] + [_fmt(values_b[k]) for k in _REPORT_FIELDS]
            f.write(",".join(cells) + "\n")
    _write_run_record(args.out + ".run.json", "breakdown", args)
    for i, msg in failures:
        print(f"skipped record {i}: {msg}", file=sys.stderr)
    if failures:
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def load_config(path):
    """Parse a plain key=value config file into flag defaults.

    Lines starting with # and [section] markers are ignored; values are
    coerced to int, then float, with true/false mapping to booleans.
    """
    defaults = {}
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("["):
                continue
            if "=" not in line:
                raise ValueError(f"{path}: expected key = value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip().strip("\"'")
            if value.lower() in ("true", "false"):
                defaults[key] = value.lower() == "true"
                continue
            for cast in (int, float):
                try:
                    defaults[key] = cast(value)
                    break
                except ValueError:
                    continue
            else:
                defaults[key] = value
    return defaults


def _d(config, key, fallback):
    return config.get(key, fallback)


def build_parser(config=None):
    cfg = config or {}
    parser = argparse.ArgumentParser(
        prog="rgbdpose",
        description="Pose-aware RGB-D augmentation, pose-map encoding, sampling and evaluation",
    )
    parser.add_argument("--config", help="key=value config file applied as flag defaults")
    parser.add_argument("--version", action="version", version=f"rgbdpose {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="render analytic empty-room RGB-D fixtures")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=_d(cfg, "count", 10))
    p.add_argument("--seed", type=int, default=_d(cfg, "seed", 0))
    p.add_argument("--width", type=int, default=_d(cfg, "width", 320))
    p.add_argument("--height", type=int, default=_d(cfg, "height", 240))
    p.add_argument("--fx", type=float, default=_d(cfg, "fx", 289.0))
    p.add_argument("--fy", type=float, default=_d(cfg, "fy", 289.0))
    p.add_argument("--cx", type=float, default=None)
    p.add_argument("--cy", type=float, default=None)
    p.add_argument("--pitch-min", type=float, default=_d(cfg, "pitch_min", 70.0),
                   help="degrees")
    p.add_argument("--pitch-max", type=float, default=_d(cfg, "pitch_max", 110.0))
    p.add_argument("--roll-min", type=float, default=_d(cfg, "roll_min", -10.0))
    p.add_argument("--roll-max", type=float, default=_d(cfg, "roll_max", 10.0))
    p.add_argument("--height-min", type=float, default=_d(cfg, "height_min", 1.0))
    p.add_argument("--height-max", type=float, default=_d(cfg, "height_max", 2.0))
    p.add_argument("--pitch", type=float, default=None,
                   help="fixed pitch in degrees (with --roll/--cam-height) instead of sampling")
    p.add_argument("--roll", type=float, default=0.0)
    p.add_argument("--cam-height", type=float, default=1.5)
    p.add_argument("--ceiling", type=float, default=_d(cfg, "ceiling", 3.0))
    p.add_argument("--texture", choices=["checker", "smooth"],
                   default=_d(cfg, "texture", "checker"))
    p.add_argument("--texture-period", type=float, default=_d(cfg, "texture_period", 0.5))
    p.add_argument("--scenes", type=int, default=_d(cfg, "scenes", 10))
    p.add_argument("--raster-format", choices=["png", "npy"],
                   default=_d(cfg, "raster_format", "png"))
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("split", help="scene-disjoint train/test manifest split")
    p.add_argument("--manifest", required=True)
    p.add_argument("--ratio", type=float, default=_d(cfg, "ratio", 0.85))
    p.add_argument("--seed", type=int, default=_d(cfg, "seed", 0))
    p.add_argument("--train-out", required=True)
    p.add_argument("--test-out", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("sample", help="draw a pose-distribution subset of a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strategy", choices=["natural", "uniform", "restricted", "resample"],
                   default=_d(cfg, "strategy", "natural"))
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=_d(cfg, "seed", 0))
    p.add_argument("--pitch-bins", type=int, default=_d(cfg, "pitch_bins", 18))
    p.add_argument("--pitch-range-deg", type=float, nargs=2, default=[0.0, 180.0])
    p.add_argument("--roll-bins", type=int, default=_d(cfg, "roll_bins", 12))
    p.add_argument("--roll-range-deg", type=float, nargs=2, default=[-30.0, 30.0])
    p.add_argument("--height-bins", type=int, default=_d(cfg, "height_bins", 10))
    p.add_argument("--height-range", type=float, nargs=2, default=[0.0, 3.0])
    p.add_argument("--restricted-pitch-deg", type=float, nargs=2, default=[85.0, 95.0])
    p.add_argument("--restricted-height", type=float, nargs=2, default=[1.45, 1.55])
    p.add_argument("--restricted-roll-deg", type=float, nargs=2, default=[-5.0, 5.0])
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("augment", help="rotation view synthesis or crop baseline")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=["rotate", "crop"], default=_d(cfg, "method", "rotate"))
    p.add_argument("--seed", type=int, default=_d(cfg, "seed", 0))
    p.add_argument("--scale", type=int, default=None,
                   help="jitter scale: each axis range is scale * 5 degrees")
    p.add_argument("--pitch-range-deg", type=float, default=None,
                   help="explicit half-range; default 0.1 rad per axis")
    p.add_argument("--roll-range-deg", type=float, default=None)
    p.add_argument("--yaw-range-deg", type=float, default=None)
    p.add_argument("--min-crop-scale", type=float, default=_d(cfg, "min_crop_scale", 0.5))
    p.add_argument("--resize", type=int, nargs=2, default=[240, 320], metavar=("H", "W"),
                   help="working resolution; intrinsics are rescaled to match")
    p.add_argument("--no-resize", action="store_true")
    p.add_argument("--raster-format", choices=["png", "npy"],
                   default=_d(cfg, "raster_format", "png"))
    p.add_argument("--workers", type=int, default=_d(cfg, "workers", 1))
    p.add_argument("--dump-transforms", default=None,
                   help="CSV dump of sampled angles and relative rotations")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("encode", help="write per-record pose-prior maps")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ceiling", type=float, default=_d(cfg, "ceiling", 3.0))
    p.add_argument("--variant", choices=["atan", "clip", "naive"],
                   default=_d(cfg, "variant", "atan"))
    p.add_argument("--clip-threshold", type=float, default=_d(cfg, "clip_threshold", 20.0))
    p.add_argument("--fixed-pitch-deg", type=float, default=None)
    p.add_argument("--fixed-height", type=float, default=None)
    p.add_argument("--pitch-noise-deg", type=float, default=_d(cfg, "pitch_noise_deg", 0.0))
    p.add_argument("--height-noise", type=float, default=_d(cfg, "height_noise", 0.0))
    p.add_argument("--seed", type=int, default=_d(cfg, "seed", 0))
    p.add_argument("--export-pseudo-depth", action="store_true",
                   help="also write the raw pre-transform pseudo depth (debug)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("eval", help="depth metrics of a prediction directory vs ground truth")
    p.add_argument("--gt-manifest", required=True)
    p.add_argument("--pred-dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-depth", type=float, default=_d(cfg, "min_depth", 1.0))
    p.add_argument("--max-depth", type=float, default=_d(cfg, "max_depth", 10.0))
    p.add_argument("--per-image", action="store_true",
                   help="average per-image metrics instead of pooling pixels")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("breakdown", help="metrics split by pose bins")
    p.add_argument("--gt-manifest", required=True)
    p.add_argument("--pred-dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--key", choices=["pitch", "roll", "height"], required=True)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--range", type=float, nargs=2, default=None,
                   help="bin range (degrees for angles, meters for height)")
    p.add_argument("--min-depth", type=float, default=_d(cfg, "min_depth", 1.0))
    p.add_argument("--max-depth", type=float, default=_d(cfg, "max_depth", 10.0))
    p.add_argument("--per-image", action="store_true")
    p.set_defaults(func=cmd_breakdown)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    config = {}
    if "--config" in argv:
        at = argv.index("--config")
        try:
            config = load_config(argv[at + 1])
        except (IndexError, OSError, ValueError) as err:
            print(f"error: cannot load config: {err}", file=sys.stderr)
            return EXIT_ERROR
    parser = build_parser(config)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ManifestError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
