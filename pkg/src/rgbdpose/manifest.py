"""Versioned CSV manifests indexing RGB-D records.

Line 1 carries the format version, line 2 the fixed column header, then one
CSV row per record.  Angles are stored in degrees (human-auditable); paths
are stored relative to the manifest's directory when possible and resolved
to absolute paths on read.  Files written by write_manifest round-trip
byte-identically through read_manifest.
"""

import csv
import io
import os

from .geometry import CameraIntrinsics
from .sampling import SampleRecord

FORMAT_VERSION = 1
_VERSION_PREFIX = "#rgbdpose-manifest-v"

COLUMNS = [
    "rgb", "depth",
    "fx", "fy", "cx", "cy", "width", "height",
    "roll", "pitch", "height_m", "scene", "pose_map",
]


class ManifestError(ValueError):
    pass


def _fmt(value):
    # repr() is the shortest representation that parses back exactly.
    return repr(float(value))


def _resolve(path, base_dir):
    return path if os.path.isabs(path) else os.path.normpath(os.path.join(base_dir, path))


def _relativize(path, base_dir):
    # Relative record paths are kept verbatim (interpreted against the
    # manifest's directory); absolute ones are rewritten relative to it.
    if not os.path.isabs(path):
        return path
    try:
        return os.path.relpath(path, base_dir)
    except ValueError:
        return path


def read_manifest(path):
    """Parse a manifest into SampleRecords with absolute raster paths."""
    base_dir = os.path.dirname(os.path.abspath(path))
    with open(path, "r", encoding="utf-8", newline="") as f:
        lines = f.read().splitlines()
    if not lines or not lines[0].startswith(_VERSION_PREFIX):
        raise ManifestError(f"{path}: missing '{_VERSION_PREFIX}<n>' version line")
    try:
        version = int(lines[0][len(_VERSION_PREFIX):])
    except ValueError:
        raise ManifestError(f"{path}: unparseable version line {lines[0]!r}") from None
    if version != FORMAT_VERSION:
        raise ManifestError(f"{path}: unsupported manifest version {version}")
    if len(lines) < 2 or lines[1] != ",".join(COLUMNS):
        raise ManifestError(f"{path}: line 2 must be the column header {','.join(COLUMNS)!r}")

    records = []
    reader = csv.reader(lines[2:])
    for offset, row in enumerate(reader):
        lineno = offset + 3
        if not row:
            continue
        if len(row) != len(COLUMNS):
            raise ManifestError(
                f"{path}:{lineno}: expected {len(COLUMNS)} fields, got {len(row)}"
            )
        try:
            intr = CameraIntrinsics(
                fx=float(row[2]), fy=float(row[3]),
                cx=float(row[4]), cy=float(row[5]),
                width=int(row[6]), height=int(row[7]),
            )
            record = SampleRecord(
                rgb=_resolve(row[0], base_dir),
                depth=_resolve(row[1], base_dir),
                intrinsics=intr,
                roll_deg=float(row[8]),
                pitch_deg=float(row[9]),
                height_m=float(row[10]),
                scene=row[11],
                pose_map=_resolve(row[12], base_dir) if row[12] else None,
            )
        except ValueError as err:
            raise ManifestError(f"{path}:{lineno}: {err}") from None
        records.append(record)
    return records


def write_manifest(path, records):
    """Write records as a versioned CSV manifest with relative raster paths."""
    base_dir = os.path.dirname(os.path.abspath(path))
    buf = io.StringIO()
    buf.write(f"{_VERSION_PREFIX}{FORMAT_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in records:
        writer.writerow([
            _relativize(r.rgb, base_dir),
            _relativize(r.depth, base_dir),
            _fmt(r.intrinsics.fx), _fmt(r.intrinsics.fy),
            _fmt(r.intrinsics.cx), _fmt(r.intrinsics.cy),
            str(r.intrinsics.width), str(r.intrinsics.height),
            _fmt(r.roll_deg), _fmt(r.pitch_deg), _fmt(r.height_m),
            r.scene,
            _relativize(r.pose_map, base_dir) if r.pose_map else "",
        ])
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(buf.getvalue())
