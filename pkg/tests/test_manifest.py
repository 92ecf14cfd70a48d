import numpy as np
import pytest

from rgbdpose import ManifestError, SampleRecord, read_manifest, write_manifest

from conftest import make_intrinsics


def records(n=3):
    intr = make_intrinsics()
    return [
        SampleRecord(
            rgb=f"rgb_{i:05d}.png",
            depth=f"depth_{i:05d}.png",
            intrinsics=intr,
            roll_deg=-2.5 + i,
            pitch_deg=88.0 + i,
            height_m=1.5 + 0.01 * i,
            scene=f"scene{i:03d}",
        )
        for i in range(n)
    ]


class TestRoundTrip:
    def test_write_read_write_is_byte_identical(self, tmp_path):
        path = tmp_path / "manifest.csv"
        write_manifest(path, records())
        first = path.read_bytes()
        write_manifest(path, read_manifest(path))
        assert path.read_bytes() == first

    def test_values_survive(self, tmp_path):
        path = tmp_path / "manifest.csv"
        original = records()
        write_manifest(path, original)
        loaded = read_manifest(path)
        assert len(loaded) == 3
        for a, b in zip(loaded, original):
            assert a.pitch_deg == b.pitch_deg
            assert a.roll_deg == b.roll_deg
            assert a.height_m == b.height_m
            assert a.intrinsics == b.intrinsics
            assert a.scene == b.scene
            assert a.rgb.endswith(b.rgb)

    def test_paths_resolve_relative_to_manifest(self, tmp_path):
        path = tmp_path / "sub" / "manifest.csv"
        path.parent.mkdir()
        write_manifest(path, records(1))
        loaded = read_manifest(path)
        assert loaded[0].rgb == str(tmp_path / "sub" / "rgb_00000.png")

    def test_empty_body_with_header(self, tmp_path):
        path = tmp_path / "manifest.csv"
        write_manifest(path, [])
        assert read_manifest(path) == []

    def test_pose_map_column(self, tmp_path):
        path = tmp_path / "manifest.csv"
        record = records(1)[0]
        from dataclasses import replace

        write_manifest(path, [replace(record, pose_map="maps/depth_00000.npy")])
        loaded = read_manifest(path)
        assert loaded[0].pose_map == str(tmp_path / "maps" / "depth_00000.npy")


class TestErrors:
    def test_missing_version_line(self, tmp_path):
        path = tmp_path / "manifest.csv"
        path.write_text("rgb,depth\n")
        with pytest.raises(ManifestError, match="version"):
            read_manifest(path)

    def test_unknown_version(self, tmp_path):
        path = tmp_path / "manifest.csv"
        write_manifest(path, [])
        body = path.read_text().replace("-v1", "-v99")
        path.write_text(body)
        with pytest.raises(ManifestError, match="version 99"):
            read_manifest(path)

    def test_invalid_pitch_names_invariant_and_line(self, tmp_path):
        path = tmp_path / "manifest.csv"
        write_manifest(path, records(2))
        lines = path.read_text().splitlines()
        cells = lines[3].split(",")
        cells[9] = "-0.1"  # pitch column
        lines[3] = ",".join(cells)
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ManifestError, match=r":4: pitch"):
            read_manifest(path)

    def test_wrong_field_count(self, tmp_path):
        path = tmp_path / "manifest.csv"
        write_manifest(path, records(1))
        with open(path, "a", encoding="utf-8") as f:
            f.write("too,few,fields\n")
        with pytest.raises(ManifestError, match="fields"):
            read_manifest(path)
