import csv
import json

import numpy as np
import pytest
from PIL import Image

from holoctf.errors import ContractError
from holoctf.fields import Grid2D, RealField2D
from holoctf.genfn import GenFnKind, build_genfn, first_zeros
from holoctf.interp import wks_truncation_demo
from holoctf.store import (
    load_manifest,
    new_manifest,
    raw_paths,
    read_raw,
    write_error_curve_csv,
    write_manifest,
    write_pgm,
    write_profile_csv,
    write_raw,
    write_zero_table_csv,
)


def _read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


@pytest.fixture
def field(rng):
    grid = Grid2D(8, 2.0)
    return RealField2D(grid, rng.normal(size=(8, 8)))


class TestRaw:
    def test_paths(self):
        assert raw_paths("out/recon") == ("out/recon.raw", "out/recon.json")
        assert raw_paths("out/recon.raw") == ("out/recon.raw", "out/recon.json")
        assert raw_paths("out/recon.json") == ("out/recon.raw", "out/recon.json")

    def test_round_trip(self, tmp_path, field):
        raw_path, manifest_path = write_raw(str(tmp_path / "sub" / "truth"), field, "truth_phi", {"f": 3})
        assert (tmp_path / "sub" / "truth.raw").stat().st_size == 8 * 8 * 8
        loaded, manifest = read_raw(raw_path)
        np.testing.assert_array_equal(loaded.values, field.values)
        assert loaded.grid == field.grid
        assert manifest["kind"] == "truth_phi"
        assert manifest["f"] == 3

    def test_missing_manifest(self, tmp_path, field):
        raw_path, manifest_path = write_raw(str(tmp_path / "a"), field, "x")
        (tmp_path / "a.json").unlink()
        with pytest.raises(FileNotFoundError):
            read_raw(raw_path)

    def test_size_mismatch(self, tmp_path, field):
        _, manifest_path = write_raw(str(tmp_path / "a"), field, "x")
        with open(manifest_path) as f:
            manifest = json.load(f)
        manifest["n"] = 16
        with open(manifest_path, "w") as f:
            json.dump(manifest, f)
        with pytest.raises(ContractError):
            read_raw(str(tmp_path / "a"))


class TestExport:
    def test_zero_table(self, tmp_path):
        table = first_zeros(build_genfn(GenFnKind.PHASE, 3), 5)
        rows = _read_csv(write_zero_table_csv(str(tmp_path / "zeros.csv"), table))
        assert rows[0] == ["lambda", "lambda_sq", "l", "dZ", "family"]
        assert len(rows) == 6
        assert [int(r[2]) for r in rows[1:]] == [0, 1, 2, 4, 6]
        assert float(rows[1][1]) == 1.5

    def test_error_curve(self, tmp_path):
        result = wks_truncation_demo(2, t_grid=np.linspace(-1, 1, 11))
        rows = _read_csv(write_error_curve_csv(str(tmp_path / "curve.csv"), result))
        assert rows[0] == ["t", "truth", "approx", "error"]
        assert len(rows) == 12

    def test_profile(self, tmp_path, field):
        rows = _read_csv(write_profile_csv(str(tmp_path / "p.csv"), field))
        assert rows[0] == ["y", "recon"]
        assert len(rows) == 9
        assert float(rows[5][0]) == 0.0
        assert float(rows[1][1]) == field.values[0, 4]
        rows = _read_csv(write_profile_csv(str(tmp_path / "q.csv"), field, field))
        assert rows[0] == ["y", "recon", "reference"]
        assert rows[3][1] == rows[3][2]

    def test_pgm(self, tmp_path, field):
        path = str(tmp_path / "img.pgm")
        scale = write_pgm(path, field)
        with open(path, "rb") as f:
            assert f.read(2) == b"P5"
        counts = np.array(Image.open(path)).astype(np.int64)
        assert counts.shape == (8, 8)
        assert counts.max() == 65535
        assert counts.min() == 0
        assert scale["min"] == field.values.min()
        assert scale["max"] == field.values.max()
        np.testing.assert_allclose(scale["min"] + counts * scale["step"], field.values, atol=scale["step"])

    def test_flat_pgm(self, tmp_path):
        scale = write_pgm(str(tmp_path / "flat.pgm"), RealField2D.zeros(Grid2D(4, 1.0)))
        assert scale["step"] == 0.0


class TestManifest:
    def test_round_trip(self, tmp_path):
        artifact = tmp_path / "data.txt"
        artifact.write_text("hello")
        manifest = new_manifest("zeros", {"kind": "phase", "f": 3})
        manifest.record_output(str(artifact))
        manifest.notes.append("note")
        path = write_manifest(str(tmp_path / "manifest.json"), manifest)
        loaded = load_manifest(path)
        assert loaded == manifest
        assert loaded.outputs[str(artifact)] == \
            "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824"
        assert set(loaded.versions) >= {"holoctf", "python", "numpy", "scipy"}
