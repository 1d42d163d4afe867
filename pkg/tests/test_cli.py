import csv
import json

import numpy as np
import pytest

from holoctf.__main__ import main
from holoctf.store import load_manifest, read_raw


def _rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def _json(path):
    with open(path) as f:
        return json.load(f)


@pytest.fixture
def disk_yaml(tmp_path):
    path = tmp_path / "disk.yaml"
    path.write_text("components:\n  - shape: disk\n    radius: 0.3\n    phi: 0.05\n")
    return str(path)


@pytest.fixture
def mu_disk_yaml(tmp_path):
    path = tmp_path / "mu_disk.yaml"
    path.write_text("components:\n  - shape: disk\n    radius: 0.3\n    mu: 0.02\n")
    return str(path)


class TestZeros:
    def test_phase_table(self, tmp_path):
        out = tmp_path / "zeros"
        assert main(["zeros", "--kind", "phase", "--fresnel", "3", "--max-radius", "5", "--out", str(out)]) == 0
        rows = _rows(out / "zeros.csv")
        assert [int(r[2]) for r in rows[1:]] == [0, 1, 2, 4, 6]
        report = _json(out / "report.json")
        assert report["function"] == "Z_3"
        assert report["count"] == 5
        assert report["sine_type"]["passed"]
        manifest = load_manifest(str(out / "manifest.json"))
        assert manifest.command == "zeros"
        assert set(manifest.outputs) == {str(out / "zeros.csv"), str(out / "report.json")}

    def test_even_attenuation_rejected(self, tmp_path):
        assert main(["zeros", "--kind", "attenuation", "--fresnel", "2", "--out", str(tmp_path)]) == 2


class TestSimulate:
    def test_outputs(self, tmp_path):
        out = tmp_path / "sim"
        assert main(["simulate", "--fresnel", "3", "--grid", "64", "--out", str(out)]) == 0
        for name in ("hologram.raw", "hologram.json", "truth_mu.raw", "truth_phi.json", "hologram.pgm",
                     "manifest.json"):
            assert (out / name).exists()
        intensity, manifest = read_raw(str(out / "hologram"))
        assert intensity.grid.n == 64
        assert manifest["model"] == "linear"
        assert manifest["f"] == pytest.approx(3.0)
        assert len(manifest["phantom"]["components"]) == 3

    def test_models_differ_slightly(self, tmp_path):
        for model in ("linear", "full"):
            assert main(["simulate", "--fresnel", "3", "--grid", "64", "--model", model,
                         "--out", str(tmp_path / model)]) == 0
        linear, _ = read_raw(str(tmp_path / "linear" / "hologram"))
        full, _ = read_raw(str(tmp_path / "full" / "hologram"))
        gap = np.max(np.abs(full.values - linear.values))
        assert 0 < gap < 1e-2


class TestReconstruct:
    def _run(self, out, *extra):
        return main(["reconstruct", "--grid", "32", "--directions", "32", "--out", str(out), *extra])

    def test_analytic_phase(self, tmp_path, disk_yaml):
        out = tmp_path / "rec"
        assert self._run(out, "--analytic", disk_yaml, "--fresnel", "3") == 0
        recon, manifest = read_raw(str(out / "recon"))
        assert recon.grid.n == 32
        assert manifest["kind"] == "recon_sin"
        metrics = _json(out / "metrics.json")
        assert metrics["rel_l2"] <= 5e-2
        assert _rows(out / "profile.csv")[0] == ["y", "recon", "reference"]
        assert (out / "recon.pgm").exists()
        run = load_manifest(str(out / "manifest.json"))
        assert run.parameters["f"] == 3
        assert run.inputs == {disk_yaml: run.inputs[disk_yaml]}

    def test_analytic_attenuation(self, tmp_path, mu_disk_yaml):
        out = tmp_path / "rec"
        assert self._run(out, "--analytic", mu_disk_yaml, "--fresnel", "3", "--channel", "cos") == 0
        assert _json(out / "metrics.json")["rel_l2"] <= 5e-2

    def test_analytic_needs_fresnel(self, tmp_path, disk_yaml):
        assert self._run(tmp_path, "--analytic", disk_yaml) == 2

    def test_missing_hologram_manifest(self, tmp_path):
        (tmp_path / "lonely.raw").write_bytes(b"\0" * 64)
        assert self._run(tmp_path / "rec", "--hologram", str(tmp_path / "lonely")) == 2

    def test_even_fresnel(self, tmp_path, disk_yaml):
        assert self._run(tmp_path / "a", "--analytic", disk_yaml, "--fresnel", "6") == 2
        assert self._run(tmp_path / "b", "--analytic", disk_yaml, "--fresnel", "6", "--refresnel") == 0
        run = load_manifest(str(tmp_path / "b" / "manifest.json"))
        assert run.parameters["f"] == 7
        assert run.parameters["scale"] == pytest.approx((7 / 6) ** 0.5)

    def test_phase_even_fresnel(self, tmp_path, disk_yaml):
        assert self._run(tmp_path / "two", "--analytic", disk_yaml, "--fresnel", "2") == 0
        assert load_manifest(str(tmp_path / "two" / "manifest.json")).parameters["f"] == 2
        assert self._run(tmp_path / "four", "--analytic", disk_yaml, "--fresnel", "4") == 2
        assert self._run(tmp_path / "five", "--analytic", disk_yaml, "--fresnel", "4", "--refresnel") == 0
        run = load_manifest(str(tmp_path / "five" / "manifest.json"))
        assert run.parameters["f"] == 5
        assert run.parameters["scale"] == pytest.approx((5 / 4) ** 0.5)

    def test_unknown_model_tag(self, tmp_path):
        sim = tmp_path / "sim"
        assert main(["simulate", "--fresnel", "3", "--grid", "64", "--out", str(sim)]) == 0
        manifest = _json(sim / "hologram.json")
        manifest["model"] = "quadratic"
        (sim / "hologram.json").write_text(json.dumps(manifest))
        assert self._run(tmp_path / "rec", "--hologram", str(sim / "hologram")) == 2

    def test_from_hologram(self, tmp_path, disk_yaml):
        sim = tmp_path / "sim"
        assert main(["simulate", "--phantom", disk_yaml, "--fresnel", "3", "--grid", "512", "--extent", "10",
                     "--out", str(sim)]) == 0
        out = tmp_path / "rec"
        assert main(["reconstruct", "--hologram", str(sim / "hologram"), "--grid", "16", "--directions", "16",
                     "--out", str(out)]) == 0
        metrics = _json(out / "metrics.json")
        assert metrics["rel_l2"] <= 0.1
        assert metrics["report"]["sampler"] == "hologram"

    def test_reproducible(self, tmp_path, disk_yaml):
        for name in ("a", "b"):
            assert self._run(tmp_path / name, "--analytic", disk_yaml, "--fresnel", "5") == 0
        first = (tmp_path / "a" / "recon.raw").read_bytes()
        assert first == (tmp_path / "b" / "recon.raw").read_bytes()


class TestVerify:
    def test_passes(self, tmp_path):
        report = tmp_path / "verify.json"
        assert main(["verify", "--fresnel", "3", "--zeros", "100", "--report", str(report),
                     "--out", str(tmp_path)]) == 0
        results = _json(report)
        assert set(results) == {"phase/3", "attenuation/3"}

    def test_corrupted_table_fails(self, tmp_path):
        assert main(["verify", "--fresnel", "3", "--kinds", "phase", "--zeros", "100", "--corrupt",
                     "--out", str(tmp_path)]) == 1

    def test_even_attenuation_skipped(self, tmp_path):
        assert main(["verify", "--fresnel", "2", "--kinds", "attenuation", "--out", str(tmp_path)]) == 0
        assert _json(tmp_path / "verify_report.json") == {}


class TestWksDemo:
    def test_curve(self, tmp_path, capsys):
        assert main(["wks-demo", "--n", "8", "--out", str(tmp_path)]) == 0
        assert "N=8 band=paley-wiener" in capsys.readouterr().out
        rows = _rows(tmp_path / "error_curve.csv")
        assert rows[0] == ["t", "truth", "approx", "error"]
        assert len(rows) == 12002
        metrics = load_manifest(str(tmp_path / "manifest.json")).metrics
        assert metrics["max_abs_error[wide]"] > metrics["max_abs_error[paley-wiener]"]
