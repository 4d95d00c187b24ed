import json
import os
import subprocess
import sys

import numpy as np
import pytest

from oracles import synthetic_voigt_spectrum
from zplkit.io_formats import save_spectrum
from zplkit.fitting import Spectrum

SRC = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                   "src")


def run_cli(*args, cwd=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run([sys.executable, "-m", "zplkit", *args],
                          capture_output=True, text=True, cwd=cwd, env=env)


@pytest.fixture(scope="module")
def synth_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    result = run_cli("synth", "--out-dir", str(root / "series"),
                     "--seed", "7", "--snr", "30")
    assert result.returncode == 0, result.stderr
    return root


def test_synth_writes_grid_and_manifest(synth_dir):
    files = sorted(os.listdir(synth_dir / "series"))
    assert "series.json" in files
    assert sum(f.endswith(".csv") for f in files) == 14


def test_fit_command_classifies_cold_spectrum(synth_dir):
    path = synth_dir / "series" / "spectrum_00_10K.csv"
    out = synth_dir / "fit10.json"
    result = run_cli("fit", str(path), "--output", str(out))
    assert result.returncode == 0, result.stderr
    assert "gaussian" in result.stdout
    record = json.loads(out.read_text())
    assert record["classification"]["label"] == "gaussian"
    assert abs(record["fit"]["total_fwhm_meV"] - 0.72) < 0.1


def test_fit_command_classifies_hot_spectrum(synth_dir):
    path = synth_dir / "series" / "spectrum_13_270K.csv"
    result = run_cli("fit", str(path))
    assert result.returncode == 0
    assert "lorentzian" in result.stdout


def test_series_command_full_pipeline(synth_dir):
    manifest = synth_dir / "series" / "series.json"
    out = synth_dir / "record.json"
    curves = synth_dir / "curves"
    result = run_cli("series", str(manifest), "--output", str(out),
                     "--curves-dir", str(curves))
    assert result.returncode == 0, result.stderr
    record = json.loads(out.read_text())
    assert record["best_model"] == "acoustic_debye"
    assert abs(record["gaussian_floor_meV"] - 0.72) / 0.72 < 0.05
    assert len(record["per_temperature"]) == 14
    assert {m["kind"] for m in record["models"]} == {
        "acoustic_debye", "cubic_law", "optical_mode"}
    for kind in ("acoustic_debye", "cubic_law", "optical_mode"):
        curve = curves / f"curve_{kind}.csv"
        lines = curve.read_text().splitlines()
        assert lines[0].startswith("#")
        assert len(lines) == 1 + 261  # 1 K steps across the 10-270 K data

    # records and artifacts are reproducible byte-for-byte
    out2 = synth_dir / "record2.json"
    result = run_cli("series", str(manifest), "--output", str(out2))
    assert result.returncode == 0
    assert out.read_bytes() == out2.read_bytes()


def test_series_bare_component_quantity_and_fixed_floor(synth_dir):
    manifest = synth_dir / "series" / "series.json"
    result = run_cli("series", str(manifest), "--quantity", "lorentzian",
                     "--fix-fg", "0.72")
    assert result.returncode == 0, result.stderr
    assert "gaussian_floor  0.720000" in result.stdout
    assert "best_model      acoustic_debye" in result.stdout


def test_series_low_range_models_indistinguishable(tmp_path):
    # fits over the low-temperature range cannot separate the finite-band
    # model from the cubic law (pinned protocol: <= 90 K, peak SNR 20)
    result = run_cli("synth", "--out-dir", str(tmp_path / "low"),
                     "--seed", "1", "--snr", "20", "--t-stop", "90")
    assert result.returncode == 0, result.stderr
    out = tmp_path / "low.json"
    result = run_cli("series", str(tmp_path / "low" / "series.json"),
                     "--output", str(out), "--quiet")
    assert result.returncode == 0, result.stderr
    record = json.loads(out.read_text())
    models = {m["kind"]: m for m in record["models"]}
    assert models["cubic_law"]["delta_aic"] < 2.0
    assert models["acoustic_debye"]["delta_aic"] < 2.0


def test_compare_command_on_record_and_table(synth_dir, tmp_path):
    record_path = synth_dir / "record.json"
    result = run_cli("compare", str(record_path))
    assert result.returncode == 0
    assert result.stdout.splitlines()[1].startswith("acoustic_debye")

    table = tmp_path / "points.csv"
    record = json.loads(record_path.read_text())
    lines = ["# temperature_K,linewidth_meV"]
    lines += [f"{b['temperature_K']},{b['total_fwhm_meV']}"
              for b in record["per_temperature"]]
    table.write_text("\n".join(lines) + "\n")
    result = run_cli("compare", str(table), "--fix-fg", "0.72",
                     "--models", "acoustic_debye", "cubic_law")
    assert result.returncode == 0
    assert result.stdout.splitlines()[1].startswith("acoustic_debye")

    result = run_cli("compare", str(table), "--fix-fg", "0.72",
                     "--models", "cubic_law")
    assert result.returncode == 0
    assert len(result.stdout.splitlines()) == 2  # header + one row


def test_simulate_command_deterministic(tmp_path):
    args = ("simulate", "--sigma", "0", "--gamma", "1.0", "--t-max", "20",
            "--dt", "0.1", "--n-traj", "50", "--seed", "11",
            "--center", "1810")
    r1 = run_cli(*args, cwd=tmp_path)
    assert r1.returncode == 0, r1.stderr
    assert "seed            11" in r1.stdout
    spec1 = (tmp_path / "simulated_spectrum.csv").read_bytes()
    coh1 = (tmp_path / "simulated_coherence.csv").read_bytes()
    r2 = run_cli(*args, cwd=tmp_path)
    assert r2.returncode == 0
    assert (tmp_path / "simulated_spectrum.csv").read_bytes() == spec1
    assert (tmp_path / "simulated_coherence.csv").read_bytes() == coh1


def test_simulate_output_feeds_fit(tmp_path):
    result = run_cli("simulate", "--sigma", "0", "--gamma", "2.0",
                     "--t-max", "15", "--dt", "0.05", "--n-traj", "20",
                     "--seed", "4", cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    fit = run_cli("fit", str(tmp_path / "simulated_spectrum.csv"),
                  "--unweighted")
    assert fit.returncode == 0, fit.stderr
    assert "lorentzian" in fit.stdout


def test_exit_codes(tmp_path):
    # io error: missing file
    result = run_cli("fit", str(tmp_path / "missing.csv"))
    assert result.returncode == 3
    assert result.stderr.startswith("error: io:")
    # parse error: malformed content
    bad = tmp_path / "bad.csv"
    bad.write_text("# energy_meV,intensity\n1.0,a\n")
    result = run_cli("fit", str(bad))
    assert result.returncode == 1
    assert result.stderr.startswith("error: parse:")
    # fit error: flat spectrum
    flat = tmp_path / "flat.csv"
    save_spectrum(Spectrum(np.linspace(0, 10, 64), np.full(64, 5.0)), flat)
    result = run_cli("fit", str(flat))
    assert result.returncode == 2
    assert result.stderr.startswith("error: fit:")
    # config error
    result = run_cli("simulate", "--sigma", "0", "--gamma", "0",
                     "--t-max", "1", "--dt", "0.01", cwd=tmp_path)
    assert result.returncode == 1
    # usage error
    result = run_cli("frobnicate")
    assert result.returncode == 1


def test_series_single_temperature_manifest_fails_cleanly(tmp_path):
    spec, _ = synthetic_voigt_spectrum(1820.0, 0.7, 0.1, temperature=10.0,
                                       n_points=64)
    save_spectrum(spec, tmp_path / "one.csv")
    manifest = {"emitter_id": "x", "entries": [
        {"temperature_K": 10.0, "path": "one.csv"}]}
    (tmp_path / "m.json").write_text(json.dumps(manifest))
    result = run_cli("series", str(tmp_path / "m.json"))
    assert result.returncode == 2
    assert result.stderr.startswith("error: fit:")


def test_quiet_suppresses_summary(synth_dir):
    path = synth_dir / "series" / "spectrum_00_10K.csv"
    result = run_cli("fit", str(path), "--quiet")
    assert result.returncode == 0
    assert result.stdout == ""
