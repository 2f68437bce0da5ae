"""Figure pipeline tests.

The input CSVs come from running the actual `fskjcr` command at a tiny
scale, so these tests exercise the real file contract end to end.
"""

import hashlib
import shutil
import subprocess
from pathlib import Path

import pytest

from fskjcr_figs import FIGURES, build_figure, read_table, render
from fskjcr_figs.figures import make_spec
from fskjcr_figs.reader import SchemaError

CONFIG = """\
M = 4
gamma2 = 0.02
af_lengths = 2,5,10,25
af_realizations = 40
L_max = 40
hit_runs = 200
t_max = 300
snr_db = 10,20
mse_realizations = 4
mse_trials = 5
cdf_realizations = 6
cdf_trials = 4
fixed_lengths = 10,20
bound_lo = 3
bound_hi = 60
pmf_points = 1:0,2:1
bins = 8
L1 = 40
alpha = 0.2
"""


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("csvs")
    cfg = root / "config.txt"
    cfg.write_text(CONFIG)
    for experiment in FIGURES:
        proc = subprocess.run(
            ["fskjcr", experiment, "--config", str(cfg), "--seed", "42",
             "--out", str(root)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, f"{experiment}: {proc.stderr}"
    return root


def test_every_experiment_renders(csv_dir, tmp_path):
    for experiment in FIGURES:
        path = render(make_spec(experiment, csv_dir, tmp_path))
        assert path.is_file() and path.suffix == ".svg"
        head = path.read_text()[:200]
        assert "<?xml" in head, experiment


def test_flatness_figure_uses_log_y(csv_dir):
    fig = build_figure(make_spec("flatness-stats", csv_dir, "."))
    assert fig.axes[0].get_yscale() == "log"


def test_rendering_is_byte_stable(csv_dir, tmp_path):
    digests = []
    for sub in ("a", "b"):
        path = render(make_spec("hitcdf", csv_dir, tmp_path / sub))
        digests.append(hashlib.sha256(path.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_metadata_passes_through(csv_dir):
    table = read_table(csv_dir / "hitcdf_cdfs.csv")
    assert table.metadata["seed"] == "42"
    assert "config_hash" in table.metadata


def test_empty_csv_fails_without_output(csv_dir, tmp_path):
    broken = tmp_path / "in"
    shutil.copytree(csv_dir, broken)
    target = broken / "hitcdf_cdfs.csv"
    lines = target.read_text().splitlines()
    meta = [line for line in lines if line.startswith("#")]
    header = next(line for line in lines if not line.startswith("#"))
    target.write_text("\n".join([*meta, header]) + "\n")
    out = tmp_path / "out"
    with pytest.raises(SchemaError, match="no data rows"):
        render(make_spec("hitcdf", broken, out))
    assert not (out / "hitcdf.svg").exists()


def test_missing_column_fails(csv_dir, tmp_path):
    broken = tmp_path / "in"
    shutil.copytree(csv_dir, broken)
    target = broken / "hitcdf_cdfs.csv"
    text = target.read_text().replace("cdf_tangent", "cdf_other")
    target.write_text(text)
    with pytest.raises(SchemaError, match="cdf_tangent"):
        render(make_spec("hitcdf", broken, tmp_path / "out"))


def test_missing_file_fails(tmp_path):
    with pytest.raises(SchemaError, match="no such file"):
        render(make_spec("hitcdf", tmp_path, tmp_path))


def test_cli_writes_figure(csv_dir, tmp_path):
    proc = subprocess.run(
        ["fskjcr-figs", "hitcdf", "--in", str(csv_dir), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "hitcdf.svg").is_file()


def test_cli_schema_error_exit_code(tmp_path):
    proc = subprocess.run(
        ["fskjcr-figs", "hitcdf", "--in", str(tmp_path), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "no such file" in proc.stderr
    assert not (tmp_path / "hitcdf.svg").exists()


def test_cli_rejects_unknown_experiment(tmp_path):
    proc = subprocess.run(
        ["fskjcr-figs", "nonsense", "--in", str(tmp_path), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
