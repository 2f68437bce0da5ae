"""Result table serialization round-trips and metadata policy."""

import numpy as np
import pytest

from fskjcr.results import ResultTable, config_hash, read_csv, write_csv


def test_config_hash_stable_and_sensitive():
    a = config_hash({"M": 32, "seed": 1})
    assert a == config_hash({"seed": 1, "M": 32}) # order independent
    assert a != config_hash({"M": 32, "seed": 2})
    assert len(a) == 12


def test_row_width_validation():
    with pytest.raises(ValueError):
        ResultTable(["a", "b"], [(1, 2), (3,)], {})


def test_wall_clock_in_memory_only(tmp_path):
    table = ResultTable(["x", "y"], [(1, 2.5), (3, 4.0)],
                        {"config_hash": "abc", "seed": 7, "version": "0.1.0"})
    assert "wall_clock" in table.metadata
    path = write_csv(table, tmp_path / "t.csv")
    text = path.read_text()
    assert "wall_clock" not in text
    assert "# config_hash: abc" in text
    assert "# seed: 7" in text
    assert "# version: 0.1.0" in text


def test_round_trip(tmp_path):
    table = ResultTable(
        ["L", "value"],
        [(2, 0.5), (5, 0.25), (10, 1e-12)],
        {"config_hash": "fff", "seed": 3, "version": "x"},
    )
    path = write_csv(table, tmp_path / "rt.csv")
    back = read_csv(path)
    assert back.columns == ["L", "value"]
    assert np.allclose(back.column("L"), [2, 5, 10])
    assert np.allclose(back.column("value"), [0.5, 0.25, 1e-12])
    assert back.metadata["config_hash"] == "fff"


def test_rewrite_is_byte_identical(tmp_path):
    rows = [(i, i * 0.3) for i in range(20)]
    meta = {"config_hash": "aaa", "seed": 1, "version": "v"}
    p1 = write_csv(ResultTable(["i", "v"], rows, dict(meta)), tmp_path / "a.csv")
    p2 = write_csv(ResultTable(["i", "v"], rows, dict(meta)), tmp_path / "b.csv")
    assert p1.read_bytes() == p2.read_bytes()


def test_integral_floats_written_compactly(tmp_path):
    table = ResultTable(["a"], [(3.0,), (2.5,)],
                        {"config_hash": "c", "seed": 0, "version": "v"})
    text = write_csv(table, tmp_path / "c.csv").read_text()
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    assert lines[1] == "3"
    assert lines[2] == "2.5"


def test_from_arrays_and_column():
    t = ResultTable.from_arrays(["a", "b"], [np.arange(3), np.arange(3) * 2.0], {})
    assert t.rows == [(0, 0.0), (1, 2.0), (2, 4.0)]
    assert np.allclose(t.column("b"), [0, 2, 4])
    with pytest.raises(KeyError):
        t.column("missing")
