import json
from pathlib import Path

import pytest

from src.main import EXIT_IO, EXIT_OK, EXIT_USAGE, join_signed_values, main

pytestmark = pytest.mark.cli

SCHEMA = Path(__file__).resolve().parent.parent / "schemas" / "zeros.schema.json"


def test_transform_human(capsys):
    assert main(["transform", "--n", "0", "--mu", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Gamma(s/2)" in out
    assert "phat(s)    = 1" in out


def test_transform_json(capsys):
    assert main(["transform", "--n", "4", "--mu", "0", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["index"] == 4
    assert record["phat"]["rendered"] == "4/3*s^2 - 4/3*s + 1"
    assert record["two_power_offset"] == 0


@pytest.mark.parametrize("mu", ["0.5", "-1/2", "abc"])
def test_transform_rejects_bad_mu(mu):
    assert main(["transform", "--n", "2", "--mu", mu]) == EXIT_USAGE


def test_transform_negative_mu(capsys):
    assert main(["transform", "--n", "3", "--mu", "-1/4", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["index"] == 3


def test_zeros_negative_mu(capsys):
    assert main(["zeros", "--n", "6", "--mu", "-1/4", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["certified"]
    assert len(record["zeros_s"]) == 3


def test_verify_negative_mu(capsys):
    argv = ["verify", "--suite", "critline", "--nmax", "4", "--mu", "-1/4", "--no-progress", "--format", "json"]
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["config"]["mu_list"] == ["-1/4"]


def test_verify_negative_grid_head(capsys):
    argv = ["verify", "--suite", "mellin", "--nmax", "4", "--mu", "-1/4,1/3", "--no-progress", "--format", "json"]
    assert main(argv) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["config"]["mu_list"] == ["-1/4", "1/3"]


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["--mu", "-1/4"], ["--mu=-1/4"]),
        (["--mu", "-3,0"], ["--mu=-3,0"]),
        (["--mu", "1/3", "--verbose"], ["--mu", "1/3", "--verbose"]),
        (["--mu", "--verbose"], ["--mu", "--verbose"]),
        (["--n", "-2"], ["--n", "-2"]),
    ],
)
def test_join_signed_values(argv, expected):
    assert join_signed_values(argv) == expected


def test_zeros_json_matches_schema(capsys):
    assert main(["zeros", "--n", "4", "--mu", "0", "--digits", "8", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["zeros_t"] == ["0.70710678"]
    assert record["zeros_s"] == ["1/2 + i*0.70710678", "1/2 - i*0.70710678"]
    assert record["certified"] and record["symmetric"]
    schema = json.loads(SCHEMA.read_text())
    assert set(schema["required"]) == set(record)


def test_zeros_constant_factor(capsys):
    assert main(["zeros", "--n", "1", "--mu", "1/2", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["zeros_t"] == []
    assert record["degree"] == 0


def test_zeros_larger_instance(capsys):
    assert main(["zeros", "--n", "13", "--mu", "7/2", "--digits", "10", "--format", "json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["real_root_count"] == 6
    assert len(record["zeros_s"]) == 6
    assert len(record["zeros_t"]) == 3


def test_zeros_rejects_bad_digits():
    assert main(["zeros", "--n", "4", "--mu", "0", "--digits", "0"]) == EXIT_USAGE


def test_verify_exact_suites(capsys):
    argv = ["verify", "--suite", "mellin", "--nmax", "6", "--mu", "0,1/3", "--no-progress", "--format", "json"]
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["summary"]["failed"] == 0
    assert report["summary"]["total"] > 0
    assert report["config"]["mu_list"] == ["0", "1/3"]


def test_verify_critline_human(capsys):
    assert main(["verify", "--suite", "critline", "--nmax", "8", "--mu", "1/2", "--no-progress"]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("OK")


def test_verify_rejects_bad_grid():
    assert main(["verify", "--suite", "mellin", "--mu", "1/3,-1", "--no-progress"]) == EXIT_USAGE


def test_table_is_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        assert main(["table", "--nmax", "8", "--mu", "0", "--digits", "8", "--no-progress", "--out", str(path)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines[0] == "n,mu,t,digits"
    assert len(lines) == 1 + 16
    assert "4,0,0.70710678,8" in lines


def test_table_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    assert main(["table", "--nmax", "1", "--mu", "1/2", "--no-progress", "--out", str(out)]) == EXIT_OK
    assert out.read_text() == "n,mu,t,digits\n"


@pytest.mark.slow
def test_table_parallel_matches_serial(tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    base = ["table", "--nmax", "10", "--mu", "0,1/3", "--no-progress"]
    assert main(base + ["--out", str(serial)]) == EXIT_OK
    assert main(base + ["--parallelism", "2", "--out", str(parallel)]) == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()


def test_unwritable_output(tmp_path):
    out = tmp_path / "missing" / "zeros.csv"
    assert main(["table", "--nmax", "2", "--mu", "0", "--no-progress", "--out", str(out)]) == EXIT_IO
