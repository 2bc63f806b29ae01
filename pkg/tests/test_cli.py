"""
Tests for the command line interface.
"""

import io
import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from tests.conftest import write_table
from wavelet_regression.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def synthetic_csv(runner, tmp_path):
    path = tmp_path / "synthetic.csv"
    result = runner.invoke(cli, ["gen-synthetic", "--seed", "42", "--output", str(path)])
    assert result.exit_code == 0, result.output
    return path


def test_gen_synthetic_is_byte_identical(runner, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert runner.invoke(cli, ["gen-synthetic", "--seed", "42", "-o", str(path)]).exit_code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_text().splitlines()[0] == "year,Y,X1,X2"


def test_gen_synthetic_to_stdout(runner):
    result = runner.invoke(cli, ["gen-synthetic", "--n", "16", "--start-year", "2000"])
    assert result.exit_code == 0
    frame = pd.read_csv(io.StringIO(result.stdout))
    assert list(frame["year"]) == list(range(2000, 2016))


@pytest.mark.parametrize("args", [["--n", "0"], ["--noise-sd", "-1"]])
def test_gen_synthetic_invalid_spec(runner, args):
    assert runner.invoke(cli, ["gen-synthetic", *args]).exit_code == 2


def test_analyze_markdown(runner, synthetic_csv):
    result = runner.invoke(
        cli, ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1,X2", "--levels", "5", "--format", "markdown"]
    )
    assert result.exit_code == 0, result.output
    lines = [line for line in result.stdout.splitlines() if line.startswith("|")]
    assert lines[0].startswith("| Time scale | Regression equation | R² | F | Significance level α | AIC |")
    assert len(lines) == 2 + 6


def test_analyze_json_to_file(runner, synthetic_csv, tmp_path):
    out = tmp_path / "report.json"
    args = ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1,X2", "-j", "4", "-f", "json", "-o", str(out)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert [row["label"] for row in data["rows"]] == ["s0", "s1", "s2", "s3", "s4"]
    assert data["dataset"]["path"] == str(synthetic_csv)
    assert data["config"]["wavelet"] == "sym8"


def test_analyze_levels_zero(runner, synthetic_csv, tmp_path):
    out = tmp_path / "report.csv"
    args = ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1,X2", "--levels", "0", "-f", "csv", "-o", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    frame = pd.read_csv(out)
    assert list(frame["label"]) == ["s0"]


def test_analyze_missing_dependent(runner, synthetic_csv):
    result = runner.invoke(cli, ["analyze", "-i", str(synthetic_csv), "-x", "X1,X2"])
    assert result.exit_code == 2
    assert "--dependent" in result.output


def test_analyze_missing_column(runner, synthetic_csv):
    result = runner.invoke(cli, ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1,Q"])
    assert result.exit_code == 1
    assert "Q" in result.output


def test_analyze_missing_file(runner, tmp_path):
    result = runner.invoke(cli, ["analyze", "-i", str(tmp_path / "none.csv"), "-d", "Y", "-x", "X1"])
    assert result.exit_code == 1


def test_analyze_all_scales_failed(runner, tmp_path):
    path = write_table(tmp_path / "flat.csv", ["year", "Y", "X"], [(2000 + i, 1.0, i) for i in range(8)])
    result = runner.invoke(cli, ["analyze", "-i", str(path), "-d", "Y", "-x", "X", "--levels", "0", "-f", "json"])
    assert result.exit_code == 1


def test_config_file_and_flag_precedence(runner, synthetic_csv, tmp_path):
    config = tmp_path / "wreg.env"
    config.write_text("WAVELET=db4\nBOUNDARY=symmetric\nLEVELS=2\n")
    out = tmp_path / "report.json"
    args = ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1,X2", "--config", str(config)]
    args += ["--levels", "3", "-f", "json", "-o", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    echoed = json.loads(out.read_text())["config"]
    assert (echoed["wavelet"], echoed["boundary"], echoed["levels"]) == ("db4", "symmetric", 3)


def test_config_file_unknown_key(runner, synthetic_csv, tmp_path):
    config = tmp_path / "wreg.env"
    config.write_text("colour=blue\n")
    result = runner.invoke(cli, ["analyze", "-i", str(synthetic_csv), "-d", "Y", "-x", "X1", "--config", str(config)])
    assert result.exit_code == 2


def test_decompose(runner, synthetic_csv, tmp_path):
    out = tmp_path / "decomposition.csv"
    args = ["decompose", "-i", str(synthetic_csv), "-c", "Y", "--wavelet", "sym8", "--level", "5", "-o", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    frame = pd.read_csv(out, float_precision="round_trip")
    assert len(frame.columns) == 2 * 5 + 2
    assert frame.columns[0] == "year" and frame.columns[1] == "raw"
    assert np.allclose(frame["S_5"] + frame[[f"D_{j}" for j in range(1, 6)]].sum(axis=1), frame["raw"])


def test_decompose_level_too_deep(runner, synthetic_csv):
    result = runner.invoke(cli, ["decompose", "-i", str(synthetic_csv), "-c", "Y", "--level", "8"])
    assert result.exit_code == 1
    assert "j_max=7" in result.output


def test_decompose_constant_column(runner, tmp_path):
    path = write_table(tmp_path / "flat.csv", ["year", "C"], [(1900 + i, 2.5) for i in range(32)])
    result = runner.invoke(cli, ["decompose", "-i", str(path), "-c", "C", "--level", "3", "-b", "symmetric"])
    assert result.exit_code == 0
    frame = pd.read_csv(io.StringIO(result.stdout))
    for j in (1, 2, 3):
        assert np.max(np.abs(frame[f"D_{j}"])) < 1e-10


def test_decompose_rejects_level_zero(runner, synthetic_csv):
    assert runner.invoke(cli, ["decompose", "-i", str(synthetic_csv), "-c", "Y", "--level", "0"]).exit_code == 2


@pytest.mark.parametrize(
    "content, message",
    [
        (b"year,Y,X\n2000,1,2\n2001,2,3\n2002,3,4,5\n", "Malformed"),
        (b"year,Y,X\n2000,1,2\n2001,\xff9,3\n", "UTF-8"),
        (b"", "header"),
    ],
)
def test_analyze_malformed_file(runner, tmp_path, content, message):
    path = tmp_path / "bad.csv"
    path.write_bytes(content)
    result = runner.invoke(cli, ["analyze", "-i", str(path), "-d", "Y", "-x", "X", "--levels", "0"])
    assert result.exit_code == 1
    assert isinstance(result.exception, SystemExit)
    assert message in result.output
