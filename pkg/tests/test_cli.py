import json

import pytest

from irid.cli import cli_main


def run(tmp_path, *extra):
    args = ["--lambda", "1.5", "--mu", "-0.4", "--wgc", "1", "--tm", "2",
            "--wmin", "0.01", "--wmax", "40", "--norder", "5",
            "--samples", "128", "--out-dir", str(tmp_path / "out")]
    return cli_main(args + list(extra))


def test_successful_run(tmp_path, capsys):
    assert run(tmp_path) == 0
    out_dir = tmp_path / "out"
    for name in ("impulse.csv", "freq.csv", "coeffs.json", "summary.txt",
                 "impulse.svg", "freq.svg"):
        assert (out_dir / name).exists()
    stdout = capsys.readouterr().out
    assert "discrete vs exact" in stdout
    coeffs = json.loads((out_dir / "coeffs.json").read_text())
    assert len(coeffs["discrete"]["den"]) == 6


def test_no_svg_flag(tmp_path):
    assert run(tmp_path, "--no-svg") == 0
    assert not (tmp_path / "out" / "impulse.svg").exists()


def test_lambda_out_of_range(tmp_path, capsys):
    code = cli_main(["--lambda", "3", "--mu", "-0.4", "--wgc", "1",
                     "--tm", "2", "--out-dir", str(tmp_path / "x")])
    assert code == 2
    assert "(0, 2)" in capsys.readouterr().err


def test_bad_sample_count(tmp_path, capsys):
    code = run(tmp_path, "--samples", "100")
    assert code == 2
    assert "power of two" in capsys.readouterr().err


def test_missing_required_flag(capsys):
    assert cli_main(["--lambda", "1.5"]) == 2


def test_help_exits_zero(capsys):
    assert cli_main(["--help"]) == 0
    assert "--wgc" in capsys.readouterr().out
