import math
import subprocess
import sys

import pytest

from blzmonster.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_ENV,
    parse_alpha,
    parse_complex,
    parse_levels,
    parse_m_partition,
    parse_partition,
    run,
)
from blzmonster.io_formats import read_solutions
from blzmonster.partitions import Partition


def test_argument_parsers():
    assert parse_alpha("pi/3") == pytest.approx(math.pi / 3)
    assert parse_alpha("2pi/5") == pytest.approx(2 * math.pi / 5)
    assert parse_alpha("0.5") == 0.5
    assert parse_complex("7e4") == 7e4
    assert parse_complex("1,-2") == 1 - 2j
    assert parse_partition("3,2,1") == Partition((3, 2, 1))
    assert parse_levels("0,2,4") == (0, 2, 4)
    mp = parse_m_partition("2;;1", 3)
    assert [p.n_total for p in mp.sectors] == [2, 0, 1]


@pytest.mark.parametrize("argv", [
    ["partitions", "4"],
    ["wronskian", "--partition", "2,1"],
    ["verify-extension", "--max-n", "5"],
    ["jacobian", "--max-n", "5"],
    ["seed", "--partition", "4,1", "--alpha", "pi/3", "--L", "7e4"],
    ["solve", "--partition", "3,1", "--alpha", "1", "--L", "1e6"],
    ["census", "--n", "3", "--alpha", "0.5", "--L", "1e6", "--threads", "2"],
    ["spectrum", "--partition", "2,1", "--alpha", "1", "--L", "1e4", "--levels", "0,2,4"],
    ["particles", "--m", "4", "--j", "4", "--L", "1e3", "--symmetric"],
    ["particles", "--m", "3", "--j", "1", "--L", "10"],
])
def test_subcommands_succeed(argv, capsys):
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["solve", "--partition", "3,1"],
    ["spectrum", "--partition", "2,1", "--alpha", "1", "--L", "1e4", "--levels", "1"],
    ["spectrum", "--alpha", "1", "--L", "1e4,3"],
    ["census", "--n", "0", "--alpha", "1", "--L", "1e6"],
    ["partitions", "-3"],
    ["particles", "--m", "4", "--j", "3", "--L", "1e3", "--symmetric"],
    ["solve", "--partition", "2,x", "--alpha", "1", "--L", "1e6"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_verification_failure_exit_code(capsys):
    # an absurdly strict gate cannot be met in double precision
    argv = ["solve", "--partition", "3,1", "--alpha", "1", "--L", "1e6", "--tol", "1e-300"]
    assert run(argv) == EXIT_FAIL


def test_solve_writes_readable_json(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert run(["solve", "--partition", "2", "--alpha", "1", "--L", "1e4", "-o", str(out)]) == EXIT_OK
    (rec,) = read_solutions(out)
    assert rec.partition == (2,) and len(rec.roots) == 2


def test_output_directory_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path))
    assert run(["jacobian", "--max-n", "3"]) == EXIT_OK
    assert (tmp_path / "jacobian.json").exists()


def test_loop_swaps_conjugates(capsys):
    argv = ["loop", "--partition", "4,1", "--alpha", "pi/3", "--radius", "7e4"]
    assert run(argv) == EXIT_OK
    assert "(2,1,1,1)" in capsys.readouterr().out.replace(" ", "")


def test_figure10_is_byte_identical_across_runs(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["figure10", "-o", str(a)]) == EXIT_OK
    assert run(["figure10", "-o", str(b), "--threads", "3"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blzmonster", "partitions", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "(2,1)" in proc.stdout.replace(" ", "")
