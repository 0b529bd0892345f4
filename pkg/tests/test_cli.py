"""
End-to-end tests of the command line (exit codes, files written, output).
"""

import shutil

import pytest

from cli.exit_codes import ExitCode, exit_code_for
from cli.main import main
from core.errors import ConfigError, DecodeError, ModelBuildError, OracleGuardError, ParseError, StructuralError
from core.solution import Solution
from core.validator import validate_solution
from instance_io.generators import random_min_time
from instance_io.native_format import read_instance, write_instance
from instance_io.solution_format import read_solution, write_solution
from tests.factories import make_tiny_min_cost, make_tiny_min_time
from tests.test_converters import TSP_TEXT


@pytest.fixture
def tiny_dir(tmp_path):
    """Directory with two tiny min-time instance files."""
    directory = tmp_path / "instances"
    directory.mkdir()
    write_instance(directory / "tiny_a.txt", make_tiny_min_time(name="tiny_a"))
    write_instance(directory / "tiny_b.txt", make_tiny_min_time(name="tiny_b", drone_time=(9,)))
    return directory


def run_cli(*args) -> int:
    return main([str(a) for a in args])


@pytest.mark.parametrize("error,code", [
    (ConfigError("x"), ExitCode.USAGE),
    (OracleGuardError("x"), ExitCode.USAGE),
    (ParseError("x", line=1), ExitCode.PARSE_ERROR),
    (FileNotFoundError("x"), ExitCode.PARSE_ERROR),
    (ModelBuildError("x"), ExitCode.MODEL_MISMATCH),
    (StructuralError("x"), ExitCode.MODEL_MISMATCH),
    (DecodeError("x"), ExitCode.INTERNAL_ERROR),
    (RuntimeError("x"), ExitCode.INTERNAL_ERROR),
])
def test_exit_code_mapping(error, code):
    assert exit_code_for(error) is code


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------

def test_validate_example8(data_dir, capsys):
    code = run_cli("validate", data_dir / "instances" / "example8.txt", data_dir / "solutions" / "example8.sol")
    assert code == ExitCode.OK
    out = capsys.readouterr().out
    assert "Status: FEASIBLE" in out
    assert "Makespan: 17.00" in out


def test_validate_reports_capacity_violation(tmp_path, capsys):
    write_instance(tmp_path / "mc.txt", make_tiny_min_cost(truck_capacity=5))
    write_solution(tmp_path / "mc.sol", Solution.from_routes([[1, 2]], [[]]))
    assert run_cli("validate", tmp_path / "mc.txt", tmp_path / "mc.sol") == ExitCode.INFEASIBLE
    assert "Capacity" in capsys.readouterr().out


def test_validate_truncated_solution(data_dir, tmp_path, capsys):
    truncated = tmp_path / "truncated.sol"
    truncated.write_text("DRONESCHED-SOLUTION 1\nTRUCK 0 2 3 0\n", encoding="utf-8")
    code = run_cli("validate", data_dir / "instances" / "example8.txt", truncated)
    assert code == ExitCode.PARSE_ERROR
    assert "truncated" in capsys.readouterr().err


def test_validate_missing_file(tmp_path, data_dir):
    code = run_cli("validate", tmp_path / "absent.txt", data_dir / "solutions" / "example8.sol")
    assert code == ExitCode.PARSE_ERROR


def test_validate_fleet_mismatch(tmp_path, data_dir):
    write_instance(tmp_path / "tiny.txt", make_tiny_min_time())
    code = run_cli("validate", tmp_path / "tiny.txt", data_dir / "solutions" / "example8.sol")
    assert code == ExitCode.MODEL_MISMATCH


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    [],
    ["solve", "--model", "mt-9idx"],
    ["bench"],
    ["convert", "only-source"],
    ["solve", "--time-limit", "soon"],
])
def test_usage_errors(argv):
    assert main(argv) == ExitCode.USAGE


def test_solve_without_instances(tmp_path):
    assert run_cli("solve", "--out", tmp_path) == ExitCode.USAGE


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------

def test_solve_writes_outcomes_and_table(tiny_dir, tmp_path, capsys):
    out = tmp_path / "out"
    code = run_cli("solve", tiny_dir / "tiny_a.txt", "--preset", "exhaustive", "--model", "mt-3idx", "--out", out)
    assert code == ExitCode.OK
    assert (out / "tiny_a.outcome.yaml").exists()
    lines = (out / "results.csv").read_text(encoding="utf-8").splitlines()
    assert lines == [
        "instance,trucks,drones,mt-3idx_lb,mt-3idx_ub,mt-3idx_status,mt-3idx_time",
        "tiny_a,1,1,6.00,6.00,*,-",
    ]
    assert "Optimal" in capsys.readouterr().out


def test_solve_model_variant_mismatch(tiny_dir, tmp_path):
    code = run_cli("solve", tiny_dir / "tiny_a.txt", "--model", "mc-3idx", "--out", tmp_path)
    assert code == ExitCode.MODEL_MISMATCH


def test_solve_from_manifest(tiny_dir, tmp_path):
    manifest = tmp_path / "run.yaml"
    manifest.write_text(
        "instances: [instances/tiny_a.txt, instances/tiny_b.txt]\n"
        "preset: exhaustive\n"
        "output: results\n",
        encoding="utf-8",
    )
    assert run_cli("solve", "--manifest", manifest) == ExitCode.OK
    lines = (tmp_path / "results" / "results.csv").read_text(encoding="utf-8").splitlines()
    assert [line.split(",")[0] for line in lines[1:]] == ["tiny_a", "tiny_b"]
    assert lines[0].count("_status") == 2


# ----------------------------------------------------------------------
# bench
# ----------------------------------------------------------------------

def test_bench_resumes_and_is_reproducible(tiny_dir, tmp_path, capsys):
    out = tmp_path / "bench"
    args = ["bench", tiny_dir, "--preset", "exhaustive", "--no-progress", "--out", out]
    assert run_cli(*args) == ExitCode.OK
    first = (out / "results.csv").read_bytes()
    capsys.readouterr()

    assert run_cli(*args) == ExitCode.OK
    assert "Reused: 2" in capsys.readouterr().out
    assert (out / "results.csv").read_bytes() == first

    (out / "tiny_b.outcome.yaml").unlink()
    assert run_cli(*args) == ExitCode.OK
    assert "Solved: 1  Reused: 1" in capsys.readouterr().out
    assert (out / "results.csv").read_bytes() == first

    assert run_cli(*args, "--force") == ExitCode.OK
    assert (out / "results.csv").read_bytes() == first


def test_bench_parallel_jobs_match_sequential(tiny_dir, tmp_path):
    sequential, parallel = tmp_path / "seq", tmp_path / "par"
    base = ["bench", tiny_dir, "--preset", "exhaustive", "--no-progress"]
    assert run_cli(*base, "--out", sequential) == ExitCode.OK
    assert run_cli(*base, "--out", parallel, "--jobs", "2") == ExitCode.OK
    assert (parallel / "results.csv").read_bytes() == (sequential / "results.csv").read_bytes()


def test_bench_empty_directory(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run_cli("bench", empty, "--no-progress", "--out", tmp_path / "out") == ExitCode.OK
    assert (tmp_path / "out" / "results.csv").read_text(encoding="utf-8") == "instance,trucks,drones\n"


def test_bench_skips_broken_files_and_reports_them(tiny_dir, tmp_path):
    (tiny_dir / "broken.txt").write_text("DRONESCHED-INSTANCE 1\nNAME broken\n", encoding="utf-8")
    out = tmp_path / "out"
    code = run_cli("bench", tiny_dir, "--preset", "exhaustive", "--no-progress", "--out", out)
    assert code == ExitCode.PARSE_ERROR
    rows = (out / "results.csv").read_text(encoding="utf-8").splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == ["tiny_a", "tiny_b"]


def test_bench_rejects_bad_arguments(tiny_dir, tmp_path):
    assert run_cli("bench", tiny_dir / "tiny_a.txt", "--no-progress") == ExitCode.PARSE_ERROR
    assert run_cli("bench", tiny_dir, "--jobs", "0", "--out", tmp_path) == ExitCode.USAGE


# ----------------------------------------------------------------------
# convert / oracle
# ----------------------------------------------------------------------

def test_convert_tsplib_file(tmp_path, capsys):
    source = tmp_path / "toy.tsp"
    source.write_text(TSP_TEXT, encoding="utf-8")
    target = tmp_path / "toy.txt"
    code = run_cli("convert", source, target, "--fraction", "0.5", "--scale", "1", "--trucks", "2")
    assert code == ExitCode.OK
    instance = read_instance(target)
    assert instance.name == "toy_0_50"
    assert instance.truck_count == 2
    assert "Wrote toy_0_50" in capsys.readouterr().out


def test_convert_rejects_bad_parameters(tmp_path):
    source = tmp_path / "toy.tsp"
    source.write_text(TSP_TEXT, encoding="utf-8")
    assert run_cli("convert", source, tmp_path / "x.txt", "--fraction", "1.5") == ExitCode.USAGE


def test_oracle_on_a_tiny_instance(tmp_path, capsys):
    write_instance(tmp_path / "tiny.txt", make_tiny_min_time())
    code = run_cli("oracle", tmp_path / "tiny.txt", "--out", tmp_path / "best.sol")
    assert code == ExitCode.OK
    out = capsys.readouterr().out
    assert "Feasible solutions: 3" in out
    assert "Optimum: 6.00" in out
    best = read_solution(tmp_path / "best.sol")
    assert validate_solution(make_tiny_min_time(), best).feasible


def test_oracle_infeasible_and_guarded(tmp_path):
    write_instance(tmp_path / "mc.txt", make_tiny_min_cost(truck_capacity=5, drone_time_limit=4))
    assert run_cli("oracle", tmp_path / "mc.txt") == ExitCode.INFEASIBLE
    write_instance(tmp_path / "big.txt", random_min_time(10, seed=1))
    assert run_cli("oracle", tmp_path / "big.txt") == ExitCode.USAGE


def test_packaged_instance_copies_cleanly(data_dir, tmp_path):
    target = tmp_path / "example8.txt"
    shutil.copy(data_dir / "instances" / "example8.txt", target)
    assert read_instance(target) == read_instance(data_dir / "instances" / "example8.txt")
