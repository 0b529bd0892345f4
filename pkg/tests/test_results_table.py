"""
Tests for the results table and the per-instance outcome files.
"""

import pytest

from config.search_configs import EXHAUSTIVE_CONFIG
from core.errors import ParseError
from core.solution import Solution
from engine.outcome import SolveStatus
from engine.search import solve
from formulations.registry import build_model
from instance_io.outcome_files import outcome_path, read_outcome, write_outcome
from instance_io.results_table import (
    ModelResult,
    ResultRow,
    compare_to_best,
    emit_results_table,
    format_value,
    parse_results_table,
)

HEADER = (
    "instance,trucks,drones,"
    "mt-3idx_lb,mt-3idx_ub,mt-3idx_status,mt-3idx_time,"
    "mt-2idx_lb,mt-2idx_ub,mt-2idx_status,mt-2idx_time"
)


@pytest.fixture
def rows():
    example8 = ResultRow("example8", 2, 2, [
        ModelResult("mt-3idx", SolveStatus.OPTIMAL, 1600, 1700, 60.0),
        ModelResult("mt-2idx", SolveStatus.FEASIBLE, 1500, 1800, 60.0),
    ])
    tiny = ResultRow("tiny", 1, 1, [
        ModelResult("mt-3idx", SolveStatus.INFEASIBLE, 3, None, None, scale=1),
    ])
    return [example8, tiny]


@pytest.mark.parametrize("value,scale,expected", [
    (1700, 100, "17.00"),
    (1234567, 100, "12345.67"),
    (5, 1000, "0.01"),
    (4, 1000, "0.00"),
    (3600.0, 1, "3600.00"),
    (7, 1, "7.00"),
    (None, 100, "-"),
])
def test_format_value(value, scale, expected):
    assert format_value(value, scale) == expected


def test_results_table_layout(rows):
    lines = emit_results_table(rows).splitlines()
    assert lines == [
        HEADER,
        "example8,2,2,17.00,17.00,*,60.00,15.00,18.00,feasible,60.00",
        "tiny,1,1,-,-,infeasible,-,-,-,-,-",
    ]


def test_explicit_model_order(rows):
    header = emit_results_table(rows, models=["mt-2idx"]).splitlines()[0]
    assert header == "instance,trucks,drones,mt-2idx_lb,mt-2idx_ub,mt-2idx_status,mt-2idx_time"


def test_best_known_comparison(rows):
    table = parse_results_table(emit_results_table(rows, best_known={"example8": 17.0}))
    assert list(table["mt-3idx_vs_best"]) == ["equal", "-"]
    assert list(table["mt-2idx_vs_best"]) == ["worse", "-"]
    assert table.loc[0, "mt-3idx_ub"] == "17.00"
    assert table.loc[1, "mt-3idx_lb"] == "-"


def test_compare_to_best_directions():
    result = ModelResult("mc-3idx", SolveStatus.FEASIBLE, 0, 1049, 10.0)
    assert compare_to_best(result, 10.5) == "better"
    assert compare_to_best(result, "10.49") == "equal"
    assert compare_to_best(result, 10) == "worse"
    assert compare_to_best(result, None) == "-"


def test_model_result_dict_round_trip():
    result = ModelResult(
        "mt-2idx", SolveStatus.FEASIBLE, 1500, 1800, 60.0,
        elapsed=12.3456, nodes=42,
        trace=((0.5, None, 1800), (1.25, 1500, 1800)),
        solution=Solution.from_routes([[2, 3], [6, 7]], [[1, 8], [4, 5]]),
    )
    restored = ModelResult.from_dict(result.to_dict())
    assert restored == result
    assert restored.elapsed == pytest.approx(12.346)


def test_outcome_file_round_trip(tmp_path, tiny_min_time):
    outcome = solve(build_model("mt-3idx", tiny_min_time), tiny_min_time, EXHAUSTIVE_CONFIG)
    row = ResultRow(tiny_min_time.name, 1, 1, [ModelResult.from_outcome(outcome)])
    path = outcome_path(tmp_path / "out", tiny_min_time.name)
    write_outcome(path, row)
    assert path.name == "tiny_mt.outcome.yaml"
    restored = read_outcome(path)
    assert restored.instance == "tiny_mt"
    assert restored.results[0].status is SolveStatus.OPTIMAL
    assert restored.results[0].upper_bound == 6
    assert restored.results[0].solution == outcome.incumbent
    assert [p.name for p in path.parent.iterdir()] == [path.name]


@pytest.mark.parametrize("content", [
    "instance: [unclosed\n",
    "- just\n- a list\n",
    "instance: x\ntrucks: 1\n",
    "instance: x\ntrucks: 1\ndrones: 1\nresults:\n  - model: mt-3idx\n    status: Maybe\n",
])
def test_invalid_outcome_files(tmp_path, content):
    path = tmp_path / "bad.outcome.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ParseError):
        read_outcome(path)
