"""
Tests for the native instance document and the solution document.
"""

import numpy as np
import pytest

from core.errors import ParseError
from core.instance import Instance
from core.solution import Solution
from instance_io.native_format import parse_native, read_instance, serialize_native, write_instance
from instance_io.solution_format import parse_solution, serialize_solution


@pytest.fixture
def example8_text(data_dir):
    return (data_dir / "instances" / "example8.txt").read_text(encoding="utf-8")


@pytest.fixture
def example8_solution_text(data_dir):
    return (data_dir / "solutions" / "example8.sol").read_text(encoding="utf-8")


def replace_line(text: str, number: int, content: str) -> str:
    lines = text.splitlines()
    lines[number - 1] = content
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Instance documents
# ----------------------------------------------------------------------

def test_example8_fields(example8):
    assert example8.name == "example8"
    assert example8.n == 8
    assert (example8.truck_count, example8.drone_count) == (2, 2)
    assert example8.drone_eligible == (1, 4, 5, 8)
    assert example8.drone_time == (800, 600, 700, 900)
    assert example8.truck_time[0][2] == 500
    assert example8.is_symmetric()
    assert dict(example8.provenance)["source"].startswith("illustrative")


def test_canonical_document_is_reproduced_byte_for_byte(example8_text):
    assert serialize_native(parse_native(example8_text)) == example8_text


def test_min_cost_document_round_trip(tiny_min_cost, tmp_path):
    path = tmp_path / "tiny_mc.txt"
    write_instance(path, tiny_min_cost)
    assert read_instance(path) == tiny_min_cost
    text = path.read_text(encoding="utf-8")
    assert "WEIGHT 4 3\n" in text
    assert "CAPACITY 10\n" in text


def test_comments_and_blank_lines_are_ignored(example8_text, example8):
    commented = "# generated by hand\n\n" + example8_text.replace("TRUCK_TIME\n", "TRUCK_TIME\n# matrix\n\n")
    assert parse_native(commented) == example8


@pytest.mark.parametrize("line,content,location", [
    (1, "DRONESCHED-INSTANCE 2", "[line 1, field version]"),
    (1, "INSTANCE 1", "[line 1, field header]"),
    (5, "NODES nine", "[line 5, field NODES]"),
    (8, "ELIGIBLE 1 4 5 -8", "[line 8, field ELIGIBLE]"),
    (11, "400 0 300 700", "[line 11, field TRUCK_TIME]"),
    (19, "DRONE_TIME 800 600 700", "field DRONE_TIME]"),
    (19, "SPEED 2", "[line 19, field SPEED]"),
    (10, "5 400 500 600 300 350 500 550 450", "field instance]"),
])
def test_malformed_documents_point_at_the_problem(example8_text, line, content, location):
    with pytest.raises(ParseError) as info:
        parse_native(replace_line(example8_text, line, content))
    assert location in str(info.value)


def test_missing_end_is_rejected(example8_text):
    with pytest.raises(ParseError, match="unexpected end"):
        parse_native(example8_text.replace("END\n", ""))


def test_min_cost_fields_on_a_min_time_instance(example8_text):
    with pytest.raises(ParseError, match="only allowed for MIN_COST"):
        parse_native(example8_text.replace("PROVENANCE\n", "CAPACITY 10\nPROVENANCE\n"))


def test_duplicate_keyword(example8_text):
    with pytest.raises(ParseError, match="given twice"):
        parse_native(example8_text.replace("TRUCKS 2\n", "TRUCKS 2\nTRUCKS 3\n"))


def test_missing_required_field(example8_text):
    with pytest.raises(ParseError, match="DRONES"):
        parse_native(example8_text.replace("DRONES 2\n", ""))


def _mutate(text: str, rng: np.random.Generator) -> str:
    lines = text.splitlines()
    if not lines:
        return text
    op = int(rng.integers(0, 5))
    k = int(rng.integers(0, len(lines)))
    if op == 0:
        del lines[k]
    elif op == 1:
        lines.insert(k, lines[k])
    elif op == 2 and k + 1 < len(lines):
        lines[k], lines[k + 1] = lines[k + 1], lines[k]
    elif op == 3:
        tokens = lines[k].split() or [""]
        tokens[int(rng.integers(0, len(tokens)))] = str(rng.choice(["x", "-1", "0", "", "99", "1.5"]))
        lines[k] = " ".join(tokens)
    else:
        return text[: int(rng.integers(0, len(text)))]
    return "\n".join(lines) + "\n"


def test_mutated_documents_only_raise_parse_errors(example8_text):
    rng = np.random.default_rng(2024)
    parsed = 0
    for _ in range(300):
        document = example8_text
        for _ in range(int(rng.integers(1, 4))):
            document = _mutate(document, rng)
        try:
            result = parse_native(document)
        except ParseError:
            continue
        assert isinstance(result, Instance)
        parsed += 1
    assert parsed < 300


# ----------------------------------------------------------------------
# Solution documents
# ----------------------------------------------------------------------

def test_solution_document_round_trip(example8_solution_text, example8_solution):
    assert example8_solution.truck_tours == ((0, 2, 3, 0), (0, 6, 7, 0))
    assert serialize_solution(example8_solution) == example8_solution_text


def test_idle_vehicles_are_empty_lines():
    solution = Solution(((), (0, 1, 0)), ((),))
    text = serialize_solution(solution)
    assert "TRUCK\n" in text
    assert "DRONE\n" in text
    assert parse_solution(text) == solution


@pytest.mark.parametrize("text,match", [
    ("", "empty"),
    ("DRONESCHED-SOLUTION 1\nTRUCK 0 1 0\n", "truncated"),
    ("DRONESCHED-SOLUTION 1\nTRUCK 0 a 0\nEND\n", "non-integer"),
    ("DRONESCHED-SOLUTION 1\nTRUCK 0 -1 0\nEND\n", "negative"),
    ("DRONESCHED-SOLUTION 1\nDRONE 1\nTRUCK 0 2 0\nEND\n", "precede"),
    ("DRONESCHED-SOLUTION 1\nEND\nTRUCK 0 1 0\n", "after END"),
    ("DRONESCHED-SOLUTION 1\nBOAT 1\nEND\n", "unknown keyword"),
    ("SOLUTION 1\nEND\n", "must start"),
])
def test_malformed_solution_documents(text, match):
    with pytest.raises(ParseError, match=match):
        parse_solution(text)
