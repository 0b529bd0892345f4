"""
Solution document (version 1):

    DRONESCHED-SOLUTION 1
    TRUCK 0 2 3 0
    TRUCK
    DRONE 1 8
    END

One TRUCK line per truck (empty for an idle truck) followed by one DRONE
line per drone, then END. A document without END is rejected as truncated.
"""

from pathlib import Path
from typing import List, Union

from core.errors import ParseError
from core.solution import Solution

HEADER = "DRONESCHED-SOLUTION"
VERSION = 1


def parse_solution(text: str) -> Solution:
    """
    Parse a solution document.

    Raises:
        ParseError: malformed or truncated document.
    """
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty solution document", field="header")
    number, header = lines[0]
    if header.split() != [HEADER, str(VERSION)]:
        raise ParseError(f"document must start with '{HEADER} {VERSION}'", line=number, field="header")

    tours: List[List[int]] = []
    missions: List[List[int]] = []
    for number, content in lines[1:]:
        keyword, *tokens = content.split()
        if keyword == "END":
            if number != lines[-1][0]:
                raise ParseError("content after END", line=number, field="END")
            return Solution.from_lists(tours, missions)
        try:
            nodes = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer node id in '{content}'", line=number, field=keyword) from None
        if any(v < 0 for v in nodes):
            raise ParseError("negative node id", line=number, field=keyword)
        if keyword == "TRUCK":
            if missions:
                raise ParseError("TRUCK lines must precede DRONE lines", line=number, field="TRUCK")
            tours.append(nodes)
        elif keyword == "DRONE":
            missions.append(nodes)
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line=number, field=keyword)
    raise ParseError("missing END (truncated document)", line=lines[-1][0], field="END")


def serialize_solution(solution: Solution) -> str:
    lines = [f"{HEADER} {VERSION}"]
    lines += [f"TRUCK {' '.join(map(str, t))}".rstrip() for t in solution.truck_tours]
    lines += [f"DRONE {' '.join(map(str, m))}".rstrip() for m in solution.drone_missions]
    lines.append("END")
    return "\n".join(lines) + "\n"


def read_solution(path: Union[str, Path]) -> Solution:
    return parse_solution(Path(path).read_text(encoding="utf-8"))


def write_solution(path: Union[str, Path], solution: Solution) -> None:
    Path(path).write_text(serialize_solution(solution), encoding="utf-8")
