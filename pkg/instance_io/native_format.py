"""
Native instance document (version 1).

A line-oriented text format with explicit matrices, so that every run is
independent of how an instance was derived. Canonical layout:

    DRONESCHED-INSTANCE 1
    NAME <text>
    VARIANT MIN_TIME | MIN_COST
    SCALE <int>
    NODES <n+1>
    TRUCKS <int>
    DRONES <int>
    ELIGIBLE <ids...>
    TRUCK_TIME
    <n+1 rows of n+1 ints>
    DRONE_TIME <one value per eligible id>
    # MIN_COST only:
    TRUCK_COST
    <n+1 rows>
    DRONE_COST <values>
    WEIGHT <n values, customers 1..n>
    CAPACITY <int>
    TRUCK_TIME_LIMIT <int>
    DRONE_TIME_LIMIT <int>
    # optional:
    PROVENANCE
    <key> = <value>
    END

Blank lines and lines starting with '#' are ignored. All values are
integers already multiplied by SCALE.

Usage:
    from instance_io.native_format import parse_native, serialize_native

    instance = parse_native(Path("data/instances/example8.txt").read_text())
    text = serialize_native(instance)
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from core.errors import InstanceError, ParseError
from core.instance import Instance, Variant

HEADER = "DRONESCHED-INSTANCE"
VERSION = 1

_SCALARS = ("SCALE", "NODES", "TRUCKS", "DRONES", "CAPACITY", "TRUCK_TIME_LIMIT", "DRONE_TIME_LIMIT")
_LISTS = ("ELIGIBLE", "DRONE_TIME", "DRONE_COST", "WEIGHT")
_MATRICES = ("TRUCK_TIME", "TRUCK_COST")
_TEXT = ("NAME", "VARIANT")
_MIN_COST_FIELDS = ("TRUCK_COST", "DRONE_COST", "WEIGHT", "CAPACITY", "TRUCK_TIME_LIMIT", "DRONE_TIME_LIMIT")


class _Reader:
    """Content lines (comments and blanks skipped) with their 1-based line numbers."""

    def __init__(self, text: str):
        self.lines: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                self.lines.append((number, stripped))
        self.pos = 0

    def next(self, expected: str) -> Tuple[int, str]:
        if self.pos >= len(self.lines):
            last = self.lines[-1][0] if self.lines else None
            raise ParseError(f"unexpected end of document, expected {expected}", line=last, field=expected)
        item = self.lines[self.pos]
        self.pos += 1
        return item


def _int(token: str, line: int, field: str, allow_negative: bool = False) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"'{token}' is not an integer", line=line, field=field) from None
    if value < 0 and not allow_negative:
        raise ParseError(f"negative value {value}", line=line, field=field)
    return value


def _ints(tokens: List[str], line: int, field: str) -> List[int]:
    return [_int(t, line, field) for t in tokens]


def parse_native(text: str) -> Instance:
    """
    Parse a native instance document.

    Raises:
        ParseError: malformed document; the message carries line and/or field.
    """
    reader = _Reader(text)
    line, header = reader.next(HEADER)
    parts = header.split()
    if len(parts) != 2 or parts[0] != HEADER:
        raise ParseError(f"document must start with '{HEADER} {VERSION}'", line=line, field="header")
    version = _int(parts[1], line, "version")
    if version != VERSION:
        raise ParseError(f"unsupported format version {version}", line=line, field="version")

    values: Dict[str, object] = {}
    where: Dict[str, int] = {}
    provenance: List[Tuple[str, str]] = []
    end_line: Optional[int] = None

    while True:
        line, content = reader.next("END")
        keyword, _, rest = content.partition(" ")
        rest = rest.strip()
        if keyword == "END":
            end_line = line
            if rest:
                raise ParseError("END takes no arguments", line=line, field="END")
            if reader.pos < len(reader.lines):
                raise ParseError("content after END", line=reader.lines[reader.pos][0], field="END")
            break
        if keyword in values or (keyword == "PROVENANCE" and "PROVENANCE" in where):
            raise ParseError(f"{keyword} given twice", line=line, field=keyword)
        where[keyword] = line

        if keyword in _TEXT:
            if not rest:
                raise ParseError(f"{keyword} needs a value", line=line, field=keyword)
            values[keyword] = rest
        elif keyword in _SCALARS:
            tokens = rest.split()
            if len(tokens) != 1:
                raise ParseError(f"{keyword} takes exactly one integer", line=line, field=keyword)
            values[keyword] = _int(tokens[0], line, keyword)
        elif keyword in _LISTS:
            values[keyword] = _ints(rest.split(), line, keyword)
        elif keyword in _MATRICES:
            if rest:
                raise ParseError(f"{keyword} rows start on the next line", line=line, field=keyword)
            if "NODES" not in values:
                raise ParseError(f"NODES must precede {keyword}", line=line, field=keyword)
            size = values["NODES"]
            rows = []
            for _ in range(size):
                row_line, row_text = reader.next(keyword)
                row = _ints(row_text.split(), row_line, keyword)
                if len(row) != size:
                    raise ParseError(
                        f"row has {len(row)} entries, expected {size}", line=row_line, field=keyword
                    )
                rows.append(row)
            values[keyword] = rows
        elif keyword == "PROVENANCE":
            while reader.pos < len(reader.lines) and "=" in reader.lines[reader.pos][1]:
                _, entry = reader.next("PROVENANCE")
                key, _, value = entry.partition("=")
                provenance.append((key.strip(), value.strip()))
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line=line, field=keyword)

    return _build(values, where, provenance, end_line)


def _require(values: Dict[str, object], field: str):
    if field not in values:
        raise ParseError(f"required field {field} is missing", field=field)
    return values[field]


def _build(values, where, provenance, end_line) -> Instance:
    variant_text = _require(values, "VARIANT")
    try:
        variant = Variant(variant_text)
    except ValueError:
        raise ParseError(f"unknown variant '{variant_text}'", line=where["VARIANT"], field="VARIANT") from None

    size = _require(values, "NODES")
    if size < 2:
        raise ParseError("NODES must count the depot and at least one customer", line=where["NODES"], field="NODES")
    eligible = values.get("ELIGIBLE", [])
    drone_time = values.get("DRONE_TIME", [])
    if len(drone_time) != len(eligible):
        raise ParseError(
            f"DRONE_TIME has {len(drone_time)} values for {len(eligible)} eligible customers",
            line=where.get("DRONE_TIME", end_line), field="DRONE_TIME",
        )

    kwargs = dict(
        name=_require(values, "NAME"),
        variant=variant,
        scale=values.get("SCALE", 100),
        truck_count=_require(values, "TRUCKS"),
        drone_count=_require(values, "DRONES"),
        truck_time=_require(values, "TRUCK_TIME"),
        drone_eligible=tuple(eligible),
        drone_time=tuple(drone_time),
        provenance=tuple(provenance),
    )

    if variant is Variant.MIN_COST:
        for field in _MIN_COST_FIELDS:
            _require(values, field)
        weights = values["WEIGHT"]
        if len(weights) != size - 1:
            raise ParseError(
                f"WEIGHT has {len(weights)} values for {size - 1} customers", line=where["WEIGHT"], field="WEIGHT"
            )
        if len(values["DRONE_COST"]) != len(eligible):
            raise ParseError(
                f"DRONE_COST has {len(values['DRONE_COST'])} values for {len(eligible)} eligible customers",
                line=where["DRONE_COST"], field="DRONE_COST",
            )
        kwargs.update(
            truck_cost=values["TRUCK_COST"],
            drone_cost=tuple(values["DRONE_COST"]),
            weight=(0, *weights),
            truck_capacity=values["CAPACITY"],
            truck_time_limit=values["TRUCK_TIME_LIMIT"],
            drone_time_limit=values["DRONE_TIME_LIMIT"],
        )
    else:
        extra = [f for f in _MIN_COST_FIELDS if f in values]
        if extra:
            raise ParseError(f"{extra[0]} is only allowed for MIN_COST", line=where[extra[0]], field=extra[0])

    try:
        return Instance(**kwargs)
    except InstanceError as e:
        raise ParseError(str(e), line=end_line, field="instance") from e


def _row(values) -> str:
    return " ".join(str(v) for v in values)


def _keyed(keyword: str, values) -> str:
    return f"{keyword} {_row(values)}".rstrip()


def serialize_native(instance: Instance) -> str:
    """Canonical document text (parse_native(serialize_native(x)) == x)."""
    lines = [
        f"{HEADER} {VERSION}",
        f"NAME {instance.name}",
        f"VARIANT {instance.variant.value}",
        f"SCALE {instance.scale}",
        f"NODES {instance.node_count}",
        f"TRUCKS {instance.truck_count}",
        f"DRONES {instance.drone_count}",
        _keyed("ELIGIBLE", instance.drone_eligible),
        "TRUCK_TIME",
        *(_row(r) for r in instance.truck_time),
        _keyed("DRONE_TIME", instance.drone_time),
    ]
    if instance.is_min_cost:
        lines += [
            "TRUCK_COST",
            *(_row(r) for r in instance.truck_cost),
            _keyed("DRONE_COST", instance.drone_cost),
            _keyed("WEIGHT", instance.weight[1:]),
            f"CAPACITY {instance.truck_capacity}",
            f"TRUCK_TIME_LIMIT {instance.truck_time_limit}",
            f"DRONE_TIME_LIMIT {instance.drone_time_limit}",
        ]
    if instance.provenance:
        lines.append("PROVENANCE")
        lines += [f"{key} = {value}" for key, value in instance.provenance]
    lines.append("END")
    return "\n".join(lines) + "\n"


def read_instance(path: Union[str, Path]) -> Instance:
    return parse_native(Path(path).read_text(encoding="utf-8"))


def write_instance(path: Union[str, Path], instance: Instance) -> None:
    Path(path).write_text(serialize_native(instance), encoding="utf-8")
