"""Reading and writing input documents.

A document is a JSON object::

    {"schema": 1,
     "type_spaces": {"T1": {"m": 3, "rows": [[0, 2, 3], ["1/2", "4.3", 0]]}},
     "outcome_functions": {"g": {"m": 3, "shape": [2, 2], "values": [2, 1, 1, 3]}}}

Numbers may be integers, decimal strings or ``"p/q"`` strings. Bare JSON
decimals are read exactly as well, but output always uses strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from .errors import InputError, TropmechError
from .mechanism import OutcomeFunction, TypeSpace
from .rational import format_rat, to_rat

SCHEMA = 1


@dataclass
class InputDocument:
    type_spaces: Dict[str, TypeSpace] = field(default_factory=dict)
    outcome_functions: Dict[str, OutcomeFunction] = field(default_factory=dict)

    def space(self, name: str) -> TypeSpace:
        try:
            return self.type_spaces[name]
        except KeyError:
            raise InputError(f"type_spaces.{name}: no such type space "
                             f"(have {sorted(self.type_spaces)})") from None

    def outcome(self, name: str) -> OutcomeFunction:
        try:
            return self.outcome_functions[name]
        except KeyError:
            raise InputError(f"outcome_functions.{name}: no such outcome function "
                             f"(have {sorted(self.outcome_functions)})") from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _number(value: Any, where: str) -> Fraction:
    try:
        return to_rat(value)
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected an integer or a rational string, got {value!r}") from None


def _object(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return value


def _space(name: str, data: Any) -> TypeSpace:
    where = f"type_spaces.{name}"
    data = _object(data, where)
    if "rows" not in data:
        raise InputError(f"{where}.rows: missing")
    rows = _list(data["rows"], f"{where}.rows")
    if not rows:
        raise InputError(f"{where}.rows: at least one type is required")
    matrix = []
    for i, row in enumerate(rows):
        row = _list(row, f"{where}.rows[{i}]")
        matrix.append([_number(v, f"{where}.rows[{i}][{j}]") for j, v in enumerate(row)])
    width = len(matrix[0])
    if "m" in data:
        width = _int(data["m"], f"{where}.m")
    for i, row in enumerate(matrix):
        if len(row) != width or width < 1:
            raise InputError(f"{where}.rows[{i}]: has {len(row)} entries, expected m={width}")
    return TypeSpace(matrix, label=name)


def _outcome(name: str, data: Any) -> OutcomeFunction:
    where = f"outcome_functions.{name}"
    data = _object(data, where)
    for key in ("m", "shape", "values"):
        if key not in data:
            raise InputError(f"{where}.{key}: missing")
    m = _int(data["m"], f"{where}.m")
    shape = [_int(s, f"{where}.shape[{i}]") for i, s in enumerate(_list(data["shape"], f"{where}.shape"))]
    values = [_int(v, f"{where}.values[{i}]") for i, v in enumerate(_list(data["values"], f"{where}.values"))]
    for i, v in enumerate(values):
        if not 1 <= v <= m:
            raise InputError(f"{where}.values[{i}]: outcome {v} outside 1..{m}")
    try:
        return OutcomeFunction(tuple(shape), tuple(values), m)
    except TropmechError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_document(data: Union[str, bytes, dict]) -> InputDocument:
    """Build an :class:`InputDocument` from JSON text or an already decoded object."""
    if not isinstance(data, dict):
        try:
            # keep bare decimals exact
            data = json.loads(data, parse_float=str)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    data = _object(data, "document")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InputError(f"schema: unsupported version {schema!r}, expected {SCHEMA}")
    doc = InputDocument()
    for name, spec in _object(data.get("type_spaces", {}), "type_spaces").items():
        doc.type_spaces[name] = _space(name, spec)
    for name, spec in _object(data.get("outcome_functions", {}), "outcome_functions").items():
        doc.outcome_functions[name] = _outcome(name, spec)
    return doc


def load_document(path: Union[str, Path]) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def space_to_json(space: TypeSpace) -> dict:
    return {"m": space.m, "rows": [[format_rat(v) for v in row] for row in space.matrix]}


def outcome_to_json(g: OutcomeFunction) -> dict:
    return {"m": g.m, "shape": list(g.shape), "values": list(g.values)}


def document_to_json(doc: InputDocument) -> dict:
    return {
        "schema": SCHEMA,
        "type_spaces": {k: space_to_json(v) for k, v in doc.type_spaces.items()},
        "outcome_functions": {k: outcome_to_json(v) for k, v in doc.outcome_functions.items()},
    }


def dump_document(doc: InputDocument) -> str:
    """Readable JSON with one type (or the whole value list) per line."""
    data = document_to_json(doc)
    lines = ["{", f'  "schema": {data["schema"]},', '  "type_spaces": {']
    items = list(data["type_spaces"].items())
    for n, (name, space) in enumerate(items):
        rows = ",\n".join("        " + json.dumps(row) for row in space["rows"])
        tail = "," if n < len(items) - 1 else ""
        lines.append(f'    {json.dumps(name)}: {{"m": {space["m"]}, "rows": [\n{rows}\n      ]}}{tail}')
    lines.append("  },")
    lines.append('  "outcome_functions": {')
    items = list(data["outcome_functions"].items())
    for n, (name, g) in enumerate(items):
        tail = "," if n < len(items) - 1 else ""
        lines.append(f'    {json.dumps(name)}: {{"m": {g["m"]}, "shape": {json.dumps(g["shape"])}, '
                     f'"values": {json.dumps(g["values"])}}}{tail}')
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines)
