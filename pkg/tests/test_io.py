import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from tropmech.errors import InputError
from tropmech.instances import ALL, ARRANGEMENT
from tropmech.io import (InputDocument, document_to_json, dump_document, load_document,
                         parse_document)
from tropmech.mechanism import OutcomeFunction, TypeSpace

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.parametrize("inst", ALL, ids=lambda i: i.name)
def test_data_files_match_builtin_instances(inst):
    doc = load_document(DATA / f"{inst.name}.json")
    assert doc.type_spaces == {k: TypeSpace(v.matrix, k) for k, v in inst.spaces.items()}
    assert doc.outcome_functions == inst.outcomes


def test_decimal_strings_are_exact():
    doc = load_document(DATA / "example.json")
    assert doc.space("S2").matrix[0][2] == Fraction(43, 10)
    doc = parse_document('{"type_spaces": {"A": {"m": 2, "rows": [[0.1, "2/3"]]}}}')
    assert doc.space("A").matrix[0] == (Fraction(1, 10), Fraction(2, 3))


@pytest.mark.parametrize("text, field", [
    ('{"schema": 2}', "schema"),
    ('{"type_spaces": {"A": {"m": 2, "rows": [[0, 1, 2]]}}}', "type_spaces.A.rows[0]"),
    ('{"type_spaces": {"A": {"rows": [[0, "x"]]}}}', "type_spaces.A.rows[0][1]"),
    ('{"outcome_functions": {"g": {"m": 2, "shape": [2], "values": [1, 0]}}}',
     "outcome_functions.g.values[1]"),
    ('{"outcome_functions": {"g": {"m": 2, "shape": [3], "values": [1, 2]}}}', "outcome_functions.g"),
    ('{"outcome_functions": {"g": {"m": 2, "values": [1]}}}', "outcome_functions.g.shape"),
    ("[1, 2", "invalid JSON"),
])
def test_errors_name_the_field(text, field):
    with pytest.raises(InputError, match=field.replace("[", r"\[").replace("]", r"\]")):
        parse_document(text)


def test_missing_names():
    doc = InputDocument()
    with pytest.raises(InputError, match="type_spaces.T9"):
        doc.space("T9")
    with pytest.raises(InputError, match="outcome_functions.h"):
        doc.outcome("h")


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
spaces = st.tuples(st.integers(1, 3), st.integers(1, 4)).flatmap(
    lambda rm: st.lists(st.lists(rationals, min_size=rm[1], max_size=rm[1]),
                        min_size=rm[0], max_size=rm[0]))
outcomes = st.tuples(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 4)).flatmap(
    lambda sm: st.lists(st.integers(1, sm[1]), min_size=_prod(sm[0]), max_size=_prod(sm[0])).map(
        lambda vals: OutcomeFunction(tuple(sm[0]), tuple(vals), sm[1])))


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


@given(st.dictionaries(st.text("ABST123", min_size=1, max_size=3), spaces, max_size=3),
       st.dictionaries(st.text("gh12", min_size=1, max_size=3), outcomes, max_size=3))
def test_round_trip(space_data, outcome_data):
    doc = InputDocument({k: TypeSpace(v, k) for k, v in space_data.items()}, dict(outcome_data))
    text = dump_document(doc)
    again = parse_document(text)
    assert again == doc
    assert parse_document(json.dumps(document_to_json(again))) == doc
