import json

import pytest
from hypothesis import given

from resonator import catalog, specio
from resonator.errors import SpecError
from resonator.fields import FieldSpec
from resonator.matroid import parallel_connection, uniform
from strategies import small_matroids


@pytest.mark.parametrize("name", sorted(catalog.SPECS))
def test_catalog_round_trip(name):
    text = specio.emit(catalog.SPECS[name])
    assert specio.emit(specio.parse(text)) == text
    assert specio.build(specio.parse(text)) == catalog.get(name)


def test_canonical_ignores_key_order_and_circuit_order():
    a = specio.emit({"kind": "circuits", "n": 3, "circuits": [[3, 2, 1]]})
    b = specio.emit({"circuits": [[1, 2, 3]], "n": 3, "kind": "circuits", "schema": 1})
    assert a == b


def test_defs_and_pc():
    spec = {"kind": "expr", "op": "pc", "args": ["t", "t"], "base1": 3,
            "defs": {"t": {"kind": "uniform", "rank": 2, "n": 3}}}
    m = specio.build(specio.parse(json.dumps(spec)))
    assert m == parallel_connection(uniform(2, 3), uniform(2, 3), 3)


def test_matrix_over_prime_field():
    spec = specio.parse(json.dumps({"kind": "matrix", "field": "F2",
                                    "columns": [[1, 0], [0, 1], [1, 1], [3, 1]]}))
    assert spec["columns"][3] == [1, 1]
    assert specio.spec_field(spec) == FieldSpec.prime(2)
    assert specio.build(spec).parallel_classes()[2] == (3, 4)


@pytest.mark.parametrize("text", [
    "not json",
    '"bare"',
    '{"kind": "tree"}',
    '{"kind": "uniform", "rank": 2}',
    '{"kind": "uniform", "rank": true, "n": 3}',
    '{"kind": "expr", "op": "dual", "args": []}',
    '{"kind": "expr", "op": "spin", "args": []}',
    '{"schema": 2, "kind": "uniform", "rank": 2, "n": 3}',
    '{"kind": "graph", "vertices": 3, "edges": [[1, 2, 3]]}',
    '{"kind": "matrix", "field": "F4", "columns": [[1]]}',
])
def test_malformed_specs(text):
    with pytest.raises(SpecError):
        specio.parse(text)


def test_axiom_violation_is_spec_error():
    spec = specio.parse('{"kind": "circuits", "n": 3, "circuits": [[1, 2], [1, 2, 3]]}')
    with pytest.raises(SpecError):
        specio.build(spec)


def test_unknown_name():
    spec = specio.parse('{"kind": "expr", "op": "dual", "args": ["nope"]}')
    with pytest.raises(SpecError):
        specio.build(spec)


@given(small_matroids)
def test_from_matroid_round_trip(m):
    spec = specio.from_matroid(m)
    assert specio.build(specio.parse(specio.emit(spec))) == m
