"""Tests for the JSON documents."""

from fractions import Fraction
import json

import pytest

from reglab.codec import (
    dumps,
    load_options,
    load_partition,
    load_structure,
    parse_eps,
    partition_from_dict,
    partition_to_dict,
    structure_from_dict,
    to_jsonable,
)
from reglab.const import SCHEMA, Family
from reglab.core import Graph, Partition, Threshold, VertexSet
from reglab.exceptions import DomainError, InputError
from reglab.families import blowup, gen_hkn, path_graph


def test_generated_instances_reload_identically(write_doc, u2):
    for inst in (u2, gen_hkn(1, 2), blowup(path_graph(3), 2)):
        text = dumps(inst)
        path = write_doc("inst.json", inst)
        assert dumps(load_structure(path)) == text


def test_dumps_is_canonical(u2):
    data = json.loads(dumps(u2))
    assert data["schema"] == SCHEMA
    assert data["kind"] == "graph"
    assert data["labels"]["b_{1,2}"] == [5]
    assert dumps(u2) == dumps(u2)


def test_bare_graph_loads_as_basic_instance():
    inst = structure_from_dict({"kind": "graph", "n": 3, "edges": [[0, 1]]})
    assert inst.family == Family.BASIC
    assert inst.graph == Graph(3, [(0, 1)])
    assert inst.labels == {}


@pytest.mark.parametrize(
    "data, where",
    [
        ({"kind": "graph", "n": 3}, "edges"),
        ({"kind": "hyper", "n": 3, "edges": []}, "kind"),
        ({"kind": "graph", "n": 3, "edges": [[0, 7]]}, "edges"),
        ({"kind": "graph", "n": 3, "edges": [], "labels": {"a": [9]}}, "edges"),
        ({"schema": "other/2", "kind": "graph", "n": 3, "edges": []}, "schema"),
    ],
)
def test_malformed_structures_name_their_location(data, where):
    with pytest.raises(InputError) as err:
        structure_from_dict(data, "f.json")
    assert err.value.location.startswith("f.json:")
    assert where in err.value.location


def test_partition_documents():
    p = Partition(4, [[0, 1], [2, 3]])
    assert partition_from_dict(partition_to_dict(p), 4) == p
    with pytest.raises(InputError):
        partition_from_dict({"n": 5, "parts": [[0, 1, 2, 3, 4]]}, 4)
    with pytest.raises(InputError):
        partition_from_dict({"parts": [[0, 1], [1, 2, 3]]}, 4)


def test_load_partition_from_file(write_doc):
    path = write_doc("p.json", {"parts": [[0], [1, 2]]})
    assert load_partition(path, 3).sizes == (1, 2)


def test_unreadable_and_invalid_json(tmp_path, write_doc):
    with pytest.raises(InputError) as err:
        load_structure(tmp_path / "missing.json")
    assert "missing.json" in str(err.value)
    path = write_doc("broken.json", "{not json")
    with pytest.raises(InputError) as err:
        load_structure(path)
    assert err.value.location.endswith(":1:2")


def test_to_jsonable_renders_library_values():
    assert to_jsonable(Fraction(1, 4)) == "1/4"
    assert to_jsonable(Fraction(3)) == "3"
    assert to_jsonable(Threshold(Fraction(1, 8), 3)) == "(1/8)^(1/3)"
    assert to_jsonable(VertexSet([2, 0])) == [0, 2]
    assert to_jsonable({(0, 1): True}) == {"0,1": True}
    assert to_jsonable({3, 1}) == [1, 3]
    with pytest.raises(DomainError):
        to_jsonable(0.5)


def test_parse_eps_wants_a_positive_fraction():
    assert parse_eps("1/4") == Fraction(1, 4)
    for text in ("0", "-1/4", "0.25"):
        with pytest.raises(InputError):
            parse_eps(text)


def test_load_options(write_doc):
    path = write_doc("opts.json", '{"schema": "reglab/1", "n_cap": 8}')
    assert load_options(path) == {"n_cap": 8}
    path = write_doc("list.json", "[1, 2]")
    with pytest.raises(InputError):
        load_options(path)
