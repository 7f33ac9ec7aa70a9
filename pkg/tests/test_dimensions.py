"""Tests for VC and slicewise VC dimension."""

from hypothesis import given, settings
import pytest

from reglab.const import Certificate
from reglab.core import Graph, ThreeGraph
from reglab.dimensions import slice_graph, svc, vc_graph, vc_threegraph
from reglab.exceptions import CapacityError, DomainError
from reglab.families import gen_powerset_graph, otimes, uhat

from .strategies import graphs


def test_vc_of_powerset_graph(u2):
    result = vc_graph(u2.graph, 3)
    assert result.value == 2
    assert not result.at_least
    assert result.certificate.kind == Certificate.GRAPH
    assert result.certificate.verify(u2.graph)


def test_vc_stops_at_k_max():
    result = vc_graph(gen_powerset_graph(3).graph, 2)
    assert result.value == 2
    assert result.at_least


def test_vc_of_edgeless_graph_is_zero():
    result = vc_graph(Graph(4), 3)
    assert result.value == 0
    assert result.certificate.verify(Graph(4))


def test_vc_guards():
    with pytest.raises(CapacityError):
        vc_graph(Graph(3), 5)
    with pytest.raises(DomainError):
        vc_graph(Graph(3), -1)
    with pytest.raises(DomainError):
        vc_graph(ThreeGraph(3), 1)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8))
def test_vc_certificates_always_verify(g):
    result = vc_graph(g, 2)
    assert result.certificate.k == result.value
    assert result.certificate.verify(g)


def test_vc_of_uhat():
    inst = uhat(2)
    result = vc_threegraph(inst.graph, 3)
    assert result.value == 2
    assert result.certificate.verify(inst.graph)
    assert all(isinstance(a, tuple) for a in result.certificate.a_vertices)


def test_slice_graph():
    h = ThreeGraph(4, [(0, 1, 2), (0, 2, 3)])
    s = slice_graph(h, 0)
    assert s.edges == ((1, 2), (2, 3))
    with pytest.raises(DomainError):
        slice_graph(h, 4)


def test_svc_of_apexed_powerset_graph(u2):
    h = otimes(1, u2).graph
    result = svc(h, 3)
    assert result.value == 2
    assert result.certificate.kind == Certificate.SLICEWISE
    assert result.certificate.slice_vertex == 6
    assert result.certificate.verify(h)


def test_svc_of_empty_threegraph():
    result = svc(ThreeGraph(0), 2)
    assert result.value == 0
    assert result.certificate.slice_vertex is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_vc_of_powerset_graph_is_k(k):
    g = gen_powerset_graph(k).graph
    result = vc_graph(g, k + 1)
    assert result.value == k
    assert not result.at_least
    assert result.certificate.verify(g)
