"""Tests for the family generators."""

from hypothesis import given, settings
import networkx as nx
import pytest

from reglab.const import Family, Pattern
from reglab.core import Graph, Partition, ThreeGraph, VertexSet
from reglab.exceptions import CapacityError, DomainError
from reglab.families import (
    bip_double,
    blowup,
    class_partition,
    complete_bipartite,
    gen_comatching,
    gen_halfgraph,
    gen_hkn,
    gen_matching,
    gen_pattern,
    gen_powerset_graph,
    gen_uk_blowup_lb,
    ghat,
    induced_instance,
    is_blowup_of,
    is_irr_member,
    is_uv_copy,
    otimes,
    path_graph,
    random_bipartite,
    random_graph,
    random_tripartite,
    set_label,
    to_networkx,
    trip_triple,
    uhat,
)

from .strategies import graphs, threegraphs


def test_powerset_graph_u2(u2):
    assert u2.n == 6
    assert u2.graph.edge_count == 4
    assert set(u2.labels) == {"a_1", "a_2", "b_{}", "b_{1}", "b_{2}", "b_{1,2}"}
    a1 = u2.labels["a_1"].min()
    assert u2.graph.neighbors(a1) == u2.labels["b_{1}"] | u2.labels["b_{1,2}"]
    assert u2.graph.degree(u2.labels["b_{}"].min()) == 0


def test_powerset_graph_guard():
    with pytest.raises(CapacityError):
        gen_powerset_graph(21)
    with pytest.raises(DomainError):
        gen_powerset_graph(0)


@pytest.mark.parametrize(
    "generator, pattern, edges",
    [(gen_halfgraph, Pattern.HALF, 6), (gen_matching, Pattern.MATCHING, 3), (gen_comatching, Pattern.COMATCHING, 6)],
)
def test_pattern_graphs(generator, pattern, edges):
    inst = generator(3)
    assert inst.graph.edge_count == edges
    a = [inst.labels[f"a_{i}"].min() for i in (1, 2, 3)]
    b = [inst.labels[f"b_{i}"].min() for i in (1, 2, 3)]
    assert is_irr_member(inst.graph, a, b) == pattern
    assert is_uv_copy(inst.graph, pattern, a, b, inst.sides["a-side"], inst.sides["b-side"])


def test_unknown_pattern():
    with pytest.raises(DomainError):
        gen_pattern("zigzag", 2)


def test_is_irr_member_rejects_repeats(h4):
    assert is_irr_member(h4.graph, [0, 0], [4, 5]) == Pattern.NONE
    with pytest.raises(DomainError):
        is_irr_member(h4.graph, [0], [4, 5])


def test_set_label_format():
    assert set_label("b", (2, 1)) == "b_{1,2}"
    assert set_label("W", ()) == "W_{}"


@settings(max_examples=30)
@given(graphs(max_n=6))
def test_bip_double_is_the_tensor_product_with_an_edge(g):
    bip = bip_double(g)
    expected = nx.tensor_product(to_networkx(g), nx.complete_graph(2))
    assert bip.graph.edge_count == 2 * g.edge_count
    assert nx.is_isomorphic(to_networkx(bip.graph), expected)


def test_bip_double_layout():
    g = Graph(3, [(0, 1)])
    bip = bip_double(g)
    assert bip.labels["u_0"] == VertexSet([0])
    assert bip.labels["w_0"] == VertexSet([3])
    assert bip.graph.has_edge(0, 4) and bip.graph.has_edge(1, 3)
    assert bip.sides["u-side"] == VertexSet([0, 1, 2])


@settings(max_examples=30)
@given(threegraphs(max_n=5))
def test_trip_triple_has_six_edges_per_edge(h):
    trip = trip_triple(h)
    assert trip.n == 3 * h.n
    assert trip.graph.edge_count == 6 * h.edge_count
    for x, y, z in trip.graph.edges:
        assert x < h.n <= y < 2 * h.n <= z


def test_otimes_adds_apexes():
    inst = otimes(3, complete_bipartite(2, 2))
    assert inst.n == 7
    assert inst.graph.edge_count == 4 * 3
    assert inst.sides["c-side"] == VertexSet([4, 5, 6])


def test_otimes_needs_a_bipartition():
    with pytest.raises(DomainError):
        otimes(2, gen_hkn(1, 1))


def test_ghat_doubles_one_side():
    inst = ghat(complete_bipartite(1, 2))
    assert inst.n == 5
    assert inst.graph.edge_count == 2
    assert inst.params["K1"] == 2 and inst.params["K2"] == 1
    for a, b, c in inst.graph.edges:
        assert b + 2 == c


def test_uhat():
    inst = uhat(2)
    assert inst.n == 8
    assert inst.graph.edge_count == 4
    assert inst.family == Family.UHAT


def test_blowup_of_path(p3_blowup):
    assert p3_blowup.n == 12
    assert p3_blowup.graph.edge_count == 32
    classes = class_partition(p3_blowup)
    assert classes.sizes == (4, 4, 4)
    assert is_blowup_of(p3_blowup.graph, path_graph(3), classes)
    assert not is_blowup_of(p3_blowup.graph, Graph(3, [(0, 2)]), classes)


def test_blowup_expands_labels(u2):
    big = blowup(u2, 2)
    assert big.labels["a_1"] == VertexSet([0, 1])
    assert len(big.sides["b-side"]) == 8
    assert big.params["base_family"] == Family.POWERSET


def test_blowup_fill_callback():
    big = blowup(Graph(2), [3, 1], simple=False, fill=lambda vertices, classes: True)
    assert big.graph.edge_count == 3


def test_blowup_rejects_bad_sizes():
    with pytest.raises(DomainError):
        blowup(path_graph(3), [1, 2])
    with pytest.raises(DomainError):
        blowup(path_graph(3), 0)


def test_hkn_small():
    inst = gen_hkn(1, 2)
    assert inst.n == 8
    assert inst.graph.edge_count == 8
    assert set(inst.sides) == {"U", "V", "W"}
    assert inst.labels["W_{}"] == VertexSet([4, 5])


def test_uk_blowup_lower_bound_instance():
    gamma, g = gen_uk_blowup_lb(1, 1, 1)
    assert gamma.params["N"] == 2
    assert gamma.n == 6
    assert g.n == 4
    assert g.graph.edge_count == 2
    assert set(g.sides) == {"V", "U"}


def test_induced_instance_drops_empty_labels(u2):
    keep = u2.sides["a-side"] | u2.labels["b_{1}"]
    sub = induced_instance(u2, keep)
    assert sub.n == 3
    assert "b_{2}" not in sub.labels
    assert sub.labels["b_{1}"] == VertexSet([2])


def test_resolve_selectors(u2):
    assert u2.resolve("a-side") == VertexSet([0, 1])
    assert u2.resolve("a_1+b_{1}") == VertexSet([0, 3])
    assert u2.resolve("0,5") == VertexSet([0, 5])
    assert u2.name_of(0) == "a_1"
    with pytest.raises(DomainError):
        u2.resolve("nowhere")
    with pytest.raises(DomainError):
        u2.resolve("9")


def test_random_generators_are_seeded():
    assert random_graph(8, "1/2", seed=3) == random_graph(8, "1/2", seed=3)
    assert random_graph(6, 1).edge_count == 15
    assert random_graph(6, 0).edge_count == 0
    inst = random_bipartite(3, 3, 1)
    assert inst.graph.edge_count == 9
    tri = random_tripartite((2, 2, 2), 1)
    assert isinstance(tri.graph, ThreeGraph)
    assert tri.graph.edge_count == 8


def test_to_networkx_threegraph_is_an_incidence_graph():
    h = ThreeGraph(4, [(0, 1, 2), (1, 2, 3)])
    out = to_networkx(h)
    assert out.number_of_nodes() == 6
    assert out.number_of_edges() == 6


def test_class_partition_needs_classes(u2):
    with pytest.raises(DomainError):
        class_partition(u2)
    assert isinstance(class_partition(blowup(u2, 1)), Partition)
