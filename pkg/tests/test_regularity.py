"""Tests for the regularity and homogeneity checkers."""

from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings, strategies as st
import pytest

from reglab.const import Kind, Mode
from reglab.core import Graph, Partition, ThreeGraph, Threshold, VertexSet, density2, density3
from reglab.exceptions import CapacityError, ContractError, DomainError
from reglab.families import class_partition, complete_bipartite, random_bipartite, random_tripartite
from reglab.regularity import (
    check_hom_pair,
    check_hom_partition,
    check_pair_exact,
    check_partition,
    check_triple_exact,
    exact_work,
    slicing_expectation,
    verify_witness,
    witness_search_heuristic,
)

from .strategies import (
    graph_with_cell,
    graphs,
    sparse_graph_with_cell,
    sparse_threegraph_with_cell,
    threegraph_with_cell,
)


def test_half_graph_pair_is_irregular(h4):
    x, y = h4.sides["a-side"], h4.sides["b-side"]
    verdict = check_pair_exact(h4.graph, x, y, "1/4")
    assert verdict.regular is False
    assert verdict.density == Fraction(5, 8)
    assert verdict.witness.gap == Fraction(5, 8)
    assert verify_witness(h4.graph, (x, y), "1/4", verdict.witness)


def test_first_mode_stops_at_any_gap_above_eps(h4):
    x, y = h4.sides["a-side"], h4.sides["b-side"]
    verdict = check_pair_exact(h4.graph, x, y, "1/4", first=True)
    assert verdict.regular is False
    assert verdict.witness.gap > Fraction(1, 4)
    assert verdict.visited <= check_pair_exact(h4.graph, x, y, "1/4").visited


def test_complete_bipartite_pair_is_regular():
    inst = complete_bipartite(3, 4)
    verdict = check_pair_exact(inst.graph, inst.sides["a-side"], inst.sides["b-side"], "1/8")
    assert verdict.regular is True
    assert verdict.density == 1


def test_large_eps_is_trivially_regular(h4):
    verdict = check_pair_exact(h4.graph, h4.sides["a-side"], h4.sides["b-side"], 1)
    assert verdict.regular is True
    assert verdict.visited == 0


def test_exact_budget_is_enforced(h4):
    x, y = h4.sides["a-side"], h4.sides["b-side"]
    assert exact_work(h4.graph, (x, y), "1/4") == 15
    with pytest.raises(CapacityError):
        check_pair_exact(h4.graph, x, y, "1/4", budget=10)


def test_exact_work_is_zero_for_settled_cells():
    inst = complete_bipartite(2, 2)
    assert exact_work(inst.graph, (inst.sides["a-side"], inst.sides["b-side"]), "1/4") == 0


def test_checks_reject_bad_cells(h4):
    with pytest.raises(DomainError):
        check_pair_exact(h4.graph, VertexSet(), h4.sides["b-side"], "1/4")
    with pytest.raises(DomainError):
        check_pair_exact(h4.graph, VertexSet([0, 9]), h4.sides["b-side"], "1/4")
    with pytest.raises(DomainError):
        check_triple_exact(h4.graph, VertexSet([0]), VertexSet([1]), VertexSet([2]), "1/4")


@settings(max_examples=60, deadline=None)
@given(graph_with_cell(max_n=9), st.sampled_from(("1/8", "1/16")))
def test_sparse_pairs_are_regular_at_the_cube_root(case, eps):
    g, x, y = case
    verdict = check_hom_pair(g, x, y, eps)
    if verdict.density <= Fraction(eps):
        assert check_pair_exact(g, x, y, Threshold.power(eps, 1, 3)).regular is True


@settings(max_examples=40, deadline=None)
@given(threegraph_with_cell(max_n=7))
def test_sparse_triples_are_regular_at_the_fourth_root(case):
    h, x, y, z = case
    if density3(h, x, y, z) <= Fraction(1, 16):
        assert check_triple_exact(h, x, y, z, Threshold.power("1/16", 1, 4)).regular is True


@pytest.mark.slow
@settings(max_examples=200, deadline=None)
@given(sparse_graph_with_cell(max_n=18), st.sampled_from(("1/8", "1/16")))
def test_sparse_random_pairs_are_regular_at_the_cube_root(case, eps):
    g, x, y = case
    if density2(g, x, y) <= Fraction(eps):
        assert check_pair_exact(g, x, y, Threshold.power(eps, 1, 3)).regular is True


@pytest.mark.slow
@settings(max_examples=100, deadline=None)
@given(sparse_threegraph_with_cell(max_n=12))
def test_sparse_random_triples_are_regular_at_the_fourth_root(case):
    h, x, y, z = case
    if density3(h, x, y, z) <= Fraction(1, 16):
        assert check_triple_exact(h, x, y, z, Threshold.power("1/16", 1, 4)).regular is True


@settings(max_examples=40, deadline=None)
@given(graph_with_cell(max_n=8))
def test_exact_witnesses_reverify(case):
    g, x, y = case
    verdict = check_pair_exact(g, x, y, "1/4")
    if verdict.regular is False:
        assert verify_witness(g, (x, y), "1/4", verdict.witness)


@settings(max_examples=40, deadline=None)
@given(graph_with_cell(max_n=8), st.integers(min_value=0, max_value=5))
def test_heuristic_never_certifies_regularity(case, seed):
    g, x, y = case
    verdict = witness_search_heuristic(g, (x, y), "1/4", trials=20, seed=seed)
    assert verdict.regular in (False, None)
    if verdict.regular is False:
        assert verdict.mode == Mode.HEURISTIC
        assert verify_witness(g, (x, y), "1/4", verdict.witness)
        assert check_pair_exact(g, x, y, "1/4").regular is False


def test_heuristic_finds_the_half_graph_witness(h4):
    cell = (h4.sides["a-side"], h4.sides["b-side"])
    verdict = witness_search_heuristic(h4.graph, cell, "1/4", trials=50, seed=0)
    assert verdict.regular is False


def test_heuristic_is_deterministic_for_a_seed(h4):
    cell = (h4.sides["a-side"], h4.sides["b-side"])
    first = witness_search_heuristic(h4.graph, cell, "1/4", trials=10, seed=7)
    second = witness_search_heuristic(h4.graph, cell, "1/4", trials=10, seed=7)
    assert first == second


def test_heuristic_rejects_zero_trials(h4):
    with pytest.raises(DomainError):
        witness_search_heuristic(h4.graph, (h4.sides["a-side"], h4.sides["b-side"]), "1/4", trials=0)


def test_complete_tripartite_triple_is_regular():
    inst = random_tripartite((2, 2, 2), 1)
    sides = [inst.sides[name] for name in ("X1", "X2", "X3")]
    verdict = check_triple_exact(inst.graph, *sides, "1/4")
    assert verdict.regular is True
    assert verdict.density == 1


def test_threegraph_triple_witness():
    h = ThreeGraph(6, [(0, 2, 4)])
    x, y, z = VertexSet([0, 1]), VertexSet([2, 3]), VertexSet([4, 5])
    verdict = check_triple_exact(h, x, y, z, "1/2")
    assert verdict.regular is False
    assert verify_witness(h, (x, y, z), "1/2", verdict.witness)


def test_homogeneity_thresholds(h4):
    verdict = check_hom_pair(h4.graph, h4.sides["a-side"], h4.sides["b-side"], "1/4")
    assert verdict.homogeneous is False
    dense = complete_bipartite(2, 2)
    assert check_hom_pair(dense.graph, dense.sides["a-side"], dense.sides["b-side"], "1/4").ok


def test_class_partition_of_blowup_passes(p3_blowup):
    classes = class_partition(p3_blowup)
    for kind in Kind.ALL:
        verdict = check_partition(p3_blowup.graph, classes, "1/10", kind)
        assert verdict.passed
        assert verdict.covered == verdict.total == 144
        assert verdict.covered_mass == 1
        assert len(verdict.cells) == 9


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=7))
def test_singleton_partition_always_passes(g):
    verdict = check_partition(g, Partition.singletons(g.n), "1/100")
    assert verdict.passed
    assert check_hom_partition(g, Partition.singletons(g.n), "1/100").passed


def test_incomplete_evaluation_stops_early(h4):
    p = Partition(8, [h4.sides["a-side"], h4.sides["b-side"]])
    full = check_partition(h4.graph, p, "1/100", Kind.HOM)
    quick = check_partition(h4.graph, p, "1/100", Kind.HOM, complete=False)
    assert not full.passed and full.complete
    assert not quick.passed and not quick.complete
    assert len(quick.cells) < len(full.cells)
    assert quick.failing_cell == full.failing_cell


def test_partition_kind_and_size_checks(h4):
    with pytest.raises(DomainError):
        check_partition(h4.graph, Partition.trivial(8), "1/4", "sparse")
    with pytest.raises(DomainError):
        check_partition(h4.graph, Partition.trivial(7), "1/4")


def test_memo_is_reused(p3_blowup):
    memo: dict = {}
    classes = class_partition(p3_blowup)
    check_partition(p3_blowup.graph, classes, "1/10", memo=memo)
    size = len(memo)
    check_partition(p3_blowup.graph, classes, "1/10", memo=memo)
    assert len(memo) == size


def test_slicing_keeps_large_sub_pairs_regular():
    inst = complete_bipartite(4, 4)
    x, y = inst.sides["a-side"], inst.sides["b-side"]
    report = slicing_expectation(
        inst.graph, x, y, VertexSet([0, 1]), VertexSet([4, 5]), "1/4", "1/2"
    )
    assert report.eps_sub == 1
    assert report.sub_regular and report.density_within


def test_slicing_checks_gamma():
    inst = complete_bipartite(2, 2)
    x, y = inst.sides["a-side"], inst.sides["b-side"]
    with pytest.raises(ContractError):
        slicing_expectation(inst.graph, x, y, x, y, "1/2", "1/4")
    with pytest.raises(ContractError):
        slicing_expectation(Graph(4), x, y, VertexSet([0]), y, "1/4", "1")


def test_slicing_density_boundary_is_open():
    g = Graph(4, [(0, 2), (1, 3)])
    x, y = VertexSet([0, 1]), VertexSet([2, 3])
    report = slicing_expectation(g, x, y, VertexSet([0]), VertexSet([2]), "1/2", "1/2")
    assert report.density == Fraction(1, 2)
    assert report.sub_density == 1
    assert report.sub_regular is True
    assert report.density_within is False


def _half_regular_pairs(count):
    pairs = []
    for seed in range(2000):
        left, right = 2 + seed % 4, 2 + (seed // 4) % 4
        inst = random_bipartite(left, right, ("1/8", "1/2", "7/8")[seed % 3], seed=seed)
        x, y = inst.sides["a-side"], inst.sides["b-side"]
        if check_pair_exact(inst.graph, x, y, "1/2").regular:
            pairs.append((inst.graph, x, y))
            if len(pairs) == count:
                break
    return pairs


def _large_subsets(side, gamma):
    members = sorted(side)
    for size in range(1, len(members) + 1):
        if size >= gamma * len(members):
            for sub in combinations(members, size):
                yield VertexSet(sub)


@pytest.mark.slow
@pytest.mark.parametrize("gamma", ["1/2", "3/4"])
def test_slicing_holds_on_random_half_regular_pairs(gamma):
    pairs = _half_regular_pairs(50)
    assert len(pairs) == 50
    for g, x, y in pairs:
        for x_sub in _large_subsets(x, Fraction(gamma)):
            for y_sub in _large_subsets(y, Fraction(gamma)):
                report = slicing_expectation(g, x, y, x_sub, y_sub, "1/2", gamma)
                gap = abs(report.sub_density - report.density)
                assert report.sub_regular
                assert gap <= Fraction(1, 2)
                assert report.density_within == (gap < Fraction(1, 2))
