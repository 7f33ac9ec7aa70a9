"""Tests for the partition transfers and their theorem checkers."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from reglab.const import Kind, TransferKind
from reglab.core import Graph, Partition, ThreeGraph, VertexSet
from reglab.exceptions import CapacityError, ContractError, DomainError
from reglab.experiments import base_instance
from reglab.families import (
    blowup,
    class_partition,
    complete_bipartite,
    gen_halfgraph,
    gen_hkn,
    ghat,
    otimes,
    random_bipartite,
    random_threegraph,
    random_tripartite,
)
from reglab.reduction import twin_classes
from reglab.regularity import check_partition, check_triple_exact
from reglab.transforms import (
    Transfer,
    bip_transfer,
    blowup_hom_project,
    check_blowup_reg_is_hom,
    exp_class_partition,
    otimes_project,
    run_transfer,
    tech_triple_classify,
    trip_transfer,
)

from .strategies import tripartite_with_triple


@pytest.fixture
def ghat_blowup():
    """Simple 2-blow-up of G-hat for a single edge."""
    return blowup(ghat(complete_bipartite(1, 1)), 2)


def test_bip_transfer_splits_blowup_classes(p3_blowup):
    report = bip_transfer(p3_blowup.graph, class_partition(p3_blowup), "1/3")
    assert report.kind == TransferKind.BIP
    assert report.branch == "split"
    assert report.target.n == 24
    assert report.actual_parts == 6
    assert report.claimed_bound == 7
    assert report.input_verified is True
    assert report.verified is True
    assert not report.capacity_exceeded


def test_bip_transfer_sparse_branch(p3_blowup):
    report = bip_transfer(
        p3_blowup.graph, class_partition(p3_blowup), "1/2", z2=VertexSet([0])
    )
    assert report.branch == "sparse"
    assert report.target.n == 13
    assert report.actual_parts == 1
    assert report.verified is True


def test_bip_transfer_reports_a_failing_input():
    h4 = gen_halfgraph(4)
    report = bip_transfer(h4.graph, Partition.trivial(8), "1/3")
    assert report.input_verified is False
    assert any("input partition fails" in note for note in report.notes)


def test_input_check_can_be_skipped(p3_blowup):
    report = bip_transfer(
        p3_blowup.graph, class_partition(p3_blowup), "1/3", check_input=False
    )
    assert report.input_verified is None
    assert report.verified is True


def test_bip_transfer_needs_a_graph():
    with pytest.raises(DomainError):
        bip_transfer(ThreeGraph(3, [(0, 1, 2)]), Partition.trivial(3), "1/4")


def test_trip_transfer_splits_blowup_classes():
    h_inst = blowup(ThreeGraph(3, [(0, 1, 2)]), 2)
    report = trip_transfer(h_inst, class_partition(h_inst), "1/3")
    assert report.branch == "split"
    assert report.target.n == 18
    assert report.actual_parts == 9
    assert report.claimed_bound == 11
    assert report.input_verified is True
    assert report.verified is True


def test_otimes_projection_split_branch():
    inst = complete_bipartite(2, 2)
    p = Partition(6, [[0, 1], [2, 3], [4, 5]])
    report = otimes_project(inst, p, "1/10")
    assert report.branch == "split"
    assert report.target.n == 4
    assert report.output_partition.as_lists() == [[0, 1], [2, 3]]
    assert report.claimed_bound == 8
    assert report.input_verified is True
    assert report.verified is True


def test_otimes_projection_sparse_branch_and_large_eps_note():
    inst = complete_bipartite(2, 2)
    p = Partition(6, [[0, 1], [2, 3], [4, 5]])
    assert otimes_project(inst, p, "1/4").branch == "sparse"
    report = otimes_project(inst, p, "1/2")
    assert report.actual_parts == 1
    assert any(">= 1/3" in note for note in report.notes)


def test_otimes_projection_needs_an_instance():
    with pytest.raises(DomainError):
        otimes_project(Graph(4, [(0, 2)]), Partition.trivial(6), "1/4")


def test_partition_must_cover_the_input_host():
    inst = complete_bipartite(2, 2)
    with pytest.raises(DomainError):
        otimes_project(inst, Partition.trivial(4), "1/4")


def test_blowup_hom_restricts_to_the_bipartite_graph(ghat_blowup):
    report = blowup_hom_project(ghat_blowup, class_partition(ghat_blowup), "1/4")
    assert report.branch == "restrict"
    assert report.target.n == 4
    assert report.target.edge_count == 4
    assert report.output_partition.as_lists() == [[0, 1], [2, 3]]
    assert report.claimed_bound == 3
    assert report.output_contract.kind == Kind.HOM
    assert report.input_verified is True
    assert report.verified is True


def test_blowup_hom_refuses_large_eps_unless_forced():
    big = blowup(ghat(complete_bipartite(2, 2)), 1)
    p = class_partition(big)
    with pytest.raises(ContractError):
        blowup_hom_project(big, p, "1/2")
    report = blowup_hom_project(big, p, "1/2", force=True)
    assert any("forced" in note for note in report.notes)
    assert report.target.n == 4
    assert report.verified is True


def test_blowup_hom_needs_a_simple_blowup():
    with pytest.raises(DomainError):
        blowup_hom_project(ghat(complete_bipartite(1, 1)), Partition.trivial(3), "1/4")


def test_exp_class_partition_of_hkn():
    report = exp_class_partition(gen_hkn(1, 2), "1/5")
    assert report.branch == "classes"
    assert report.actual_parts == 4
    assert report.claimed_bound == 32
    assert report.input_partition is None
    assert report.input_verified is None
    assert report.verified is True
    assert "strict eps-homogeneity holds" in report.notes


@pytest.mark.parametrize("k, n", [(2, 3), (1, 4)])
def test_exp_class_sparse_branch(k, n):
    report = exp_class_partition(gen_hkn(k, n), "1/3")
    assert report.branch == "sparse"
    assert report.actual_parts == 1


def test_exp_class_refuses_eps_below_the_floor():
    with pytest.raises(CapacityError):
        exp_class_partition(gen_hkn(1, 2), "1/16")


def test_run_transfer_dispatch(p3_blowup):
    report = run_transfer(TransferKind.BIP, p3_blowup.graph, class_partition(p3_blowup), "1/3")
    assert report.kind == TransferKind.BIP
    with pytest.raises(DomainError):
        run_transfer("fold", p3_blowup.graph, None, "1/3")
    with pytest.raises(DomainError):
        run_transfer(TransferKind.BIP, p3_blowup.graph, class_partition(p3_blowup), 0)


def test_base_transfer_hooks_must_be_overridden():
    with pytest.raises(NotImplementedError):
        Transfer()(Graph(2), None, "1/4")


def test_triple_classification_of_a_complete_tripartite_graph():
    inst = random_tripartite((2, 2, 2), 1)
    outcome = tech_triple_classify(inst, *inst.sides.values(), "1/4")
    assert outcome.density == 1
    assert not outcome.sparse
    assert outcome.alignment == (0, 1, 2)
    assert outcome.aligned
    assert outcome.sides == ("X1", "X2", "X3")


def test_triple_classification_domain():
    inst = random_tripartite((2, 2, 2), 1)
    with pytest.raises(DomainError):
        tech_triple_classify(inst, *inst.sides.values(), "1/3")
    pair = complete_bipartite(2, 2)
    with pytest.raises(DomainError):
        tech_triple_classify(pair, pair.sides["a-side"], pair.sides["b-side"], pair.sides["a-side"], "1/4")


def test_regular_blowup_partition_is_homogeneous(ghat_blowup):
    verdict = check_blowup_reg_is_hom(ghat_blowup, class_partition(ghat_blowup), "1/4")
    assert verdict.passed


def test_blowup_reg_is_hom_preconditions(ghat_blowup):
    with pytest.raises(ContractError):
        check_blowup_reg_is_hom(ghat_blowup, class_partition(ghat_blowup), Fraction(1, 2))
    with pytest.raises(DomainError):
        check_blowup_reg_is_hom(ghat(complete_bipartite(1, 1)), Partition.trivial(3), "1/4")


GRAPH_BASES = ("P3", "P4", "C4", "C5", "K3", "M2", "Mbar2", "H2", "U1", "E3")


def _threegraph_bases():
    yield ThreeGraph(3, [(0, 1, 2)])
    yield ThreeGraph(4, [(0, 1, 2), (0, 1, 3)])
    yield ThreeGraph(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    yield ThreeGraph(4, [(0, 1, 2)])
    yield ThreeGraph(5, [(0, 1, 2), (2, 3, 4)])
    for seed in range(5):
        yield random_threegraph(4, seed=seed)


@pytest.mark.parametrize("eps", ["1/3", "1/2"])
def test_bip_transfer_on_blowup_classes(eps):
    for tag in GRAPH_BASES:
        for scale in (1, 2):
            inst = blowup(base_instance(tag), scale)
            p = class_partition(inst)
            report = bip_transfer(inst.graph, p, eps)
            assert report.input_verified is True, tag
            assert report.verified is True, tag
            assert report.claimed_bound == 2 * len(p) + 1
            assert report.actual_parts <= report.claimed_bound


@pytest.mark.slow
@pytest.mark.parametrize("eps", ["1/3", "1/2"])
def test_trip_transfer_on_blowup_classes(eps):
    for base in _threegraph_bases():
        for scale in (1, 2):
            inst = blowup(base, scale)
            p = class_partition(inst)
            report = trip_transfer(inst, p, eps)
            assert report.input_verified is True
            assert report.verified is True
            assert report.claimed_bound == 3 * len(p) + 2
            assert report.actual_parts <= report.claimed_bound


def test_otimes_projection_on_random_bipartite_graphs():
    for seed in range(10):
        left, right = 1 + seed % 4, 1 + (seed // 2) % 4
        inst = random_bipartite(left, right, seed=seed)
        host = otimes(max(left, right), inst).graph
        p = twin_classes(host).classes
        if not check_partition(host, p, "1/2").passed:
            p = Partition.singletons(host.n)
        report = otimes_project(inst, p, "1/2")
        assert report.input_verified is True
        assert report.verified is True
        assert report.actual_parts <= 2 * len(p) + 2


def test_triple_classification_of_a_mixed_cell():
    inst = gen_hkn(1, 3)
    d1 = VertexSet([0, 1, 2, 6])
    outcome = tech_triple_classify(inst, d1, VertexSet([3, 4, 5]), VertexSet([9, 10, 11]), "3/10")
    assert outcome.density == Fraction(3, 4)
    assert not outcome.sparse
    assert outcome.alignment == (0, 1, 2)
    assert outcome.sides == ("U", "V", "W")


def test_triple_classification_of_cells_in_one_side():
    inst = gen_hkn(1, 3)
    outcome = tech_triple_classify(inst, VertexSet([0, 1]), VertexSet([1, 2]), VertexSet([9]), "1/4")
    assert outcome.sparse
    assert outcome.alignment is None


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(tripartite_with_triple(), st.sampled_from(("1/4", "1/5", "1/8")))
def test_regular_triples_are_sparse_or_aligned(case, eps):
    inst, d1, d2, d3 = case
    if not check_triple_exact(inst.graph, d1, d2, d3, eps).regular:
        return
    outcome = tech_triple_classify(inst, d1, d2, d3, eps)
    assert outcome.sparse or outcome.aligned
    assert outcome.sparse == (outcome.density <= Fraction(eps))


def test_exp_class_notes_when_the_output_contract_cannot_fail():
    report = exp_class_partition(gen_hkn(1, 2), "1/5")
    assert "5 eps = 1 > 1/2: the output contract holds for any partition" in report.notes
    sparse = exp_class_partition(gen_hkn(2, 3), "1/3")
    assert "5 eps = 5/3 > 1/2: the output contract holds for any partition" in sparse.notes
