"""Tests for the sweep and lower-bound drivers."""

import io

import pytest

from reglab.config import Config
from reglab.const import DISCLAIMER, Family, Kind, Method
from reglab.exceptions import DomainError
from reglab.experiments import (
    CSV_COLUMNS,
    base_instance,
    blowup_reg_hom_sweep,
    build_family,
    classify,
    growth_sweep,
    lb_blowup_experiment,
    measure,
    ukblowup_lb_verify,
    write_csv,
)


@pytest.fixture
def quiet() -> Config:
    """Configuration without wall-clock timings."""
    return Config({"record_timing": False})


def test_base_instances():
    assert base_instance("H3").family == Family.HALF
    assert base_instance("P3").graph.edge_count == 2
    assert base_instance("E4").graph.edge_count == 0
    assert base_instance("Mbar2").graph.edge_count == 2
    with pytest.raises(DomainError):
        base_instance("Q3")


def test_build_family():
    inst = build_family("blowup:P3", 2)
    assert inst.family == Family.BLOWUP
    assert inst.n == 6
    assert build_family("hkn:1", 2).n == 8
    assert build_family("uklb:1,1", 1).n == 4
    assert build_family("complete", 4).graph.edge_count == 6
    assert build_family("random", 5, seed=2) == build_family("random", 5, seed=2)
    with pytest.raises(DomainError):
        build_family("uklb:x", 1)
    with pytest.raises(DomainError):
        build_family("zigzag", 1)


@pytest.mark.parametrize(
    "sizes, label",
    [([1, 1, 1], "constant"), ([1, 2, 2], "growing"), ([2, 1], "irregular"), ([], "constant")],
)
def test_classify(sizes, label):
    assert classify(sizes) == label


def test_growth_sweep_on_a_path_blowup(quiet):
    report = growth_sweep("blowup:P3", ["1/10", "1/2"], scales=(2,), config=quiet)
    assert [str(r.eps) for r in report.records] == ["1/2", "1/10"]
    assert [r.size for r in report.records] == [1, 2]
    assert all(r.method == Method.EXHAUSTIVE and r.certified for r in report.records)
    assert all(r.seconds == "0" for r in report.records)
    assert report.classification == {"2": "growing"}
    assert report.disclaimer == DISCLAIMER


def test_growth_sweep_does_not_depend_on_threads():
    jobs = dict(tag="blowup:P3", eps_list=["1/2", "1/10"], scales=(1, 2))
    single = growth_sweep(**jobs, config=Config({"record_timing": False, "threads": 1}))
    pooled = growth_sweep(**jobs, config=Config({"record_timing": False, "threads": 2}))
    assert single.records == pooled.records


def test_growth_sweep_rejects_bad_input(quiet):
    with pytest.raises(DomainError):
        growth_sweep("edgeless", [], config=quiet)
    with pytest.raises(DomainError):
        growth_sweep("edgeless", ["1/2"], kind="sparse", config=quiet)
    with pytest.raises(DomainError):
        growth_sweep("edgeless", ["0"], config=quiet)


def test_measure_falls_back_past_n_cap():
    config = Config({"record_timing": False, "n_cap": 6})
    inst = build_family("blowup:P3", 4)
    record = measure(inst, "1/10", Kind.REGULAR, config, "blowup:P3", {"scale": 4})
    assert record.size == 2
    assert record.method == Method.CONSTRUCTED_UPPER
    assert record.certified is False
    assert "12 vertices exceed n_cap = 6" in record.notes


def test_write_csv(quiet):
    report = growth_sweep("blowup:P3", ["1/2"], scales=(2,), config=quiet)
    stream = io.StringIO()
    write_csv(report.records, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == 'blowup:P3,"{""n"":6,""scale"":2}",1/2,1,exhaustive,true,0'


def test_lb_blowup_experiment_degenerate_case(quiet):
    report = lb_blowup_experiment("1/4", "7/8", "1/4", 1, config=quiet)
    assert report.construction == "blowup:H1"
    assert report.vertices == 2
    assert report.size == 2
    assert report.bound == 4
    assert report.method == Method.EXHAUSTIVE
    assert report.certified
    assert report.outcome == "bound not met at this scale"
    assert any("degenerate" in note for note in report.notes)


def test_lb_blowup_experiment_checks_exponents(quiet):
    with pytest.raises(DomainError):
        lb_blowup_experiment("1/2", "7/8", "1/4", 1, config=quiet)
    with pytest.raises(DomainError):
        lb_blowup_experiment("1/4", "7/8", "1", 1, config=quiet)


def test_ukblowup_lb_verify(quiet):
    report = ukblowup_lb_verify(1, 1, 1, "1/4", config=quiet)
    assert report.vertices == 4
    assert report.params["N"] == 2
    assert report.method == Method.EXHAUSTIVE
    assert 1 <= report.size <= 4
    assert "Gamma has 6 vertices, G keeps 4" in report.notes


def test_blowup_reg_hom_sweep_on_an_edge(quiet):
    report = blowup_reg_hom_sweep("edge", 1, "1/4", config=quiet)
    assert report.vertices == 3
    assert report.partitions_checked == 5
    assert report.regular_found == 1
    assert report.counterexamples == []


def test_blowup_reg_hom_sweep_respects_n_cap(quiet):
    with pytest.raises(DomainError):
        blowup_reg_hom_sweep("edge", 5, "1/4", config=quiet)


def test_growth_sweep_on_a_matching_blowup(quiet):
    report = growth_sweep("blowup:M2", ["1/4", "1/8"], scales=(2,), config=quiet)
    assert [r.size for r in report.records] == [3, 4]
    assert all(r.method == Method.EXHAUSTIVE and r.certified for r in report.records)
    assert report.classification == {"2": "growing"}


def test_measure_checks_the_one_part_partition_past_n_cap():
    config = Config({"record_timing": False, "n_cap": 6})
    inst = build_family("edgeless", 8)
    record = measure(inst, "1/4", Kind.REGULAR, config, "edgeless", {"scale": 8})
    assert record.size == 1
    assert record.method == Method.DIRECT
    assert record.certified is True
    assert record.notes == ["8 vertices exceed n_cap = 6", "the one-part partition passes"]


def test_lb_blowup_experiment_past_n_cap_is_undecided():
    config = Config({"record_timing": False, "n_cap": 1})
    report = lb_blowup_experiment("1/4", "7/8", "1/4", 1, config=config)
    assert report.vertices == 2
    assert report.size == 2
    assert report.method == Method.WITNESS_LOWER
    assert report.certified is False
    assert report.outcome == "undecided"
    assert "one-part partition fails at cell (0, 0) with gap 1/2" in report.notes


def test_lb_blowup_experiment_past_n_cap_settles_one_part():
    config = Config({"record_timing": False, "n_cap": 1})
    report = lb_blowup_experiment("1/4", "7/8", "3/4", 1, config=config)
    assert report.size == 1
    assert report.bound == 2
    assert report.method == Method.DIRECT
    assert report.certified is True
    assert report.outcome == "bound not met at this scale"


def test_blowup_reg_hom_sweep_on_a_doubled_edge(quiet):
    report = blowup_reg_hom_sweep("edge", 2, "1/8", config=quiet)
    assert report.vertices == 6
    assert report.partitions_checked == 203
    assert report.regular_found == 8
    assert report.counterexamples == []


@pytest.mark.slow
def test_blowup_reg_hom_sweep_on_a_doubled_powerset_graph(quiet):
    report = blowup_reg_hom_sweep("U1", 2, "1/8", config=quiet)
    assert report.vertices == 10
    assert report.partitions_checked == 115975
    assert report.regular_found == 5742
    assert report.counterexamples == []
