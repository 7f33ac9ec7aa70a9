"""Desk-scale experiment drivers: growth sweeps and lower-bound constructions.

Nothing here decides an asymptotic statement. Every record says how its
number was obtained (``method``) and whether it is a proven minimum
(``certified``), and every report carries the same disclaimer.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass, field
from fractions import Fraction
import json
import logging
import re
import time
from typing import IO, Any

from .codec import to_jsonable
from .config import Config
from .const import DISCLAIMER, Family, Kind, Method
from .core import Hypergraph, Partition, as_fraction, format_rational
from .exceptions import ContractError, DomainError
from .families import (
    LabeledFamilyInstance,
    blowup,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    gen_comatching,
    gen_halfgraph,
    gen_hkn,
    gen_matching,
    gen_powerset_graph,
    gen_uk_blowup_lb,
    ghat,
    path_graph,
    random_graph,
)
from .reduction import twin_classes
from .regularity import check_partition
from .search import bell_partitions, ceil_power, min_partition_exhaustive
from .transforms import check_blowup_reg_is_hom

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("family", "params", "eps", "size", "method", "certified", "seconds")

_BASE = re.compile(r"^(Mbar|M|H|U|P|C|K|E)(\d+)$")


@dataclass
class SweepRecord:
    """Smallest partition size found for one instance at one eps.

    With ``method`` witness-lower, ``size`` is a lower bound backed by a failing
    one-part partition; with constructed-upper it is the size of a partition
    that passed; direct-check means the one-part partition passed outright.
    """

    family: str
    params: dict[str, Any]
    eps: Fraction
    kind: str
    size: int
    method: str
    certified: bool
    seconds: str
    notes: list[str] = field(default_factory=list)


@dataclass
class SweepReport:
    """Records of a sweep and a descriptive label for their trend."""

    family: str
    kind: str
    records: list[SweepRecord]
    classification: dict[str, str]
    disclaimer: str = DISCLAIMER


def _wrap(graph: Hypergraph, tag: str) -> LabeledFamilyInstance:
    return LabeledFamilyInstance(graph=graph, labels={}, family=Family.BASIC, params={"tag": tag})


def base_instance(text: str) -> LabeledFamilyInstance:
    """Small named base graphs: M2, Mbar3, H2, U2, P3, C5, K3, E4."""
    match = _BASE.match(text.strip())
    if match is None:
        raise DomainError(f"unknown base graph {text!r}")
    name, k = match.group(1), int(match.group(2))
    match name:
        case "M":
            return gen_matching(k)
        case "Mbar":
            return gen_comatching(k)
        case "H":
            return gen_halfgraph(k)
        case "U":
            return gen_powerset_graph(k)
        case "P":
            return _wrap(path_graph(k), text)
        case "C":
            return _wrap(cycle_graph(k), text)
        case "K":
            return _wrap(complete_graph(k), text)
        case _:
            return _wrap(edgeless_graph(k), text)


def build_family(tag: str, scale: int, seed: int = 0) -> LabeledFamilyInstance:
    """Instance of a family at one scale.

    Tags: ``blowup:<base>`` (class size = scale), ``edgeless``, ``complete``,
    ``random`` (n = scale), ``hkn:<k>`` (H(k, scale)) and
    ``uklb:<K>,<small>`` (G of the U(K) blow-up construction, n = scale).
    """
    name, _, arg = tag.partition(":")
    match name:
        case "blowup":
            return blowup(base_instance(arg), scale)
        case "edgeless":
            return _wrap(edgeless_graph(scale), tag)
        case "complete":
            return _wrap(complete_graph(scale), tag)
        case "random":
            return _wrap(random_graph(scale, seed=seed), tag)
        case "hkn":
            return gen_hkn(int(arg), scale)
        case "uklb":
            try:
                big_k, small = (int(x) for x in arg.split(","))
            except ValueError as err:
                raise DomainError(f"uklb needs K,small, got {arg!r}") from err
            return gen_uk_blowup_lb(big_k, scale, small)[1]
    raise DomainError(f"unknown family {tag!r}")


def _seconds(start: float, config: Config) -> str:
    return f"{time.perf_counter() - start:.3f}" if config.record_timing else "0"


def measure(
    inst: LabeledFamilyInstance, eps, kind: str, config: Config, family: str, params: dict
) -> SweepRecord:
    """Exhaustive minimum when the instance fits n_cap, bounds otherwise."""
    eps = as_fraction(eps)
    start = time.perf_counter()
    host = inst.graph
    if host.n <= config.n_cap:
        result = min_partition_exhaustive(
            host, eps, kind, n_cap=config.n_cap, budget=config.exact_budget
        )
        return SweepRecord(
            family, params, eps, kind, result.size, Method.EXHAUSTIVE, True, _seconds(start, config)
        )

    size, method, certified, notes = _beyond_cap(host, eps, kind, config)
    return SweepRecord(
        family, params, eps, kind, size, method, certified, _seconds(start, config), notes
    )


def _beyond_cap(
    host: Hypergraph, eps: Fraction, kind: str, config: Config
) -> tuple[int, str, bool, list[str]]:
    """Size of a host past n_cap from the one-part and twin-class partitions.

    A passing one-part partition settles the minimum at 1. Otherwise its
    failing cell backs the lower bound of 2, and the twin classes give an
    upper bound when they pass.
    """
    notes = [f"{host.n} vertices exceed n_cap = {config.n_cap}"]
    trivial = check_partition(host, Partition.trivial(host.n), eps, kind, config.exact_budget)
    if trivial.passed:
        notes.append("the one-part partition passes")
        return 1, Method.DIRECT, True, notes
    refuted = f"one-part partition fails at cell {trivial.failing_cell}"
    if trivial.witness is not None:
        refuted += f" with gap {format_rational(trivial.witness.gap)}"
    notes.append(refuted)
    classes = twin_classes(host).classes
    verdict = check_partition(host, classes, eps, kind, config.exact_budget)
    if verdict.passed:
        notes.append("size is the twin class count")
        return len(classes), Method.CONSTRUCTED_UPPER, False, notes
    return 2, Method.WITNESS_LOWER, False, notes


def _sweep_job(job: tuple) -> SweepRecord:
    tag, scale, eps, kind, options = job
    config = Config(options)
    inst = build_family(tag, scale, seed=config.seed)
    return measure(inst, eps, kind, config, tag, {"scale": scale, "n": inst.n})


def classify(sizes: list[int]) -> str:
    """Describe a size sequence taken along decreasing eps."""
    if len(set(sizes)) <= 1:
        return "constant"
    if all(a <= b for a, b in zip(sizes, sizes[1:])):
        return "growing"
    return "irregular"


def growth_sweep(
    tag: str,
    eps_list,
    kind: str = Kind.REGULAR,
    scales=(1,),
    config: Config | None = None,
) -> SweepReport:
    """Partition sizes of a family over a scale schedule and a list of eps.

    With ``threads > 1`` instances are spread over worker processes; records
    are sorted afterwards so the output does not depend on the thread count.
    """
    config = config or Config()
    if kind not in Kind.ALL:
        raise DomainError(f"unknown partition kind {kind!r}")
    eps_values = sorted({as_fraction(e) for e in eps_list}, reverse=True)
    if not eps_values or any(e <= 0 for e in eps_values):
        raise DomainError("eps list must hold positive values")
    jobs = [
        (tag, scale, eps, kind, config.options) for scale in scales for eps in eps_values
    ]
    if config.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as executor:
            records = list(executor.map(_sweep_job, jobs))
    else:
        records = [_sweep_job(job) for job in jobs]
    records.sort(key=lambda r: (r.params["scale"], -r.eps))

    classification = {}
    for scale in scales:
        sizes = [r.size for r in records if r.params["scale"] == scale]
        classification[str(scale)] = classify(sizes)
    logger.info("sweep %s: %s", tag, classification)
    return SweepReport(tag, kind, records, classification)


@dataclass
class LowerBoundReport:
    """Outcome of one lower-bound construction at desk scale."""

    construction: str
    params: dict[str, Any]
    eps: Fraction
    vertices: int
    size: int | None
    bound: int | None
    method: str
    certified: bool
    outcome: str
    seconds: str
    notes: list[str] = field(default_factory=list)
    disclaimer: str = DISCLAIMER


def _sized(host: Hypergraph, eps: Fraction, config: Config) -> tuple[int, str, bool, list[str]]:
    if host.n <= config.n_cap:
        result = min_partition_exhaustive(
            host, eps, Kind.REGULAR, n_cap=config.n_cap, budget=config.exact_budget
        )
        return result.size, Method.EXHAUSTIVE, True, []
    return _beyond_cap(host, eps, Kind.REGULAR, config)


def lb_blowup_experiment(
    s1, s2, eps, n: int, pattern: str = "H", config: Config | None = None
) -> LowerBoundReport:
    """Minimal eps-regular size of an n-blow-up of an Irr(m) member, m = ceil(1/(4 eps)).

    The size is compared with ceil(eps^-s2); at desk scale either side may win.
    """
    config = config or Config()
    s1, s2, eps = as_fraction(s1), as_fraction(s2), as_fraction(eps)
    if not 0 < s1 < 1 - s1 < s2 < 1:
        raise DomainError(f"need 0 < s1 < 1 - s1 < s2 < 1, got s1 = {s1}, s2 = {s2}")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    start = time.perf_counter()
    m = -(-eps.denominator // (4 * eps.numerator))
    notes = [f"m = ceil(1/(4 eps)) = {m}"]
    if m == 1:
        notes.append("m = 1: Irr(1) is a single pair, the regime is degenerate")
    inst = blowup(base_instance(f"{pattern}{m}"), n)
    bound = ceil_power(1 / eps, s2.numerator, s2.denominator)
    size, method, certified, extra = _sized(inst.graph, eps, config)
    notes.extend(extra)
    if certified:
        outcome = "bound met" if size >= bound else "bound not met at this scale"
    else:
        outcome = "undecided"
    return LowerBoundReport(
        construction=f"blowup:{pattern}{m}",
        params={"s1": s1, "s2": s2, "m": m, "n": n},
        eps=eps,
        vertices=inst.n,
        size=size,
        bound=bound,
        method=method,
        certified=certified,
        outcome=outcome,
        seconds=_seconds(start, config),
        notes=notes,
    )


def ukblowup_lb_verify(
    big_k: int, n: int, small: int, eps, config: Config | None = None
) -> LowerBoundReport:
    """Minimal eps-regular size of G from the U(K) blow-up construction.

    The matching lower bound of 2^(eps^(-1+c)) parts for eps^100-regular
    partitions needs eps small and n large, far beyond anything checked here.
    """
    config = config or Config()
    eps = as_fraction(eps)
    start = time.perf_counter()
    gamma, g_inst = gen_uk_blowup_lb(big_k, n, small)
    size, method, certified, notes = _sized(g_inst.graph, eps, config)
    notes.append(f"Gamma has {gamma.n} vertices, G keeps {g_inst.n}")
    if small == gamma.params["N"]:
        notes.append("small side equals the blow-up size; nothing is cut from Gamma")
    return LowerBoundReport(
        construction=f"uklb:{big_k},{small}",
        params={"K": big_k, "n": n, "small": small, "N": gamma.params["N"]},
        eps=eps,
        vertices=g_inst.n,
        size=size,
        bound=None,
        method=method,
        certified=certified,
        outcome="recorded",
        seconds=_seconds(start, config),
        notes=notes,
    )


@dataclass
class BlowupRegHomReport:
    """Every mu-regular partition of a small blow-up of G-hat, checked at 4 mu."""

    base: str
    size: int
    mu: Fraction
    vertices: int
    partitions_checked: int
    regular_found: int
    counterexamples: list[Partition]
    disclaimer: str = DISCLAIMER


def blowup_reg_hom_sweep(
    base: str | LabeledFamilyInstance, size: int, mu, config: Config | None = None
) -> BlowupRegHomReport:
    """Enumerate all partitions of the simple blow-up of G-hat and test each regular one.

    ``base`` is a bipartite instance or one of "edge" and the base names
    understood by :func:`base_instance`.
    """
    config = config or Config()
    mu = as_fraction(mu)
    if isinstance(base, str):
        name = base
        inst = complete_bipartite(1, 1) if base == "edge" else base_instance(base)
    else:
        name, inst = base.family, base
    big_h = blowup(ghat(inst), size)
    if big_h.n > config.n_cap:
        raise DomainError(f"{big_h.n} vertices exceed n_cap = {config.n_cap}")
    memo: dict = {}
    checked = regular = 0
    counterexamples = []
    for p in bell_partitions(big_h.n):
        checked += 1
        if not check_partition(big_h.graph, p, mu, Kind.REGULAR, config.exact_budget, memo).passed:
            continue
        regular += 1
        try:
            check_blowup_reg_is_hom(big_h, p, mu, config.exact_budget, memo)
        except ContractError as err:
            logger.warning("counterexample %s: %s", p, err)
            counterexamples.append(p)
    logger.info("%s of %s partitions are %s-regular", regular, checked, mu)
    return BlowupRegHomReport(name, size, mu, big_h.n, checked, regular, counterexamples)


def write_csv(records: list[SweepRecord], stream: IO[str]) -> None:
    """CSV with one row per record."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.family,
                json.dumps(to_jsonable(r.params), sort_keys=True, separators=(",", ":")),
                format_rational(r.eps),
                r.size,
                r.method,
                "true" if r.certified else "false",
                r.seconds,
            ]
        )


__all__ = [
    "CSV_COLUMNS",
    "BlowupRegHomReport",
    "LowerBoundReport",
    "SweepRecord",
    "SweepReport",
    "base_instance",
    "blowup_reg_hom_sweep",
    "build_family",
    "classify",
    "growth_sweep",
    "lb_blowup_experiment",
    "measure",
    "ukblowup_lb_verify",
    "write_csv",
]
