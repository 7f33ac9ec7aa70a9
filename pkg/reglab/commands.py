"""Define the subcommand table."""

from __future__ import annotations

import argparse
from collections.abc import Callable
import logging
from typing import Any

from .codec import load_partition, load_structure, parse_eps
from .config import Config
from .const import (
    DEFAULT_ITERATION_BUDGET,
    EXIT_CAPACITY,
    EXIT_CONTRACT,
    EXIT_OK,
    ExtractMode,
    Family,
    Kind,
    Mode,
    Pattern,
    TowerKind,
    TransferKind,
)
from .core import Hypergraph, Partition, VertexSet, parse_rational
from .dimensions import svc, vc_graph, vc_threegraph
from .exceptions import DomainError, InputError
from .experiments import (
    base_instance,
    blowup_reg_hom_sweep,
    growth_sweep,
    lb_blowup_experiment,
    ukblowup_lb_verify,
)
from .extraction import (
    equiv3_trip_witness,
    extract_uv_copy_iterative,
    find_irr_subgraph,
    find_uv_copy_bruteforce,
)
from .families import (
    LabeledFamilyInstance,
    bip_double,
    blowup,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    gen_hkn,
    gen_pattern,
    gen_powerset_graph,
    gen_uk_blowup_lb,
    ghat,
    otimes,
    path_graph,
    random_bipartite,
    random_graph,
    random_threegraph,
    trip_triple,
    uhat,
)
from .reduction import class_partition_regular, reduce, twin_classes
from .regularity import check_cell_exact, check_partition, witness_search_heuristic
from .search import chung_f, min_partition_exhaustive, tower, tower_f
from .transforms import run_transfer

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, Config], tuple[Any, int]]
Arguments = Callable[[argparse.ArgumentParser], None]


class Command:
    """Subcommand object."""

    def __init__(
        self,
        name: str,
        desc: str,
        handler: Handler,
        arguments: tuple[Arguments, ...] = (),
    ) -> None:
        """Initialise."""
        self.name = name  # subcommand as typed on the command line
        self.desc = desc  # help text
        self.handler = handler  # (args, config) -> (payload, exit code)
        self.arguments = arguments  # adds the subcommand's flags to its parser

    def register(self, subparsers, parents=()) -> argparse.ArgumentParser:
        """Add this command and its flags to an argparse subparser set."""
        parser = subparsers.add_parser(
            self.name, help=self.desc, description=self.desc, parents=list(parents)
        )
        for add in self.arguments:
            add(parser)
        parser.set_defaults(command=self)
        return parser

    def __call__(self, args: argparse.Namespace, config: Config) -> tuple[Any, int]:
        """Run the handler."""
        logger.debug("Running %s", self.name)
        return self.handler(args, config)

    def __str__(self) -> str:
        """Human readable name."""
        return f"{self.name}: {self.desc}"

    def __repr__(self) -> str:
        """Return string representation."""
        return f"Command({self.name!r})"


# Flag groups


def _graph(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, metavar="FILE", help="structure JSON")


def _eps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", required=True, help='exact fraction such as "1/4"')


def _kind(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", choices=Kind.ALL, default=Kind.REGULAR)


def _partition(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--partition", metavar="FILE", help="partition JSON")


def _kmax(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kmax", type=int, default=3)


def _cell(*names: str) -> Arguments:
    def add(parser: argparse.ArgumentParser) -> None:
        for name in names:
            parser.add_argument(f"--{name}", required=True, help="side, label or 0,1,2")

    return add


def _check_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=(Mode.EXACT, Mode.HEURISTIC), default=Mode.EXACT)
    parser.add_argument("--seed", type=int, help="heuristic seed, overrides the config")
    parser.add_argument("--trials", type=int, help="heuristic trials, overrides the config")


def _gen_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, choices=sorted(GENERATORS))
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--size", type=int, default=2, help="blow-up class size")
    parser.add_argument("--small", type=int, default=1, help="kept U_S vertices for uklb")
    parser.add_argument("--p", default="1/2", help="edge probability for random families")
    parser.add_argument("--seed", type=int, help="overrides the config seed")
    parser.add_argument("--base", help="base graph name (M2, H3, ...) or structure JSON")


def _reduce_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exhaustive", action="store_true", help="repeat until nothing shrinks")


def _classes_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", help="also check the class partition at this eps")


def _transfer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", required=True, choices=TransferKind.ALL)
    parser.add_argument("--no-check-input", action="store_true")
    parser.add_argument("--force", action="store_true", help="blowup-hom: skip the smallness check")


def _extract_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--u", help="side, label or 0,1,2")
    parser.add_argument("--v", help="side, label or 0,1,2")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument(
        "--mode", choices=(*ExtractMode.ALL, "irr", "trip"), default=ExtractMode.BRUTE
    )
    parser.add_argument("--budget", type=int, default=DEFAULT_ITERATION_BUDGET)


def _minpart_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ncap", type=int, help="overrides the config n_cap")


def _sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, help="blowup:M2, hkn:1, random, ...")
    parser.add_argument("--eps", required=True, help="comma separated fractions")
    parser.add_argument("--scales", default="1", help="comma separated scales")


def _lb_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--construction", choices=("blowup", "uk", "reg-hom"), default="blowup"
    )
    parser.add_argument("--eps", required=True, help="eps, or mu for reg-hom")
    parser.add_argument("--s1", default="1/4")
    parser.add_argument("--s2", default="7/8")
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--pattern", choices=("H", "M", "Mbar"), default="H")
    parser.add_argument("--K", type=int, default=1)
    parser.add_argument("--small", type=int, default=1)
    parser.add_argument("--base", default="edge", help="reg-hom base graph")
    parser.add_argument("--size", type=int, default=1, help="reg-hom class size")


def _tower_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--i", type=int, required=True)
    parser.add_argument(
        "--kind",
        choices=(TowerKind.TW, TowerKind.TWF_LITERAL, TowerKind.TWF_ITERATED, TowerKind.F),
        default=TowerKind.TW,
    )


# Helpers


def _eps_value(args: argparse.Namespace) -> Any:
    return parse_eps(args.eps)


def _select(inst: LabeledFamilyInstance, selector: str | None, flag: str) -> VertexSet:
    if selector is None:
        raise InputError("missing selector", flag)
    try:
        return inst.resolve(selector)
    except DomainError as err:
        raise InputError(str(err), flag) from err


def _partition_of(args: argparse.Namespace, inst: LabeledFamilyInstance) -> Partition:
    if args.partition is None:
        raise InputError("a partition file is required", "--partition")
    return load_partition(args.partition, inst.n)


def _bare(host: Hypergraph, tag: str) -> LabeledFamilyInstance:
    return LabeledFamilyInstance(graph=host, labels={}, family=Family.BASIC, params={"tag": tag})


def _base(args: argparse.Namespace) -> LabeledFamilyInstance:
    if args.base is None:
        raise InputError("this family needs a base graph", "--base")
    try:
        return base_instance(args.base)
    except DomainError:
        return load_structure(args.base)


def _seed(args: argparse.Namespace, config: Config) -> int:
    return config.seed if args.seed is None else args.seed


# fmt: off
GENERATORS: dict[str, Callable[[argparse.Namespace, Config], LabeledFamilyInstance]] = {
    "u":          lambda a, c: gen_powerset_graph(a.k),
    "half":       lambda a, c: gen_pattern(Pattern.HALF, a.k),
    "matching":   lambda a, c: gen_pattern(Pattern.MATCHING, a.k),
    "comatching": lambda a, c: gen_pattern(Pattern.COMATCHING, a.k),
    "uhat":       lambda a, c: uhat(a.k),
    "hkn":        lambda a, c: gen_hkn(a.k, a.n),
    "uklb":       lambda a, c: gen_uk_blowup_lb(a.k, a.n, a.small)[1],
    "bip":        lambda a, c: bip_double(_base(a).graph),
    "trip":       lambda a, c: trip_triple(_base(a).graph),
    "otimes":     lambda a, c: otimes(a.n, _base(a)),
    "ghat":       lambda a, c: ghat(_base(a)),
    "blowup":     lambda a, c: blowup(_base(a), a.size),
    "random":     lambda a, c: _bare(random_graph(a.n, a.p, _seed(a, c)), "random"),
    "random3":    lambda a, c: _bare(random_threegraph(a.n, a.p, _seed(a, c)), "random3"),
    "bipartite":  lambda a, c: random_bipartite(a.n, a.n, a.p, _seed(a, c)),
    "path":       lambda a, c: _bare(path_graph(a.n), "path"),
    "cycle":      lambda a, c: _bare(cycle_graph(a.n), "cycle"),
    "complete":   lambda a, c: _bare(complete_graph(a.n), "complete"),
    "edgeless":   lambda a, c: _bare(edgeless_graph(a.n), "edgeless"),
}
# fmt: on


# Handlers


def gen(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Generate a family instance."""
    return GENERATORS[args.family](args, config), EXIT_OK


def _check_cell(args, config, names: tuple[str, ...]) -> tuple[Any, int]:
    inst = load_structure(args.graph)
    cell = tuple(_select(inst, getattr(args, name), f"--{name}") for name in names)
    eps = _eps_value(args)
    if args.mode == Mode.HEURISTIC:
        trials = config.trials if args.trials is None else args.trials
        verdict = witness_search_heuristic(inst.graph, cell, eps, trials, _seed(args, config))
    else:
        verdict = check_cell_exact(inst.graph, cell, eps, config.exact_budget)
    sides = {name: selector for name, selector in zip(names, cell, strict=True)}
    return {"command": args.command.name, "cell": sides, "verdict": verdict}, EXIT_OK


def check_pair(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Regularity of one pair."""
    return _check_cell(args, config, ("x", "y"))


def check_triple(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Regularity of one triple."""
    return _check_cell(args, config, ("x", "y", "z"))


def check_partition_cmd(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Regularity or homogeneity of a whole partition."""
    inst = load_structure(args.graph)
    p = _partition_of(args, inst)
    verdict = check_partition(inst.graph, p, _eps_value(args), args.kind, config.exact_budget)
    return {"command": "check-partition", "partition": p, "verdict": verdict}, EXIT_OK


def vc(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """VC dimension with a shattering certificate."""
    host = load_structure(args.graph).graph
    result = vc_graph(host, args.kmax) if host.arity == 2 else vc_threegraph(host, args.kmax)
    return {"command": "vc", "result": result}, EXIT_OK


def svc_cmd(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Slicewise VC dimension of a 3-graph."""
    host = load_structure(args.graph).graph
    return {"command": "svc", "result": svc(host, args.kmax)}, EXIT_OK


def classes(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Twin classes, optionally checked as a partition."""
    host = load_structure(args.graph).graph
    payload: dict[str, Any] = {"command": "classes", "decomposition": twin_classes(host)}
    if args.eps is not None:
        eps = parse_eps(args.eps)
        payload["verdict"] = class_partition_regular(host, eps, config.exact_budget)
    return payload, EXIT_OK


def reduce_cmd(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Induced structure on twin class representatives."""
    host = load_structure(args.graph).graph
    reduced, index_map = reduce(host, args.exhaustive)
    return {"command": "reduce", "structure": reduced, "index_map": index_map}, EXIT_OK


def transfer(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Run one partition transfer and re-check its output."""
    inst = load_structure(args.graph)
    partition = None if args.kind == TransferKind.EXP_CLASS else _partition_of(args, inst)
    kwargs = {"force": True} if args.force and args.kind == TransferKind.BLOWUP_HOM else {}
    report = run_transfer(
        args.kind,
        inst,
        partition,
        _eps_value(args),
        config,
        check_input=not args.no_check_input,
        **kwargs,
    )
    if report.capacity_exceeded:
        code = EXIT_CAPACITY
    else:
        code = EXIT_OK if report.verified else EXIT_CONTRACT
    return {"command": "transfer", "report": report}, code


def extract(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Find a copy of a member of Irr(k) or a Trip witness."""
    inst = load_structure(args.graph)
    match args.mode:
        case "irr":
            result = find_irr_subgraph(inst.graph, args.k)
        case "trip":
            result = equiv3_trip_witness(inst.graph, args.k)
        case mode:
            u = _select(inst, args.u, "--u")
            v = _select(inst, args.v, "--v")
            if mode == ExtractMode.BRUTE:
                result = find_uv_copy_bruteforce(inst.graph, u, v, args.k)
            else:
                result = extract_uv_copy_iterative(inst.graph, u, v, args.k, args.budget)
    return {"command": "extract", "found": result is not None, "result": result}, EXIT_OK


def minpart(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Exhaustive minimal partition."""
    host = load_structure(args.graph).graph
    n_cap = config.n_cap if args.ncap is None else args.ncap
    result = min_partition_exhaustive(
        host, _eps_value(args), args.kind, n_cap=n_cap, budget=config.exact_budget
    )
    return {"command": "minpart", "result": result}, EXIT_OK


def _int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(token) for token in text.split(","))
    except ValueError as err:
        raise InputError(f"expected comma separated integers, got {text!r}", flag) from err
    if any(v < 1 for v in values):
        raise InputError("values must be positive", flag)
    return values


def sweep(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Growth sweep over a family."""
    eps_list = [parse_eps(token, "--eps") for token in args.eps.split(",")]
    scales = _int_list(args.scales, "--scales")
    return growth_sweep(args.family, eps_list, args.kind, scales, config), EXIT_OK


def lb_experiment(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Lower-bound constructions at desk scale."""
    eps = _eps_value(args)
    match args.construction:
        case "blowup":
            s1 = parse_rational(args.s1, "--s1")
            s2 = parse_rational(args.s2, "--s2")
            report = lb_blowup_experiment(s1, s2, eps, args.n, args.pattern, config)
        case "uk":
            report = ukblowup_lb_verify(args.K, args.n, args.small, eps, config)
        case _:
            report = blowup_reg_hom_sweep(args.base, args.size, eps, config)
    return report, EXIT_OK


def tower_cmd(args: argparse.Namespace, config: Config) -> tuple[Any, int]:
    """Evaluate a bound function exactly."""
    match args.kind:
        case TowerKind.TW:
            value = tower(args.i, config.bit_budget)
        case TowerKind.F:
            value = chung_f(args.i, config.bit_budget)
        case kind:
            value = tower_f(args.i, kind, config.bit_budget)
    return value, EXIT_OK


# fmt: off
COMMANDS: dict[str, Command] = {
    #                                 name               description                                           handler              flags
    "gen":             Command("gen",             "Generate a family instance",                         gen,                 (_gen_flags,)),
    "check-pair":      Command("check-pair",      "Check a pair for eps-regularity",                    check_pair,          (_graph, _cell("x", "y"), _eps, _check_mode)),
    "check-triple":    Command("check-triple",    "Check a triple for eps-regularity",                  check_triple,        (_graph, _cell("x", "y", "z"), _eps, _check_mode)),
    "check-partition": Command("check-partition", "Check a partition for eps-regularity or homogeneity", check_partition_cmd, (_graph, _partition, _eps, _kind)),
    "vc":              Command("vc",              "VC dimension with a shattering certificate",         vc,                  (_graph, _kmax)),
    "svc":             Command("svc",             "Slicewise VC dimension of a 3-graph",                svc_cmd,             (_graph, _kmax)),
    "classes":         Command("classes",         "Twin classes and their kinds",                       classes,             (_graph, _classes_flags)),
    "reduce":          Command("reduce",          "Reduce to twin class representatives",               reduce_cmd,          (_graph, _reduce_flags)),
    "transfer":        Command("transfer",        "Transfer a partition and re-check the output",       transfer,            (_graph, _partition, _eps, _transfer_flags)),
    "extract":         Command("extract",         "Extract a copy of a member of Irr(k)",               extract,             (_graph, _extract_flags)),
    "minpart":         Command("minpart",         "Exhaustive minimal partition",                       minpart,             (_graph, _eps, _kind, _minpart_flags)),
    "sweep":           Command("sweep",           "Partition sizes of a family across eps",             sweep,               (_sweep_flags, _kind)),
    "lb-experiment":   Command("lb-experiment",   "Lower-bound constructions at desk scale",            lb_experiment,       (_lb_flags,)),
    "tower":           Command("tower",           "Evaluate a tower-type bound function",               tower_cmd,           (_tower_flags,)),
}
# fmt: on
