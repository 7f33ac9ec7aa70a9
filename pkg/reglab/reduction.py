"""Twin classes, irreducibility and the class partition of a structure."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
import logging

from .const import DEFAULT_EXACT_BUDGET, ClassKind, Kind
from .core import Graph, Hypergraph, Partition, ThreeGraph, VertexSet, induced
from .exceptions import ContractError, DomainError
from .regularity import PartitionVerdict, check_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwinDecomposition:
    """Twin classes of a graph or 3-graph.

    ``kinds`` is filled for graphs only. A graph is irreducible when every
    class is a singleton, a 3-graph when every class has at most two members.
    """

    classes: Partition
    kinds: tuple[str, ...]
    irreducible: bool
    arity: int


def _graph_twins(g: Graph, x: int, y: int) -> bool:
    mask = ~((1 << x) | (1 << y))
    return g.adj[x] & mask == g.adj[y] & mask


def _threegraph_twins(h: ThreeGraph, x: int, y: int) -> bool:
    mask = ~((1 << x) | (1 << y))
    row_x, row_y = h.link[x], h.link[y]
    return all(
        row_x[z] & mask == row_y[z] & mask for z in range(h.n) if z != x and z != y
    )


def _classes(host: Hypergraph, twins) -> list[VertexSet]:
    # the relation is an equivalence, so comparing with the first member suffices
    reps: list[int] = []
    members: list[int] = []
    for v in range(host.n):
        for index, r in enumerate(reps):
            if twins(host, r, v):
                members[index] |= 1 << v
                break
        else:
            reps.append(v)
            members.append(1 << v)
    return [VertexSet.from_bits(m) for m in members]


def _class_kind(g: Graph, members: VertexSet) -> str:
    if len(members) == 1:
        return ClassKind.SINGLETON
    adjacent = [g.has_edge(a, b) for a, b in combinations(members, 2)]
    if all(adjacent):
        return ClassKind.CLIQUE
    if not any(adjacent):
        return ClassKind.INDEPENDENT
    raise ContractError(
        f"twin class {list(members)} is neither a clique nor independent",
        detail=list(members),
    )


def twin_classes_graph(g: Graph) -> TwinDecomposition:
    """The twin partition of a graph with each class's shape."""
    if g.arity != 2:
        raise DomainError("twin_classes_graph needs a graph")
    classes = _classes(g, _graph_twins)
    kinds = tuple(_class_kind(g, c) for c in classes)
    return TwinDecomposition(
        classes=Partition(g.n, classes),
        kinds=kinds,
        irreducible=all(len(c) == 1 for c in classes),
        arity=2,
    )


def twin_classes_threegraph(h: ThreeGraph) -> TwinDecomposition:
    """The twin partition of a 3-graph: x ~ y when xzz' and yzz' agree off {x, y}."""
    if h.arity != 3:
        raise DomainError("twin_classes_threegraph needs a 3-graph")
    classes = _classes(h, _threegraph_twins)
    return TwinDecomposition(
        classes=Partition(h.n, classes),
        kinds=(),
        irreducible=all(len(c) <= 2 for c in classes),
        arity=3,
    )


def twin_classes(host: Hypergraph) -> TwinDecomposition:
    """Dispatch on arity."""
    if host.arity == 2:
        return twin_classes_graph(host)
    return twin_classes_threegraph(host)


def representatives(decomposition: TwinDecomposition) -> VertexSet:
    """Smallest member of each class; two for 3-graph classes of size >= 2."""
    per_class = 1 if decomposition.arity == 2 else 2
    bits = 0
    for part in decomposition.classes:
        for v in list(part)[:per_class]:
            bits |= 1 << v
    return VertexSet.from_bits(bits)


def reduce(host: Hypergraph, exhaustive: bool = False) -> tuple[Hypergraph, tuple[int, ...]]:
    """Induced substructure on class representatives and its index map.

    With ``exhaustive=True`` the reduction repeats until nothing shrinks.
    """
    current, index_map = host, tuple(range(host.n))
    while True:
        keep = representatives(twin_classes(current))
        if len(keep) == current.n:
            return current, index_map
        current, local = induced(current, keep)
        index_map = tuple(index_map[v] for v in local)
        logger.debug("Reduced to %s vertices", current.n)
        if not exhaustive:
            return current, index_map


def class_partition_regular(
    host: Hypergraph, eps, budget: int = DEFAULT_EXACT_BUDGET
) -> tuple[Partition, PartitionVerdict]:
    """The twin partition and its exact regularity verdict."""
    classes = twin_classes(host).classes
    return classes, check_partition(host, classes, eps, Kind.REGULAR, budget)
