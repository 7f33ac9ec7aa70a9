"""UV-copies of H(k), M(k) and Mbar(k), and Irr(k) members of irreducible structures.

Two finders are offered. The brute-force one enumerates ordered a-lists and
reads the b-list off the adjacency traces, so it is complete up to its guard.
The iterative one follows the halving construction: it builds a long
sequence of (x_i, y_i) pairs whose cross adjacency is fixed above the
diagonal, filters it twice by majority and reads a copy off what is left.
It needs many vertices and returns nothing on small inputs where brute force
still succeeds.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, permutations, product
import logging

from .const import (
    COPY_K_GUARD,
    DEFAULT_ITERATION_BUDGET,
    TRIP_WITNESS_K_GUARD,
    ExtractMode,
    Pattern,
)
from .core import Graph, ThreeGraph, VertexSet
from .exceptions import CapacityError, ContractError, DomainError, SearchExhaustedError
from .families import PATTERN_RELATIONS, bip_double, is_irr_member, is_uv_copy, trip_triple
from .reduction import twin_classes_graph, twin_classes_threegraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CopyResult:
    """A re-verified copy: a_i in U, b_j in V, a_i b_j an edge iff the pattern says so."""

    pattern: str
    k: int
    a_list: tuple[int, ...]
    b_list: tuple[int, ...]
    valid: bool
    method: str
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class TripWitness:
    """An induced copy of G-hat inside Trip(H).

    ``singles`` are placed as x-copies; each entry of ``doubled`` is the pair
    of source vertices whose y- and z-copies stand for one doubled vertex.
    ``trip_vertices`` lists the chosen vertices of Trip(H).
    """

    branch: str
    pattern: str
    k: int
    singles: tuple[int, ...]
    doubled: tuple[tuple[int, int], ...]
    trip_vertices: tuple[int, ...]
    valid: bool


def _check_k(k: int, guard: int | None) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if guard is not None and k > guard:
        raise CapacityError(f"k = {k} exceeds the exhaustive guard {guard}")


def _check_sides(g: Graph, u: VertexSet, v: VertexSet) -> None:
    if g.arity != 2:
        raise DomainError("copy search needs a graph")
    for name, side in (("u", u), ("v", v)):
        if not side:
            raise DomainError(f"side {name} is empty")
        if side.max_vertex() >= g.n:
            raise DomainError(f"side {name} leaves the vertex range 0..{g.n - 1}")


def _trace(g: Graph, a_list: Sequence[int], b: int) -> int:
    mask = 0
    for i, a in enumerate(a_list):
        if g.has_edge(a, b):
            mask |= 1 << i
    return mask


def _pattern_traces(pattern: str, k: int) -> list[int]:
    relation = PATTERN_RELATIONS[pattern]
    return [
        sum(1 << (i - 1) for i in range(1, k + 1) if relation(i, j)) for j in range(1, k + 1)
    ]


def iter_uv_copies(
    g: Graph, u: VertexSet, v: VertexSet, k: int, all_b: bool = False
) -> Iterator[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    """Yield (pattern, a_list, b_list) copies, a-lists in lexicographic order.

    For a fixed a-list the b_j are determined up to their trace on the
    a-list; the smallest vertex with the right trace is taken unless
    ``all_b`` asks for every choice.
    """
    traces = {pattern: _pattern_traces(pattern, k) for pattern in Pattern.ALL}
    for a_list in permutations(u, k):
        taken = set(a_list)
        by_trace: dict[int, list[int]] = {}
        for b in v:
            if b not in taken:
                by_trace.setdefault(_trace(g, a_list, b), []).append(b)
        for pattern in Pattern.ALL:
            options = [by_trace.get(t) for t in traces[pattern]]
            if not all(options):
                continue
            if not all_b:
                yield pattern, a_list, tuple(o[0] for o in options)
                continue
            for b_list in product(*options):
                if len(set(b_list)) == k:
                    yield pattern, a_list, b_list


def _verified(
    g: Graph, pattern: str, a_list, b_list, u: VertexSet, v: VertexSet, method: str, notes=()
) -> CopyResult:
    if not is_uv_copy(g, pattern, a_list, b_list, u, v):
        raise ContractError(
            f"{method} produced an invalid {pattern} copy",
            detail={"a": list(a_list), "b": list(b_list)},
        )
    return CopyResult(pattern, len(a_list), tuple(a_list), tuple(b_list), True, method, tuple(notes))


def find_uv_copy_bruteforce(g: Graph, u: VertexSet, v: VertexSet, k: int) -> CopyResult | None:
    """Lexicographically least copy of any of the three patterns, or None."""
    _check_sides(g, u, v)
    _check_k(k, COPY_K_GUARD)
    for pattern, a_list, b_list in iter_uv_copies(g, u, v, k):
        return _verified(g, pattern, a_list, b_list, u, v, ExtractMode.BRUTE)
    logger.debug("no %s-copy in a %s-vertex graph", k, g.n)
    return None


def _check_separation(g: Graph, u: VertexSet, v: VertexSet) -> None:
    for u1, u2 in combinations(u, 2):
        if not (g.neighbors(u1) ^ g.neighbors(u2)) & v:
            raise ContractError(
                f"vertices {u1} and {u2} of U have the same neighbours in V",
                detail=(u1, u2),
            )


def _pick_step(g: Graph, y_set: VertexSet, v: VertexSet) -> tuple[int, int, int] | None:
    """Least (z0, z1) in Y and least x in V off both with x ~ z1, x !~ z0."""
    for z0, z1 in permutations(y_set, 2):
        candidates = (g.neighbors(z1) - g.neighbors(z0)) & v - VertexSet([z0, z1])
        if candidates:
            return z0, z1, candidates.min()
    return None


def _majority(bits: Sequence[int]) -> int:
    """1 unless strictly fewer than half the entries are 1."""
    return 1 if 2 * sum(bits) >= len(bits) else 0


def _distinct_pairs(a_list: Sequence[int], b_list: Sequence[int]) -> tuple[list[int], list[int]]:
    """Drop pairs that reuse a vertex already kept."""
    used: set[int] = set()
    kept_a, kept_b = [], []
    for a, b in zip(a_list, b_list):
        if a == b or a in used or b in used:
            continue
        used.update((a, b))
        kept_a.append(a)
        kept_b.append(b)
    return kept_a, kept_b


def _orientations(a_list: list[int], b_list: list[int]):
    yield a_list, b_list
    yield a_list[::-1], b_list[::-1]
    # edge iff i > j turns into a half graph after a shift and a reversal
    yield a_list[1:][::-1], b_list[:-1][::-1]


def extract_uv_copy_iterative(
    g: Graph, u: VertexSet, v: VertexSet, k: int, budget: int = DEFAULT_ITERATION_BUDGET
) -> CopyResult | None:
    """Copy of H(k), M(k) or Mbar(k) built by repeated halving, or None.

    Raises ContractError when two vertices of U cannot be told apart by V.
    The realised pattern is read off the result, not predicted from the
    branch bits.
    """
    _check_sides(g, u, v)
    _check_k(k, None)
    if budget < 1:
        raise DomainError("budget must be positive")
    _check_separation(g, u, v)

    xs: list[int] = []
    ys: list[int] = []
    alphas: list[int] = []
    y_set = u
    while len(y_set) >= 2 and len(xs) < budget:
        step = _pick_step(g, y_set, v)
        if step is None:
            break
        z0, z1, x = step
        inside = g.neighbors(x) & y_set
        alpha = 1 if 2 * len(inside) >= len(y_set) else 0
        following = inside if alpha else y_set - inside - VertexSet([x])
        if 2 * len(following) < len(y_set) - 2:
            raise ContractError(f"halving step kept {len(following)} of {len(y_set)}")
        xs.append(x)
        ys.append(z0 if alpha else z1)
        alphas.append(alpha)
        y_set = following
    logger.debug("halving ran %s steps", len(xs))

    alpha = _majority(alphas) if alphas else 1
    current = [i for i, a in enumerate(alphas) if a == alpha]
    pivots: list[int] = []
    taus: list[int] = []
    while current:
        pivot, rest = current[-1], current[:-1]
        hits = [j for j in rest if g.has_edge(xs[pivot], ys[j])]
        tau = 1 if 2 * len(hits) >= len(rest) else 0
        pivots.append(pivot)
        taus.append(tau)
        current = hits if tau else [j for j in rest if j not in set(hits)]
    tau = _majority(taus) if taus else 1
    chosen = sorted(p for p, t in zip(pivots, taus) if t == tau)

    notes = (f"{len(xs)} halving steps", f"alpha={alpha}", f"tau={tau}", f"{len(chosen)} pairs kept")
    a_seq = [ys[i] for i in chosen]
    b_seq = [xs[i] for i in chosen]
    for a_list, b_list in _orientations(a_seq, b_seq):
        a_list, b_list = _distinct_pairs(a_list, b_list)
        if len(a_list) < k:
            continue
        a_list, b_list = a_list[:k], b_list[:k]
        for pattern in Pattern.ALL:
            if is_uv_copy(g, pattern, a_list, b_list, u, v):
                return _verified(g, pattern, a_list, b_list, u, v, ExtractMode.ITERATIVE, notes)
    logger.info("iterative extraction found no %s-copy (%s)", k, ", ".join(notes))
    return None


def find_irr_subgraph(g: Graph, k: int) -> CopyResult:
    """An induced Irr(k) member of an irreducible graph.

    Looks for a copy of a 2k-pattern in Bip(G) between the u- and w-copies,
    maps it back to G and drops pairs that reuse a vertex.
    """
    if g.arity != 2:
        raise DomainError("find_irr_subgraph needs a graph")
    _check_k(k, COPY_K_GUARD)
    decomposition = twin_classes_graph(g)
    if not decomposition.irreducible:
        raise ContractError("graph is not irreducible", detail=decomposition.classes)
    bip = bip_double(g)
    for pattern, a_list, b_list in iter_uv_copies(
        bip.graph, bip.sides["u-side"], bip.sides["w-side"], 2 * k, all_b=True
    ):
        c_list, d_list = _distinct_pairs(a_list, [b - g.n for b in b_list])
        if len(c_list) < k:
            continue
        c_list, d_list = c_list[:k], d_list[:k]
        tag = is_irr_member(g, c_list, d_list)
        if tag != Pattern.NONE:
            return CopyResult(
                tag,
                k,
                tuple(c_list),
                tuple(d_list),
                True,
                ExtractMode.BIP,
                (f"from a {pattern} copy of size {2 * k} in Bip(G)",),
            )
    raise SearchExhaustedError(
        f"no Irr({k}) member found in the {g.n}-vertex graph", detail={"n": g.n, "k": k}
    )


def _trip_copy_ok(
    trip: ThreeGraph, chosen: tuple[int, ...], expected: set[frozenset[int]]
) -> bool:
    return all(
        trip.has_edge(*triple) == (frozenset(triple) in expected)
        for triple in combinations(chosen, 3)
    )


def equiv3_trip_witness(h: ThreeGraph, k: int) -> TripWitness:
    """An induced G-hat in Trip(H) for G one of H(k), M(k), Mbar(k).

    When at least half the twin classes are singletons, the auxiliary
    bipartite graph joins each singleton u to the ordered pairs (b, c) with
    ubc an edge; otherwise it joins each two-element class {x, y} to the
    vertices v with vxy an edge. A copy found there is mapped to Trip(H) and
    checked as an induced sub-3-graph.
    """
    if h.arity != 3:
        raise DomainError("equiv3_trip_witness needs a 3-graph")
    _check_k(k, TRIP_WITNESS_K_GUARD)
    decomposition = twin_classes_threegraph(h)
    if not decomposition.irreducible:
        raise ContractError("3-graph is not irreducible", detail=decomposition.classes)
    singles = [c.min() for c in decomposition.classes if len(c) == 1]
    pairs = [tuple(c) for c in decomposition.classes if len(c) == 2]
    n = h.n

    if len(singles) >= len(pairs):
        branch = "singletons"
        y_items: list = singles
        x_items: list = list(permutations(range(n), 2))

        def joined(y, x) -> bool:
            return h.has_edge(y, *x)

    else:
        branch = "pairs"
        y_items = pairs
        x_items = list(range(n))

        def joined(y, x) -> bool:
            return h.has_edge(x, *y)

    offset = len(y_items)
    gamma = Graph(
        offset + len(x_items),
        [
            (i, offset + j)
            for i, y in enumerate(y_items)
            for j, x in enumerate(x_items)
            if joined(y, x)
        ],
    )
    logger.debug("auxiliary graph (%s branch): %s", branch, gamma)
    trip = trip_triple(h).graph
    y_side = VertexSet(range(offset))
    x_side = VertexSet(range(offset, gamma.n))
    for pattern, a_list, b_list in iter_uv_copies(gamma, y_side, x_side, k, all_b=True):
        relation = PATTERN_RELATIONS[pattern]
        a_items = [y_items[a] for a in a_list]
        b_items = [x_items[b - offset] for b in b_list]
        if branch == "singletons":
            single_side, doubled = a_items, b_items

            def related(s: int, d: int) -> bool:
                return relation(s + 1, d + 1)

        else:
            single_side, doubled = b_items, a_items

            def related(s: int, d: int) -> bool:
                return relation(d + 1, s + 1)

        chosen = (
            *single_side,
            *(n + p for p, _ in doubled),
            *(2 * n + q for _, q in doubled),
        )
        if len(set(chosen)) != len(chosen):
            continue
        expected = {
            frozenset((s, n + p, 2 * n + q))
            for i, s in enumerate(single_side)
            for j, (p, q) in enumerate(doubled)
            if related(i, j)
        }
        if _trip_copy_ok(trip, chosen, expected):
            return TripWitness(
                branch=branch,
                pattern=pattern,
                k=k,
                singles=tuple(single_side),
                doubled=tuple(tuple(d) for d in doubled),
                trip_vertices=chosen,
                valid=True,
            )
    raise SearchExhaustedError(
        f"no induced G-hat for k = {k} found in Trip(H)", detail={"branch": branch}
    )
