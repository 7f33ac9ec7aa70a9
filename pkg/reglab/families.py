"""Generators for the named constructions and checks on their structure.

Every generator returns a :class:`LabeledFamilyInstance`. Labels name vertex
classes with stable keys ("a_1", "b_{1,2}", "b_{}", "U_3", "W_{}") and sides
name the parts of a multipartite construction ("a-side", "u-side", ...), so
transfers and copy checks can refer to structure rather than indices.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
import logging
import random
from typing import Any

import networkx as nx

from .const import HKN_K_MAX, POWERSET_K_MAX, Family, Pattern
from .core import (
    Graph,
    Hypergraph,
    Partition,
    ThreeGraph,
    VertexSet,
    as_fraction,
    induced,
)
from .exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)

# fmt: off
PATTERN_RELATIONS: dict[str, Callable[[int, int], bool]] = {
    Pattern.HALF:       lambda i, j: i <= j,
    Pattern.MATCHING:   lambda i, j: i == j,
    Pattern.COMATCHING: lambda i, j: i != j,
}

PATTERN_FAMILIES = {
    Pattern.HALF:       Family.HALF,
    Pattern.MATCHING:   Family.MATCHING,
    Pattern.COMATCHING: Family.COMATCHING,
}
# fmt: on


@dataclass(frozen=True, eq=False)
class LabeledFamilyInstance:
    """A generated construction together with its named vertex classes."""

    graph: Hypergraph
    labels: dict[str, VertexSet]
    family: str
    sides: dict[str, VertexSet] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        """Vertex count of the underlying structure."""
        return self.graph.n

    def resolve(self, selector: str) -> VertexSet:
        """Turn a side name, a label or "0,1,2" into a vertex set."""
        selector = selector.strip()
        if selector in self.sides:
            return self.sides[selector]
        if selector in self.labels:
            return self.labels[selector]
        if "+" in selector:
            result = VertexSet()
            for piece in selector.split("+"):
                result = result | self.resolve(piece)
            return result
        return parse_vertex_list(selector, self.graph.n)

    def name_of(self, v: int) -> str | None:
        """First label that names v alone."""
        for name, members in self.labels.items():
            if members.bits == 1 << v:
                return name
        return None


def parse_vertex_list(text: str, n: int) -> VertexSet:
    """Parse "0,1,2" (or "" for the empty set) into a vertex set."""
    text = text.strip()
    if not text:
        return VertexSet()
    try:
        members = [int(token) for token in text.split(",")]
    except ValueError as err:
        raise DomainError(f"unknown selector {text!r}") from err
    for v in members:
        if not 0 <= v < n:
            raise DomainError(f"vertex {v} outside 0..{n - 1}")
    return VertexSet(members)


def set_label(prefix: str, members: Iterable[int]) -> str:
    """Label for an index set, e.g. b_{1,2} or W_{}."""
    return f"{prefix}_{{{','.join(str(i) for i in sorted(members))}}}"


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based indices of the set bits of mask."""
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def _range_set(start: int, stop: int) -> VertexSet:
    return VertexSet.from_bits(((1 << (stop - start)) - 1) << start)


def _check_k(k: int, limit: int | None = None) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if limit is not None and k > limit:
        raise CapacityError(f"k = {k} exceeds the guard {limit}")


def gen_powerset_graph(k: int) -> LabeledFamilyInstance:
    """U(k): a_i adjacent to b_S exactly when i is in S."""
    _check_k(k, POWERSET_K_MAX)
    labels = {f"a_{i + 1}": VertexSet.from_bits(1 << i) for i in range(k)}
    for s in range(2**k):
        labels[set_label("b", mask_indices(s))] = VertexSet.from_bits(1 << (k + s))
    edges = [(i, k + s) for s in range(2**k) for i in range(k) if (s >> i) & 1]
    return LabeledFamilyInstance(
        graph=Graph(k + 2**k, edges),
        labels=labels,
        family=Family.POWERSET,
        sides={"a-side": _range_set(0, k), "b-side": _range_set(k, k + 2**k)},
        params={"k": k},
    )


def gen_pattern(pattern: str, k: int) -> LabeledFamilyInstance:
    """H(k), M(k) or Mbar(k) on a_1..a_k, b_1..b_k."""
    _check_k(k)
    try:
        relation = PATTERN_RELATIONS[pattern]
    except KeyError as err:
        raise DomainError(f"unknown pattern {pattern!r}") from err
    labels = {f"a_{i + 1}": VertexSet.from_bits(1 << i) for i in range(k)}
    labels.update({f"b_{j + 1}": VertexSet.from_bits(1 << (k + j)) for j in range(k)})
    edges = [
        (i, k + j) for i in range(k) for j in range(k) if relation(i + 1, j + 1)
    ]
    return LabeledFamilyInstance(
        graph=Graph(2 * k, edges),
        labels=labels,
        family=PATTERN_FAMILIES[pattern],
        sides={"a-side": _range_set(0, k), "b-side": _range_set(k, 2 * k)},
        params={"k": k, "pattern": pattern},
    )


def gen_halfgraph(k: int) -> LabeledFamilyInstance:
    """H(k): a_i b_j for i <= j."""
    return gen_pattern(Pattern.HALF, k)


def gen_matching(k: int) -> LabeledFamilyInstance:
    """M(k): a_i b_i."""
    return gen_pattern(Pattern.MATCHING, k)


def gen_comatching(k: int) -> LabeledFamilyInstance:
    """Mbar(k): a_i b_j for i != j."""
    return gen_pattern(Pattern.COMATCHING, k)


def _check_lists(a_list: Sequence[int], b_list: Sequence[int]) -> None:
    if len(a_list) != len(b_list):
        raise DomainError(
            f"vertex lists differ in length: {len(a_list)} != {len(b_list)}"
        )


def realizes(g: Graph, pattern: str, a_list: Sequence[int], b_list: Sequence[int]) -> bool:
    """Cross adjacency a_i b_j follows the pattern for every i, j."""
    relation = PATTERN_RELATIONS[pattern]
    return all(
        g.has_edge(a, b) == relation(i, j)
        for i, a in enumerate(a_list, start=1)
        for j, b in enumerate(b_list, start=1)
    )


def is_irr_member(g: Graph, a_order: Sequence[int], b_order: Sequence[int]) -> str:
    """Which Irr(k) pattern the ordered lists realise, or "none"."""
    _check_lists(a_order, b_order)
    vertices = list(a_order) + list(b_order)
    if len(set(vertices)) != len(vertices):
        return Pattern.NONE
    for pattern in Pattern.ALL:
        if realizes(g, pattern, a_order, b_order):
            return pattern
    return Pattern.NONE


def is_uv_copy(
    g: Graph,
    pattern: str,
    a_list: Sequence[int],
    b_list: Sequence[int],
    u: VertexSet | None = None,
    v: VertexSet | None = None,
) -> bool:
    """True iff a_list/b_list is a UV-copy of the pattern of that length."""
    _check_lists(a_list, b_list)
    if pattern not in PATTERN_RELATIONS:
        raise DomainError(f"unknown pattern {pattern!r}")
    vertices = list(a_list) + list(b_list)
    if len(set(vertices)) != len(vertices):
        return False
    if any(not 0 <= x < g.n for x in vertices):
        raise DomainError("copy assignment leaves the vertex range")
    if u is not None and not all(a in u for a in a_list):
        return False
    if v is not None and not all(b in v for b in b_list):
        return False
    return realizes(g, pattern, a_list, b_list)


def bip_double(
    g: Graph, z1: VertexSet | None = None, z2: VertexSet | None = None
) -> LabeledFamilyInstance:
    """Bip(G) restricted to u-copies of z1 and w-copies of z2."""
    z1 = g.vertices if z1 is None else z1
    z2 = g.vertices if z2 is None else z2
    left, right = list(z1), list(z2)
    offset = len(left)
    edges = [
        (i, offset + j)
        for i, a in enumerate(left)
        for j, b in enumerate(right)
        if g.has_edge(a, b)
    ]
    labels = {f"u_{a}": VertexSet.from_bits(1 << i) for i, a in enumerate(left)}
    labels.update(
        {f"w_{b}": VertexSet.from_bits(1 << (offset + j)) for j, b in enumerate(right)}
    )
    return LabeledFamilyInstance(
        graph=Graph(offset + len(right), edges),
        labels=labels,
        family=Family.BIP,
        sides={
            "u-side": _range_set(0, offset),
            "w-side": _range_set(offset, offset + len(right)),
        },
        params={"source_n": g.n, "z1": tuple(left), "z2": tuple(right)},
    )


def trip_triple(
    h: ThreeGraph, z2: VertexSet | None = None, z3: VertexSet | None = None
) -> LabeledFamilyInstance:
    """Trip(H) with x-copies of every vertex, y-copies of z2, z-copies of z3."""
    z2 = h.vertices if z2 is None else z2
    z3 = h.vertices if z3 is None else z3
    xs, ys, zs = list(range(h.n)), list(z2), list(z3)
    y_pos = {v: h.n + j for j, v in enumerate(ys)}
    z_pos = {v: h.n + len(ys) + j for j, v in enumerate(zs)}
    edges = set()
    for edge in h.edges:
        for p, q, r in permutations(edge):
            if q in y_pos and r in z_pos:
                edges.add((p, y_pos[q], z_pos[r]))
    labels = {f"x_{v}": VertexSet.from_bits(1 << v) for v in xs}
    labels.update({f"y_{v}": VertexSet.from_bits(1 << pos) for v, pos in y_pos.items()})
    labels.update({f"z_{v}": VertexSet.from_bits(1 << pos) for v, pos in z_pos.items()})
    total = h.n + len(ys) + len(zs)
    return LabeledFamilyInstance(
        graph=ThreeGraph(total, edges),
        labels=labels,
        family=Family.TRIP,
        sides={
            "x-side": _range_set(0, h.n),
            "y-side": _range_set(h.n, h.n + len(ys)),
            "z-side": _range_set(h.n + len(ys), total),
        },
        params={"source_n": h.n, "z2": tuple(ys), "z3": tuple(zs)},
    )


def bipartition(inst) -> tuple[str, VertexSet, str, VertexSet]:
    """The two named sides of a bipartite instance, checked."""
    if not isinstance(inst, LabeledFamilyInstance):
        raise DomainError("a bipartite instance with two labelled sides is required")
    if inst.graph.arity != 2 or len(inst.sides) != 2:
        raise DomainError(f"{inst.family} instance does not carry a bipartition")
    (u_name, u), (v_name, v) = inst.sides.items()
    if u.bits & v.bits or (u | v) != inst.graph.vertices:
        raise DomainError("bipartition sides must be disjoint and cover the graph")
    for a, b in inst.graph.edges:
        if (a in u) == (b in u):
            raise DomainError(f"edge ({a}, {b}) lies inside one side")
    return u_name, u, v_name, v


def otimes(n: int, inst: LabeledFamilyInstance) -> LabeledFamilyInstance:
    """n (x) G: adjoin apexes c_1..c_n over every edge of a bipartite G."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    u_name, u, v_name, v = bipartition(inst)
    base = inst.graph.n
    edges = [(a, b, base + i) for a, b in inst.graph.edges for i in range(n)]
    labels = dict(inst.labels)
    labels.update({f"c_{i + 1}": VertexSet.from_bits(1 << (base + i)) for i in range(n)})
    return LabeledFamilyInstance(
        graph=ThreeGraph(base + n, edges),
        labels=labels,
        family=Family.OTIMES,
        sides={u_name: u, v_name: v, "c-side": _range_set(base, base + n)},
        params={"n": n, "u_side": u_name, "v_side": v_name, "source_n": base},
    )


def _suffix(inst: LabeledFamilyInstance, v: int) -> str:
    name = inst.name_of(v)
    if name is None:
        return str(v)
    return name.split("_", 1)[1] if "_" in name else name


def ghat(inst: LabeledFamilyInstance) -> LabeledFamilyInstance:
    """G-hat: a_u b_v c_v for every edge uv, doubling the V side."""
    _, u, _, v = bipartition(inst)
    us, vs = list(u), list(v)
    a_pos = {x: i for i, x in enumerate(us)}
    b_pos = {x: len(us) + j for j, x in enumerate(vs)}
    c_pos = {x: len(us) + len(vs) + j for j, x in enumerate(vs)}
    edges = []
    for a, b in inst.graph.edges:
        x, y = (a, b) if a in u else (b, a)
        edges.append((a_pos[x], b_pos[y], c_pos[y]))
    labels: dict[str, VertexSet] = {}
    for prefix, positions in (("a", a_pos), ("b", b_pos), ("c", c_pos)):
        for x, pos in positions.items():
            name = f"{prefix}_{_suffix(inst, x)}"
            if name in labels:
                name = f"{prefix}_{x}"
            labels[name] = VertexSet.from_bits(1 << pos)
    total = len(us) + 2 * len(vs)
    return LabeledFamilyInstance(
        graph=ThreeGraph(total, edges),
        labels=labels,
        family=Family.GHAT,
        sides={
            "a-side": _range_set(0, len(us)),
            "b-side": _range_set(len(us), len(us) + len(vs)),
            "c-side": _range_set(len(us) + len(vs), total),
        },
        params={
            "single_side": "a-side",
            "doubled": ("b-side", "c-side"),
            "K1": len(vs),
            "K2": len(us),
        },
    )


def uhat(k: int) -> LabeledFamilyInstance:
    """U-hat(k): a_i c_i b_S for i in S, doubling the index side of U(k)."""
    _check_k(k, POWERSET_K_MAX)
    labels = {f"a_{i + 1}": VertexSet.from_bits(1 << i) for i in range(k)}
    labels.update({f"c_{i + 1}": VertexSet.from_bits(1 << (k + i)) for i in range(k)})
    for s in range(2**k):
        labels[set_label("b", mask_indices(s))] = VertexSet.from_bits(1 << (2 * k + s))
    edges = [
        (i, k + i, 2 * k + s) for s in range(2**k) for i in range(k) if (s >> i) & 1
    ]
    total = 2 * k + 2**k
    return LabeledFamilyInstance(
        graph=ThreeGraph(total, edges),
        labels=labels,
        family=Family.UHAT,
        sides={
            "a-side": _range_set(0, k),
            "c-side": _range_set(k, 2 * k),
            "b-side": _range_set(2 * k, total),
        },
        params={
            "single_side": "b-side",
            "doubled": ("a-side", "c-side"),
            "K1": k,
            "K2": 2**k,
            "k": k,
        },
    )


FillCallback = Callable[[tuple[int, ...], tuple[int, ...]], bool]


def blowup(
    base,
    sizes: int | Sequence[int],
    simple: bool = True,
    fill: FillCallback | None = None,
) -> LabeledFamilyInstance:
    """Replace every base vertex u by a class X_u of sizes[u] vertices.

    Cross cells between distinct classes follow base adjacency. With
    ``simple=False`` the within-class and repeated-class positions are asked
    of ``fill(vertices, classes)``; without a callback they stay empty.
    """
    inst = base if isinstance(base, LabeledFamilyInstance) else None
    host = inst.graph if inst else base
    if isinstance(sizes, int):
        sizes = [sizes] * host.n
    sizes = list(sizes)
    if len(sizes) != host.n:
        raise DomainError(f"need {host.n} class sizes, got {len(sizes)}")
    if any(not isinstance(s, int) or s < 1 for s in sizes):
        raise DomainError("class sizes must be positive integers")

    classes = []
    offset = 0
    for s in sizes:
        classes.append(_range_set(offset, offset + s))
        offset += s

    edges = set()
    for edge in host.edges:
        for combo in product(*(classes[u] for u in edge)):
            edges.add(tuple(sorted(combo)))
    if not simple and fill is not None:
        edges |= _filled_edges(host, classes, fill)

    if inst is not None:
        labels = {name: _expand(members, classes) for name, members in inst.labels.items()}
        sides = {name: _expand(members, classes) for name, members in inst.sides.items()}
        params = {**inst.params, "base_family": inst.family}
    else:
        labels = {f"X_{u}": part for u, part in enumerate(classes)}
        sides, params = {}, {}
    params.update({"sizes": tuple(sizes), "simple": simple, "classes": tuple(classes)})
    return LabeledFamilyInstance(
        graph=type(host)(offset, edges),
        labels=labels,
        family=Family.BLOWUP,
        sides=sides,
        params=params,
    )


def _expand(members: VertexSet, classes: Sequence[VertexSet]) -> VertexSet:
    bits = 0
    for u in members:
        bits |= classes[u].bits
    return VertexSet.from_bits(bits)


def _filled_edges(host: Hypergraph, classes, fill: FillCallback) -> set:
    edges = set()
    n = host.n
    if host.arity == 2:
        for u in range(n):
            for pair in combinations(classes[u], 2):
                if fill(pair, (u, u)):
                    edges.add(pair)
        return edges
    for u in range(n):
        for triple in combinations(classes[u], 3):
            if fill(triple, (u, u, u)):
                edges.add(triple)
        for w in range(n):
            if w == u:
                continue
            for p, q in combinations(classes[u], 2):
                for r in classes[w]:
                    if fill((p, q, r), (u, u, w)):
                        edges.add(tuple(sorted((p, q, r))))
    return edges


def class_partition(inst: LabeledFamilyInstance) -> Partition:
    """The blow-up classes as a partition."""
    try:
        return Partition(inst.graph.n, inst.params["classes"])
    except KeyError as err:
        raise DomainError(f"{inst.family} instance carries no blow-up classes") from err


def is_blowup_of(host: Hypergraph, base: Hypergraph, classes: Partition) -> bool:
    """Cross cells between distinct classes match base adjacency exactly."""
    if len(classes) != base.n:
        raise DomainError(f"need {base.n} classes, got {len(classes)}")
    if host.arity != base.arity:
        raise DomainError("host and base differ in arity")
    parts = classes.parts
    if host.arity == 2:
        for u, w in combinations(range(base.n), 2):
            expected = parts[w].bits if base.has_edge(u, w) else 0
            for p in parts[u]:
                if host.adj[p] & parts[w].bits != expected:
                    return False
        return True
    for u, w, x in combinations(range(base.n), 3):
        expected = parts[x].bits if base.has_edge(u, w, x) else 0
        for p in parts[u]:
            row = host.link[p]
            for q in parts[w]:
                if row[q] & parts[x].bits != expected:
                    return False
    return True


def induced_instance(
    inst: LabeledFamilyInstance, s: VertexSet, rename: dict[str, str] | None = None
) -> LabeledFamilyInstance:
    """Restrict an instance to s, keeping every label that survives."""
    sub, index_map = induced(inst.graph, s)
    position = {old: new for new, old in enumerate(index_map)}
    rename = rename or {}

    def shrink(members: VertexSet) -> VertexSet:
        return VertexSet(position[v] for v in members if v in position)

    labels = {}
    for name, members in inst.labels.items():
        kept = shrink(members)
        if kept:
            labels[_renamed(name, rename)] = kept
    sides = {name: shrink(members) for name, members in inst.sides.items()}
    params = dict(inst.params)
    if "classes" in params:
        params["classes"] = tuple(c for c in (shrink(c) for c in params["classes"]) if c)
    return LabeledFamilyInstance(
        graph=sub, labels=labels, family=inst.family, sides=sides, params=params
    )


def _renamed(name: str, rename: dict[str, str]) -> str:
    prefix, sep, rest = name.partition("_")
    return f"{rename.get(prefix, prefix)}{sep}{rest}"


def gen_hkn(k: int, n: int) -> LabeledFamilyInstance:
    """H(k, n): K_3[U_i, V_i, W_S] for every S and every i in S."""
    _check_k(k, HKN_K_MAX)
    _check_k(n)
    labels = {}
    offset = 0
    for prefix in ("U", "V"):
        for i in range(k):
            labels[f"{prefix}_{i + 1}"] = _range_set(offset, offset + n)
            offset += n
    w_parts = []
    for s in range(2**k):
        part = _range_set(offset, offset + n)
        labels[set_label("W", mask_indices(s))] = part
        w_parts.append(part)
        offset += n
    edges = []
    for s in range(2**k):
        for i in range(k):
            if (s >> i) & 1:
                u_part = labels[f"U_{i + 1}"]
                v_part = labels[f"V_{i + 1}"]
                edges.extend(product(u_part, v_part, w_parts[s]))
    return LabeledFamilyInstance(
        graph=ThreeGraph(offset, edges),
        labels=labels,
        family=Family.HKN,
        sides={
            "U": _range_set(0, k * n),
            "V": _range_set(k * n, 2 * k * n),
            "W": _range_set(2 * k * n, offset),
        },
        params={"k": k, "n": n},
    )


def gen_uk_blowup_lb(
    K: int, n: int, small: int
) -> tuple[LabeledFamilyInstance, LabeledFamilyInstance]:
    """Gamma, a simple N-blow-up of U(K), and G = Gamma[V + U].

    N is ceil(2^K n / K). Parts V_i replace a_i and W_S replace b_S; G keeps
    every V_i and the first ``small`` vertices U_S of each W_S.
    """
    _check_k(K, POWERSET_K_MAX)
    _check_k(n)
    _check_k(small)
    big_n = -(-(2**K * n) // K)
    if small > big_n:
        raise DomainError(f"small side {small} exceeds the blow-up size {big_n}")
    base = gen_powerset_graph(K)
    expanded = blowup(base, big_n)
    labels = {}
    for name, members in expanded.labels.items():
        labels[_renamed(name, {"a": "V", "b": "W"})] = members
    gamma = LabeledFamilyInstance(
        graph=expanded.graph,
        labels=labels,
        family=Family.UK_BLOWUP_LB,
        sides={"V": expanded.sides["a-side"], "W": expanded.sides["b-side"]},
        params={**expanded.params, "K": K, "n": n, "small": small, "N": big_n},
    )
    keep = gamma.sides["V"]
    for name, members in labels.items():
        if name.startswith("W_"):
            keep = keep | VertexSet(list(members)[:small])
    shrunk = induced_instance(gamma, keep, rename={"W": "U"})
    g_inst = LabeledFamilyInstance(
        graph=shrunk.graph,
        labels=shrunk.labels,
        family=Family.UK_BLOWUP_LB,
        sides={"V": shrunk.sides["V"], "U": shrunk.sides["W"]},
        params=shrunk.params,
    )
    logger.debug("UK blow-up: K=%s n=%s N=%s small=%s", K, n, big_n, small)
    return gamma, g_inst


def _coin(rng: random.Random, p: Fraction) -> bool:
    return rng.random() < p


def random_graph(n: int, p="1/2", seed: int = 0) -> Graph:
    """G(n, p) from a seeded generator."""
    rng, p = random.Random(seed), as_fraction(p)
    return Graph(n, [e for e in combinations(range(n), 2) if _coin(rng, p)])


def random_threegraph(n: int, p="1/2", seed: int = 0) -> ThreeGraph:
    """Random 3-graph with edge probability p."""
    rng, p = random.Random(seed), as_fraction(p)
    return ThreeGraph(n, [e for e in combinations(range(n), 3) if _coin(rng, p)])


def random_bipartite(left: int, right: int, p="1/2", seed: int = 0) -> LabeledFamilyInstance:
    """Random bipartite graph with sides a-side and b-side."""
    rng, p = random.Random(seed), as_fraction(p)
    edges = [
        (i, left + j) for i in range(left) for j in range(right) if _coin(rng, p)
    ]
    labels = {f"a_{i + 1}": VertexSet.from_bits(1 << i) for i in range(left)}
    labels.update({f"b_{j + 1}": VertexSet.from_bits(1 << (left + j)) for j in range(right)})
    return LabeledFamilyInstance(
        graph=Graph(left + right, edges),
        labels=labels,
        family=Family.RANDOM,
        sides={"a-side": _range_set(0, left), "b-side": _range_set(left, left + right)},
        params={"p": p, "seed": seed},
    )


def random_tripartite(sizes: Sequence[int], p="1/2", seed: int = 0) -> LabeledFamilyInstance:
    """Random 3-partite 3-graph with sides X1, X2, X3."""
    if len(sizes) != 3:
        raise DomainError("a tripartite instance needs three side sizes")
    rng, p = random.Random(seed), as_fraction(p)
    starts = [0, sizes[0], sizes[0] + sizes[1]]
    sides = {
        f"X{i + 1}": _range_set(starts[i], starts[i] + sizes[i]) for i in range(3)
    }
    edges = [t for t in product(*sides.values()) if _coin(rng, p)]
    return LabeledFamilyInstance(
        graph=ThreeGraph(sum(sizes), edges),
        labels={},
        family=Family.RANDOM,
        sides=sides,
        params={"p": p, "seed": seed},
    )


def path_graph(n: int) -> Graph:
    """Path 0 - 1 - ... - (n-1)."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise DomainError("a cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int, arity: int = 2) -> Hypergraph:
    """K_n or the complete 3-graph."""
    cls = Graph if arity == 2 else ThreeGraph
    return cls(n, combinations(range(n), arity))


def edgeless_graph(n: int, arity: int = 2) -> Hypergraph:
    """No edges at all."""
    return (Graph if arity == 2 else ThreeGraph)(n)


def complete_bipartite(left: int, right: int) -> LabeledFamilyInstance:
    """K_{left,right} with sides a-side and b-side."""
    inst = random_bipartite(left, right, p=1)
    return LabeledFamilyInstance(
        graph=inst.graph,
        labels=inst.labels,
        family=Family.BASIC,
        sides=inst.sides,
        params={"left": left, "right": right},
    )


def to_networkx(host: Hypergraph) -> nx.Graph:
    """Export a graph; a 3-graph becomes its vertex-edge incidence graph."""
    out = nx.Graph()
    out.add_nodes_from(range(host.n), bipartite=0)
    if host.arity == 2:
        out.add_edges_from(host.edges)
        return out
    for index, edge in enumerate(host.edges):
        node = ("e", index)
        out.add_node(node, bipartite=1)
        out.add_edges_from((v, node) for v in edge)
    return out
