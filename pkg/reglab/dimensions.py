"""VC dimension of graphs and 3-graphs, slice graphs and slicewise VC dimension."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import logging

from .const import VC_K_GUARD, Certificate
from .core import Graph, ThreeGraph
from .exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShatterCertificate:
    """Vertices shattering [k].

    ``a_vertices`` holds vertices (graphs) or vertex pairs (3-graphs);
    ``b_vertices`` maps each index set S, as a bitmask over [k], to its vertex.
    """

    kind: str
    k: int
    a_vertices: tuple = ()
    b_vertices: dict[int, int] = field(default_factory=dict)
    slice_vertex: int | None = None

    def named_vertices(self) -> list[int]:
        """Every vertex the certificate uses."""
        named = []
        for a in self.a_vertices:
            named.extend(a if isinstance(a, tuple) else (a,))
        named.extend(self.b_vertices.values())
        return named

    def verify(self, host) -> bool:
        """Distinct vertices and the exact adjacency biconditional for all (i, S)."""
        named = self.named_vertices()
        if len(set(named)) != len(named) or len(self.b_vertices) != 2**self.k:
            return False
        if self.kind == Certificate.SLICEWISE:
            if self.slice_vertex is None:
                return self.k == 0
            host = slice_graph(host, self.slice_vertex)
        for s, b in self.b_vertices.items():
            for i, a in enumerate(self.a_vertices):
                inside = (s >> i) & 1 == 1
                if isinstance(a, tuple):
                    hit = host.has_edge(a[0], a[1], b)
                else:
                    hit = host.has_edge(a, b)
                if hit != inside:
                    return False
        return True


@dataclass(frozen=True)
class DimensionResult:
    """Largest k found; ``at_least`` when the search stopped at k_max."""

    value: int
    certificate: ShatterCertificate
    at_least: bool = False


def _check_k_max(k_max: int) -> None:
    if not isinstance(k_max, int) or k_max < 0:
        raise DomainError(f"k_max must be a non-negative integer, got {k_max!r}")
    if k_max > VC_K_GUARD:
        raise CapacityError(f"k_max = {k_max} exceeds the guard {VC_K_GUARD}")


def _match_traces(traces: dict[int, int], k: int) -> dict[int, int] | None:
    """Map each S to the smallest vertex whose trace is S."""
    found: dict[int, int] = {}
    for w in sorted(traces):
        found.setdefault(traces[w], w)
    if len(found) < 2**k:
        return None
    return {s: found[s] for s in range(2**k)}


def _shatter_graph(g: Graph, k: int) -> ShatterCertificate | None:
    if g.n < k + 2**k:
        return None
    half = 2 ** (k - 1)
    # a_i sees 2^(k-1) of the b's and misses the other 2^(k-1)
    candidates = [
        v for v in range(g.n) if g.degree(v) >= half and g.n - 1 - g.degree(v) >= half
    ]
    for a_tuple in combinations(candidates, k):
        used = sum(1 << a for a in a_tuple)
        traces = {}
        for w in range(g.n):
            if (used >> w) & 1:
                continue
            traces[w] = sum(1 << i for i, a in enumerate(a_tuple) if g.has_edge(a, w))
        matched = _match_traces(traces, k)
        if matched is not None:
            return ShatterCertificate(Certificate.GRAPH, k, a_tuple, matched)
    return None


def _shatter_threegraph(h: ThreeGraph, k: int) -> ShatterCertificate | None:
    if h.n < 2 * k + 2**k:
        return None
    half = 2 ** (k - 1)
    pairs = [
        (x, y)
        for x, y in combinations(range(h.n), 2)
        if h.link[x][y].bit_count() >= half
    ]
    for chosen in combinations(pairs, k):
        flat = [v for pair in chosen for v in pair]
        if len(set(flat)) != len(flat):
            continue
        used = sum(1 << v for v in flat)
        traces = {}
        for w in range(h.n):
            if (used >> w) & 1:
                continue
            traces[w] = sum(
                1 << i for i, (x, y) in enumerate(chosen) if (h.link[x][y] >> w) & 1
            )
        matched = _match_traces(traces, k)
        if matched is not None:
            return ShatterCertificate(Certificate.THREEGRAPH, k, chosen, matched)
    return None


def _search(host, k_max: int, shatter, kind: str) -> DimensionResult:
    _check_k_max(k_max)
    best = ShatterCertificate(kind, 0, (), {0: 0}) if host.n else ShatterCertificate(kind, 0)
    for k in range(1, k_max + 1):
        found = shatter(host, k)
        if found is None:
            logger.debug("No %s certificate at k=%s", kind, k)
            return DimensionResult(best.k, best)
        best = found
    return DimensionResult(best.k, best, at_least=k_max > 0 and best.k == k_max)


def vc_graph(g: Graph, k_max: int = 3) -> DimensionResult:
    """VC dimension of a graph, searched up to k_max.

    A k-certificate yields one for k - 1 by dropping a_k, so the search stops
    at the first k without one.
    """
    if g.arity != 2:
        raise DomainError("vc_graph needs a graph")
    return _search(g, k_max, _shatter_graph, Certificate.GRAPH)


def vc_threegraph(h: ThreeGraph, k_max: int = 3) -> DimensionResult:
    """VC dimension of a 3-graph via pairs a_i b_i and vertices c_S."""
    if h.arity != 3:
        raise DomainError("vc_threegraph needs a 3-graph")
    return _search(h, k_max, _shatter_threegraph, Certificate.THREEGRAPH)


def slice_graph(h: ThreeGraph, x: int) -> Graph:
    """Graph of pairs yz with xyz an edge; x itself is isolated."""
    if h.arity != 3:
        raise DomainError("slice_graph needs a 3-graph")
    if not isinstance(x, int) or not 0 <= x < h.n:
        raise DomainError(f"vertex {x!r} outside 0..{h.n - 1}")
    return Graph(h.n, [tuple(v for v in edge if v != x) for edge in h.edges if x in edge])


def svc(h: ThreeGraph, k_max: int = 3) -> DimensionResult:
    """Largest VC dimension over the slice graphs, smallest slice vertex on ties."""
    _check_k_max(k_max)
    best: DimensionResult | None = None
    best_x = None
    for x in range(h.n):
        result = vc_graph(slice_graph(h, x), k_max)
        if best is None or result.value > best.value:
            best, best_x = result, x
            if result.at_least:
                break
    if best is None:
        return DimensionResult(0, ShatterCertificate(Certificate.SLICEWISE, 0))
    cert = best.certificate
    certificate = ShatterCertificate(
        Certificate.SLICEWISE, cert.k, cert.a_vertices, cert.b_vertices, best_x
    )
    return DimensionResult(best.value, certificate, best.at_least)
