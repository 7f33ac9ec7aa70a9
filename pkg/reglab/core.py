"""Graph and 3-graph values, exact densities and partition primitives.

Vertices are the integers 0..n-1. Vertex sets are integer bitmasks wrapped in
:class:`VertexSet`, so every density below is a handful of ``&`` and
``bit_count`` calls. Densities count ordered tuples, which keeps overlapping
sides (including a cell paired with itself) well defined.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence, Set
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
import logging
from math import factorial
import re

from .exceptions import ContractError, DomainError, InputError

logger = logging.getLogger(__name__)

Rational = Fraction

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str, location: str | None = None) -> Fraction:
    """Parse "p/q" or "p" into a Fraction; decimals are refused."""
    match = _RATIONAL.match(str(text))
    if match is None:
        raise InputError(f"expected a fraction like 1/4, got {text!r}", location)
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}", location)
    return Fraction(int(num), int(den) if den is not None else 1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, bool):
        raise DomainError("a boolean is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction the way the JSON documents carry it."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class VertexSet(Set):
    """Immutable set of vertex indices backed by an int bitmask."""

    __slots__ = ("bits",)

    def __init__(self, members: Iterable[int] = ()) -> None:
        """Initialise."""
        bits = 0
        for v in members:
            if not isinstance(v, int) or v < 0:
                raise DomainError(f"invalid vertex {v!r}")
            bits |= 1 << v
        self.bits = bits

    @classmethod
    def from_bits(cls, bits: int) -> VertexSet:
        """Wrap an existing bitmask."""
        vs = cls.__new__(cls)
        vs.bits = bits
        return vs

    @classmethod
    def full(cls, n: int) -> VertexSet:
        """Return {0, ..., n-1}."""
        return cls.from_bits((1 << n) - 1)

    @classmethod
    def _from_iterable(cls, it):
        return cls(it)

    def __contains__(self, v) -> bool:
        """Membership test."""
        return isinstance(v, int) and v >= 0 and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """Iterate members in ascending order."""
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        """Return the member count."""
        return self.bits.bit_count()

    def __hash__(self) -> int:
        """Hash on the bitmask."""
        return hash(self.bits)

    def __eq__(self, other) -> bool:
        """Compare bitmasks."""
        if isinstance(other, VertexSet):
            return self.bits == other.bits
        return NotImplemented

    def __le__(self, other) -> bool:
        """Subset test."""
        if isinstance(other, VertexSet):
            return self.bits & ~other.bits == 0
        return Set.__le__(self, other)

    def __and__(self, other):
        """Intersection."""
        if isinstance(other, VertexSet):
            return VertexSet.from_bits(self.bits & other.bits)
        return Set.__and__(self, other)

    def __or__(self, other):
        """Union."""
        if isinstance(other, VertexSet):
            return VertexSet.from_bits(self.bits | other.bits)
        return Set.__or__(self, other)

    def __sub__(self, other):
        """Difference."""
        if isinstance(other, VertexSet):
            return VertexSet.from_bits(self.bits & ~other.bits)
        return Set.__sub__(self, other)

    def __xor__(self, other):
        """Symmetric difference."""
        if isinstance(other, VertexSet):
            return VertexSet.from_bits(self.bits ^ other.bits)
        return Set.__xor__(self, other)

    def __repr__(self) -> str:
        """Render members."""
        return f"VertexSet({list(self)})"

    def min(self) -> int:
        """Smallest member."""
        if not self.bits:
            raise DomainError("empty vertex set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def max_vertex(self) -> int:
        """Largest member, -1 when empty."""
        return self.bits.bit_length() - 1


def _canonical_edge(edge, k: int, n: int) -> tuple[int, ...]:
    members = tuple(edge)
    if len(members) != k:
        raise DomainError(f"edge {members!r} does not have {k} endpoints")
    for v in members:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            raise DomainError(f"edge {members!r} has an endpoint outside 0..{n - 1}")
    if len(set(members)) != k:
        raise DomainError(f"edge {members!r} repeats an endpoint")
    return tuple(sorted(members))


class Graph:
    """Simple undirected graph on 0..n-1 with adjacency bitmasks."""

    arity = 2
    kind = "graph"

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        """Initialise."""
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"vertex count must be a non-negative integer, got {n!r}")
        adj = [0] * n
        canon = set()
        for edge in edges:
            u, v = _canonical_edge(edge, 2, n)
            canon.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges = tuple(sorted(canon))
        self.adj = tuple(adj)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> Graph:
        """Graph on 0..n-1, n defaulting to one past the largest endpoint."""
        edges = [tuple(edge) for edge in edges]
        if n is None:
            n = 1 + max((v for edge in edges for v in edge), default=-1)
        return cls(n, edges)

    @property
    def vertices(self) -> VertexSet:
        """All vertices."""
        return VertexSet.full(self.n)

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        """Adjacency test."""
        return (self.adj[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> VertexSet:
        """Open neighbourhood of v."""
        return VertexSet.from_bits(self.adj[v])

    def degree(self, v: int) -> int:
        """Number of neighbours of v."""
        return self.adj[v].bit_count()

    def __eq__(self, other) -> bool:
        """Same vertex count and edge set."""
        if isinstance(other, Graph):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self) -> int:
        """Hash on the canonical form."""
        return hash((self.kind, self.n, self.edges))

    def __repr__(self) -> str:
        """Short description."""
        return f"Graph(n={self.n}, edges={len(self.edges)})"


class ThreeGraph:
    """3-uniform hypergraph on 0..n-1.

    ``link[a][b]`` is the bitmask of every c with {a, b, c} an edge.
    """

    arity = 3
    kind = "3graph"

    __slots__ = ("n", "edges", "link")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        """Initialise."""
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"vertex count must be a non-negative integer, got {n!r}")
        link = [[0] * n for _ in range(n)]
        canon = set()
        for edge in edges:
            a, b, c = _canonical_edge(edge, 3, n)
            canon.add((a, b, c))
            link[a][b] |= 1 << c
            link[b][a] |= 1 << c
            link[a][c] |= 1 << b
            link[c][a] |= 1 << b
            link[b][c] |= 1 << a
            link[c][b] |= 1 << a
        self.n = n
        self.edges = tuple(sorted(canon))
        self.link = tuple(tuple(row) for row in link)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> ThreeGraph:
        """3-graph on 0..n-1, n defaulting to one past the largest endpoint."""
        edges = [tuple(edge) for edge in edges]
        if n is None:
            n = 1 + max((v for edge in edges for v in edge), default=-1)
        return cls(n, edges)

    @property
    def vertices(self) -> VertexSet:
        """All vertices."""
        return VertexSet.full(self.n)

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def has_edge(self, a: int, b: int, c: int) -> bool:
        """Membership test for {a, b, c}."""
        return a != b and (self.link[a][b] >> c) & 1 == 1

    def pair_neighbors(self, a: int, b: int) -> VertexSet:
        """Return N(ab)."""
        return VertexSet.from_bits(self.link[a][b])

    def degree(self, v: int) -> int:
        """Number of edges through v."""
        return sum(mask.bit_count() for mask in self.link[v]) // 2

    def __eq__(self, other) -> bool:
        """Same vertex count and edge set."""
        if isinstance(other, ThreeGraph):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self) -> int:
        """Hash on the canonical form."""
        return hash((self.kind, self.n, self.edges))

    def __repr__(self) -> str:
        """Short description."""
        return f"ThreeGraph(n={self.n}, edges={len(self.edges)})"


Hypergraph = Graph | ThreeGraph


def _check_side(host: Hypergraph, side: VertexSet, name: str = "side") -> None:
    if not side:
        raise DomainError(f"empty {name}")
    if side.bits >> host.n:
        raise DomainError(f"{name} {side!r} leaves the vertex range 0..{host.n - 1}")


def edge_count2(g: Graph, xbits: int, ybits: int) -> int:
    """Ordered pairs (a, b) in X x Y with ab an edge."""
    adj = g.adj
    count = 0
    bits = xbits
    while bits:
        low = bits & -bits
        count += (adj[low.bit_length() - 1] & ybits).bit_count()
        bits ^= low
    return count


def edge_count3(h: ThreeGraph, xbits: int, ybits: int, zbits: int) -> int:
    """Ordered triples (a, b, c) in X x Y x Z with abc an edge."""
    link = h.link
    count = 0
    for a in VertexSet.from_bits(xbits):
        row = link[a]
        for b in VertexSet.from_bits(ybits):
            count += (row[b] & zbits).bit_count()
    return count


def density2(g: Graph, x: VertexSet, y: VertexSet) -> Fraction:
    """Return d_G(X, Y) over ordered pairs."""
    _check_side(g, x, "x")
    _check_side(g, y, "y")
    return Fraction(edge_count2(g, x.bits, y.bits), len(x) * len(y))


def density3(h: ThreeGraph, x: VertexSet, y: VertexSet, z: VertexSet) -> Fraction:
    """Return d_H(X, Y, Z) over ordered triples."""
    _check_side(h, x, "x")
    _check_side(h, y, "y")
    _check_side(h, z, "z")
    return Fraction(edge_count3(h, x.bits, y.bits, z.bits), len(x) * len(y) * len(z))


def density(host: Hypergraph, cell: Sequence[VertexSet]) -> Fraction:
    """Dispatch on arity."""
    if len(cell) != host.arity:
        raise DomainError(f"a {host.kind} cell has {host.arity} sides, got {len(cell)}")
    if host.arity == 2:
        return density2(host, *cell)
    return density3(host, *cell)


def delta_close(g1: Hypergraph, g2: Hypergraph) -> Fraction:
    """Return |E1 delta E2| / n^k over ordered edge tuples."""
    if type(g1) is not type(g2):
        raise DomainError("delta_close needs two structures of the same arity")
    if g1.n != g2.n:
        raise DomainError(f"vertex counts differ: {g1.n} != {g2.n}")
    if g1.n == 0:
        raise DomainError("delta_close is undefined on the empty vertex range")
    k = g1.arity
    differing = len(set(g1.edges) ^ set(g2.edges))
    return Fraction(factorial(k) * differing, g1.n**k)


def averaging_split(
    a: VertexSet,
    host: VertexSet,
    parts: Iterable[VertexSet],
    a_frac: Fraction,
    b_frac: Fraction,
) -> list[VertexSet]:
    """Return the parts Y with |A & Y| >= (1 - a)|Y|.

    Requires |A| >= (1 - ab)|host|; the union of the returned parts then covers
    at least (1 - b)|host| vertices.
    """
    a_frac, b_frac = as_fraction(a_frac), as_fraction(b_frac)
    parts = list(parts)
    if not a <= host:
        raise DomainError("A must be a subset of the host set")
    covered = 0
    for part in parts:
        if not part or part.bits & covered or not part <= host:
            raise DomainError("parts must be non-empty, disjoint and inside the host")
        covered |= part.bits
    if covered != host.bits:
        raise DomainError("parts do not cover the host set")
    eps = a_frac * b_frac
    if len(a) < (1 - eps) * len(host):
        raise ContractError(
            f"|A| = {len(a)} is below (1 - {format_rational(eps)})|X| = "
            f"{format_rational((1 - eps) * len(host))}",
            detail={"a": len(a), "host": len(host), "eps": eps},
        )
    sigma = [part for part in parts if len(a & part) >= (1 - a_frac) * len(part)]
    union = sum(len(part) for part in sigma)
    if union < (1 - b_frac) * len(host):
        raise ContractError(
            "averaging conclusion failed",
            detail={"union": union, "host": len(host), "b": b_frac},
        )
    return sigma


def induced(host: Hypergraph, s: VertexSet) -> tuple[Hypergraph, tuple[int, ...]]:
    """Return the induced substructure on s and the new-to-old index map."""
    if s.bits >> host.n:
        raise DomainError(f"{s!r} leaves the vertex range 0..{host.n - 1}")
    index_map = tuple(s)
    position = {old: new for new, old in enumerate(index_map)}
    edges = [
        tuple(position[v] for v in edge)
        for edge in host.edges
        if all(v in position for v in edge)
    ]
    return type(host)(len(index_map), edges), index_map


def k2_product(x: VertexSet, y: VertexSet) -> frozenset[tuple[int, int]]:
    """Return K_2[X, Y] as canonical pairs."""
    return frozenset(tuple(sorted((a, b))) for a, b in product(x, y) if a != b)


def k3_product(
    x: VertexSet, y: VertexSet, z: VertexSet
) -> frozenset[tuple[int, int, int]]:
    """Return K_3[X, Y, Z] as canonical triples."""
    return frozenset(
        tuple(sorted(t)) for t in product(x, y, z) if len(set(t)) == 3
    )


def _check_vertex(host: Hypergraph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < host.n:
        raise DomainError(f"vertex {v!r} outside 0..{host.n - 1}")


def neighborhood(g: Graph, v: int) -> VertexSet:
    """Return N_G(v)."""
    _check_vertex(g, v)
    return g.neighbors(v)


def pair_neighborhood(h: ThreeGraph, v: int, w: int) -> VertexSet:
    """Return N_H(vw)."""
    _check_vertex(h, v)
    _check_vertex(h, w)
    if v == w:
        raise DomainError("pair neighbourhood needs two distinct vertices")
    return h.pair_neighbors(v, w)


def complement(host: Hypergraph) -> Hypergraph:
    """Return the complement on the same vertex range."""
    present = set(host.edges)
    missing = [e for e in combinations(range(host.n), host.arity) if e not in present]
    return type(host)(host.n, missing)


class Partition(Sequence):
    """Ordered list of non-empty, disjoint parts covering 0..n-1."""

    __slots__ = ("n", "parts", "_owner")

    def __init__(self, n: int, parts: Iterable[Iterable[int]]) -> None:
        """Initialise."""
        checked = []
        seen = 0
        for part in parts:
            part = part if isinstance(part, VertexSet) else VertexSet(part)
            if not part:
                raise DomainError("partition has an empty part")
            if part.bits & seen:
                raise DomainError(f"part {part!r} overlaps an earlier part")
            seen |= part.bits
            checked.append(part)
        if seen != (1 << n) - 1:
            raise DomainError(f"parts do not cover exactly 0..{n - 1}")
        owner = [0] * n
        for index, part in enumerate(checked):
            for v in part:
                owner[v] = index
        self.n = n
        self.parts = tuple(checked)
        self._owner = tuple(owner)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        """One part per vertex."""
        return cls(n, [VertexSet.from_bits(1 << v) for v in range(n)])

    @classmethod
    def trivial(cls, n: int) -> Partition:
        """A single part (none when n is 0)."""
        return cls(n, [VertexSet.full(n)] if n else [])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        """Build from a part index per vertex, parts ordered by index."""
        buckets: dict[int, int] = {}
        for v, label in enumerate(labels):
            buckets[label] = buckets.get(label, 0) | (1 << v)
        return cls(len(labels), [VertexSet.from_bits(buckets[k]) for k in sorted(buckets)])

    def __getitem__(self, index):
        """Return a part."""
        return self.parts[index]

    def __len__(self) -> int:
        """Number of parts."""
        return len(self.parts)

    def __eq__(self, other) -> bool:
        """Equal as set partitions, part order ignored."""
        if isinstance(other, Partition):
            return self.n == other.n and self._key() == other._key()
        return NotImplemented

    def __hash__(self) -> int:
        """Hash on the unordered parts."""
        return hash((self.n, self._key()))

    def _key(self) -> frozenset[int]:
        return frozenset(part.bits for part in self.parts)

    def __repr__(self) -> str:
        """Render parts."""
        return f"Partition({self.as_lists()})"

    def part_of(self, v: int) -> int:
        """Index of the part holding v."""
        return self._owner[v]

    @property
    def sizes(self) -> tuple[int, ...]:
        """Part sizes in order."""
        return tuple(len(part) for part in self.parts)

    def canonical(self) -> Partition:
        """Same partition with parts ordered by their least vertex."""
        return Partition(self.n, sorted(self.parts, key=lambda part: part.min()))

    def restrict(self, s: VertexSet) -> list[VertexSet]:
        """Non-empty traces of the parts on s, in part order."""
        return [part & s for part in self.parts if part.bits & s.bits]

    def as_lists(self) -> list[list[int]]:
        """Parts as sorted vertex lists."""
        return [list(part) for part in self.parts]


@dataclass(frozen=True)
class Threshold:
    """The exact real number base^(1/root).

    Fractional powers of a rational (eps^(1/3), 36 eps^(1/18), ...) are never
    materialised: every comparison raises the other side to ``root`` instead.
    """

    base: Fraction
    root: int = 1

    def __post_init__(self) -> None:
        """Validate."""
        if self.base < 0:
            raise DomainError("a threshold must be non-negative")
        if not isinstance(self.root, int) or self.root < 1:
            raise DomainError("threshold root must be a positive integer")

    @classmethod
    def of(cls, value) -> Threshold:
        """Wrap a rational, pass thresholds through."""
        if isinstance(value, Threshold):
            return value
        return cls(as_fraction(value), 1)

    @classmethod
    def power(cls, eps, num: int, den: int = 1, scale=1) -> Threshold:
        """Return scale * eps^(num/den)."""
        eps, scale = as_fraction(eps), as_fraction(scale)
        return cls(scale**den * eps**num, den)

    def exceeded_by(self, x: Fraction) -> bool:
        """x > value for x >= 0."""
        return x**self.root > self.base

    def admits(self, x: Fraction) -> bool:
        """x <= value for x >= 0."""
        return x**self.root <= self.base

    def above(self, x: Fraction) -> bool:
        """x < value for x >= 0."""
        return x**self.root < self.base

    def admits_share(self, count: int, total: int) -> bool:
        """count <= value * total."""
        return count**self.root <= self.base * total**self.root

    def min_count(self, size: int) -> int:
        """Smallest integer m with m >= value * size."""
        target = self.base * size**self.root
        if target <= 0:
            return 0
        hi = 1
        while hi**self.root < target:
            hi *= 2
        lo = hi // 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if mid**self.root >= target:
                hi = mid
            else:
                lo = mid
        return hi

    @property
    def at_least_one(self) -> bool:
        """True when the value is >= 1."""
        return self.base >= 1

    def approx(self) -> float:
        """Floating point value for display only."""
        return float(self.base) ** (1 / self.root)

    def __str__(self) -> str:
        """Render as p/q or (p/q)^(1/r)."""
        if self.root == 1:
            return format_rational(self.base)
        return f"({format_rational(self.base)})^(1/{self.root})"
