"""Exact and heuristic regularity and homogeneity verdicts.

The exact checkers enumerate every admissible subset of all sides but one.
For the remaining side the extreme sub-densities at each size are attained by
degree-sorted prefixes, so the inner optimisation is a sort instead of another
subset enumeration; the result is still exact.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
import logging
from math import comb, prod
import random

from .const import DEFAULT_EXACT_BUDGET, DEFAULT_SEED, DEFAULT_TRIALS, Kind, Mode
from .core import (
    Graph,
    Hypergraph,
    Partition,
    Threshold,
    VertexSet,
    as_fraction,
    density,
)
from .exceptions import CapacityError, ContractError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    """Sub-cell whose density strays from the cell density by ``gap``."""

    subsets: tuple[VertexSet, ...]
    density_inside: Fraction
    density_outside: Fraction
    gap: Fraction


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome of a regularity check; ``regular`` is None when unknown."""

    regular: bool | None
    eps: Threshold
    density: Fraction
    mode: str = Mode.EXACT
    witness: Witness | None = None
    visited: int = 0

    @property
    def ok(self) -> bool:
        """Cell counts as covered."""
        return self.regular is True


@dataclass(frozen=True)
class HomogeneityVerdict:
    """Density lies in [0, eps) or (1 - eps, 1]."""

    homogeneous: bool
    eps: Threshold
    density: Fraction

    @property
    def ok(self) -> bool:
        """Cell counts as covered."""
        return self.homogeneous


@dataclass(frozen=True)
class PartitionVerdict:
    """Coverage accounting of a partition against a cell contract."""

    passed: bool
    kind: str
    eps: Threshold
    covered: int
    total: int
    cells: dict[tuple[int, ...], bool] = field(default_factory=dict)
    failing_cell: tuple[int, ...] | None = None
    witness: Witness | None = None
    complete: bool = True

    @property
    def covered_mass(self) -> Fraction:
        """Share of ordered tuples lying in good cells."""
        return Fraction(self.covered, self.total) if self.total else Fraction(1)


def _check_cell(host: Hypergraph, cell: Sequence[VertexSet]) -> None:
    if len(cell) != host.arity:
        raise DomainError(f"a {host.kind} cell has {host.arity} sides, got {len(cell)}")
    for side in cell:
        if not side:
            raise DomainError("empty side")
        if side.bits >> host.n:
            raise DomainError(f"{side!r} leaves the vertex range 0..{host.n - 1}")


def _admissible_count(size: int, minimum: int) -> int:
    return sum(comb(size, s) for s in range(minimum, size + 1))


def _trivially_regular(d: Fraction, eps: Threshold) -> bool:
    if eps.at_least_one or d == 0 or d == 1:
        return True
    return eps.admits(max(d, 1 - d))


def _inner_degrees(host: Hypergraph, fixed: Sequence[int], inner: Sequence[int]) -> list[int]:
    """Edge count of each inner vertex into the product of the fixed sides."""
    if host.arity == 2:
        (xbits,) = fixed
        return [(host.adj[w] & xbits).bit_count() for w in inner]
    xbits, ybits = fixed
    link = host.link
    degrees = []
    for w in inner:
        row = link[w]
        degrees.append(sum((row[p] & ybits).bit_count() for p in VertexSet.from_bits(xbits)))
    return degrees


def _scan_inner(
    degrees: Sequence[int],
    inner: Sequence[int],
    fixed_size: int,
    minimum: int,
    d: Fraction,
) -> tuple[Fraction, int, Fraction] | None:
    """Largest gap over inner subsets of size >= minimum.

    Returns (gap, inner mask, inside density) or None when no size qualifies.
    """
    if minimum > len(inner):
        return None
    dn, dd = d.numerator, d.denominator
    desc = sorted(range(len(inner)), key=lambda j: (-degrees[j], inner[j]))
    asc = sorted(range(len(inner)), key=lambda j: (degrees[j], inner[j]))
    best = None  # (num, den, t, upward)
    top = bottom = 0
    for t in range(1, len(inner) + 1):
        top += degrees[desc[t - 1]]
        bottom += degrees[asc[t - 1]]
        if t < minimum:
            continue
        size = fixed_size * t
        den = size * dd
        for num, upward in ((top * dd - dn * size, True), (dn * size - bottom * dd, False)):
            if best is None or num * best[1] > best[0] * den:
                best = (num, den, t, upward)
    num, den, t, upward = best
    order = desc if upward else asc
    mask = 0
    for j in order[:t]:
        mask |= 1 << inner[j]
    count = sum(degrees[j] for j in order[:t])
    return Fraction(num, den), mask, Fraction(count, fixed_size * t)


def exact_work(host: Hypergraph, cell: Sequence[VertexSet], eps) -> int:
    """Subset combinations an exact check of this cell would enumerate.

    Zero when the cell is settled without search (trivial density or sides
    too small to hold a witness).
    """
    cell = tuple(cell)
    _check_cell(host, cell)
    eps = Threshold.of(eps)
    if _trivially_regular(density(host, cell), eps):
        return 0
    minima = [max(1, eps.min_count(len(side))) for side in cell]
    if any(m > len(side) for m, side in zip(minima, cell, strict=True)):
        return 0
    counts = [_admissible_count(len(side), m) for side, m in zip(cell, minima, strict=True)]
    return prod(counts) // max(counts)


def _exact_search(
    host: Hypergraph,
    cell: Sequence[VertexSet],
    eps: Threshold,
    budget: int,
    first: bool,
) -> RegularityVerdict:
    _check_cell(host, cell)
    d = density(host, cell)
    if _trivially_regular(d, eps):
        return RegularityVerdict(True, eps, d)
    minima = [max(1, eps.min_count(len(side))) for side in cell]
    if any(m > len(side) for m, side in zip(minima, cell, strict=True)):
        return RegularityVerdict(True, eps, d)

    counts = [_admissible_count(len(side), m) for side, m in zip(cell, minima, strict=True)]
    # the side with the most subsets is optimised by sorting, the rest enumerated
    inner_pos = max(range(len(cell)), key=lambda i: (counts[i], i))
    outer_pos = [i for i in range(len(cell)) if i != inner_pos]
    work = prod(counts[i] for i in outer_pos)
    if work > budget:
        raise CapacityError(
            f"exact check needs {work} subset combinations, budget is {budget}; "
            "raise exact_budget or use heuristic mode"
        )

    inner = list(cell[inner_pos])
    best: tuple[Fraction, tuple[int, ...], Fraction] | None = None
    visited = 0
    choices = [
        [
            sum(1 << v for v in combo)
            for s in range(minima[i], len(cell[i]) + 1)
            for combo in combinations(list(cell[i]), s)
        ]
        for i in outer_pos
    ]
    for fixed in product(*choices):
        visited += 1
        fixed_size = prod(mask.bit_count() for mask in fixed)
        degrees = _inner_degrees(host, fixed, inner)
        scan = _scan_inner(degrees, inner, fixed_size, minima[inner_pos], d)
        if scan is None:
            continue
        gap, inner_mask, inside = scan
        if not eps.exceeded_by(gap):
            continue
        if best is None or gap > best[0]:
            masks = [0] * len(cell)
            for pos, mask in zip(outer_pos, fixed, strict=True):
                masks[pos] = mask
            masks[inner_pos] = inner_mask
            best = (gap, tuple(masks), inside)
            if first:
                break

    logger.debug("Exact %s check visited %s subset combinations", host.kind, visited)
    if best is None:
        return RegularityVerdict(True, eps, d, visited=visited)
    gap, masks, inside = best
    witness = Witness(tuple(VertexSet.from_bits(m) for m in masks), inside, d, gap)
    return RegularityVerdict(False, eps, d, witness=witness, visited=visited)


def check_pair_exact(
    g: Graph,
    x: VertexSet,
    y: VertexSet,
    eps,
    budget: int = DEFAULT_EXACT_BUDGET,
    first: bool = False,
) -> RegularityVerdict:
    """Exact eps-regularity of (X, Y).

    On failure the witness is the largest gap found, earliest in enumeration
    order; ``first=True`` stops at the first gap above eps instead.
    """
    if g.arity != 2:
        raise DomainError("check_pair_exact needs a graph")
    return _exact_search(g, (x, y), Threshold.of(eps), budget, first)


def check_triple_exact(
    h,
    x: VertexSet,
    y: VertexSet,
    z: VertexSet,
    eps,
    budget: int = DEFAULT_EXACT_BUDGET,
    first: bool = False,
) -> RegularityVerdict:
    """Exact eps-regularity of (X, Y, Z)."""
    if h.arity != 3:
        raise DomainError("check_triple_exact needs a 3-graph")
    return _exact_search(h, (x, y, z), Threshold.of(eps), budget, first)


def check_cell_exact(
    host: Hypergraph,
    cell: Sequence[VertexSet],
    eps,
    budget: int = DEFAULT_EXACT_BUDGET,
    first: bool = False,
) -> RegularityVerdict:
    """Exact regularity for a cell of either arity."""
    return _exact_search(host, tuple(cell), Threshold.of(eps), budget, first)


def check_hom_cell(host: Hypergraph, cell: Sequence[VertexSet], eps) -> HomogeneityVerdict:
    """Density in [0, eps) or (1 - eps, 1]."""
    _check_cell(host, cell)
    eps = Threshold.of(eps)
    d = density(host, cell)
    return HomogeneityVerdict(eps.above(d) or eps.above(1 - d), eps, d)


def check_hom_pair(g: Graph, x: VertexSet, y: VertexSet, eps) -> HomogeneityVerdict:
    """Homogeneity of a graph pair."""
    return check_hom_cell(g, (x, y), eps)


def check_hom_triple(h, x: VertexSet, y: VertexSet, z: VertexSet, eps) -> HomogeneityVerdict:
    """Homogeneity of a 3-graph triple."""
    return check_hom_cell(h, (x, y, z), eps)


def check_partition(
    host: Hypergraph,
    p: Partition,
    eps,
    kind: str = Kind.REGULAR,
    budget: int = DEFAULT_EXACT_BUDGET,
    memo: dict | None = None,
    complete: bool = True,
) -> PartitionVerdict:
    """Coverage of ordered k-tuples by good cells, diagonal cells included.

    With ``complete=False`` evaluation stops once the failing mass already
    exceeds eps * n^k; the verdict is then marked incomplete.
    """
    if kind not in Kind.ALL:
        raise DomainError(f"unknown partition kind {kind!r}")
    if p.n != host.n:
        raise DomainError(f"partition covers {p.n} vertices, structure has {host.n}")
    eps = Threshold.of(eps)
    memo = {} if memo is None else memo
    parts = p.parts
    total = host.n**host.arity
    cells: dict[tuple[int, ...], bool] = {}
    covered = failing = 0
    failing_cell = witness = None
    finished = True
    for index in product(range(len(parts)), repeat=host.arity):
        key = (kind, eps, tuple(sorted(parts[i].bits for i in index)))
        verdict = memo.get(key)
        if verdict is None:
            cell = tuple(parts[i] for i in index)
            if kind == Kind.REGULAR:
                verdict = _exact_search(host, cell, eps, budget, first=True)
            else:
                verdict = check_hom_cell(host, cell, eps)
            memo[key] = verdict
        mass = prod(len(parts[i]) for i in index)
        cells[index] = verdict.ok
        if verdict.ok:
            covered += mass
            continue
        failing += mass
        if failing_cell is None:
            failing_cell = index
            witness = getattr(verdict, "witness", None)
        if not complete and not eps.admits_share(failing, total):
            finished = False
            break
    passed = eps.admits_share(failing, total)
    return PartitionVerdict(
        passed=passed,
        kind=kind,
        eps=eps,
        covered=covered,
        total=total,
        cells=cells,
        failing_cell=failing_cell,
        witness=witness,
        complete=finished,
    )


def check_hom_partition(host: Hypergraph, p: Partition, eps, memo: dict | None = None) -> PartitionVerdict:
    """Homogeneous-cell coverage of a partition."""
    return check_partition(host, p, eps, kind=Kind.HOM, memo=memo)


def verify_witness(host: Hypergraph, cell: Sequence[VertexSet], eps, witness: Witness) -> bool:
    """Re-check a witness from scratch: sizes, containment and gap."""
    eps = Threshold.of(eps)
    if len(witness.subsets) != len(cell):
        return False
    for sub, side in zip(witness.subsets, cell, strict=True):
        if not sub or not sub <= side or len(sub) < eps.min_count(len(side)):
            return False
    gap = abs(density(host, witness.subsets) - density(host, cell))
    return gap == witness.gap and eps.exceeded_by(gap)


def _candidate(
    host: Hypergraph,
    cell: Sequence[VertexSet],
    pos: int,
    minimum: int,
    strategy: int,
    rng: random.Random,
) -> int | None:
    side = list(cell[pos])
    others = [cell[i].bits for i in range(len(cell)) if i != pos]
    sizes = [minimum, max(minimum, -(-len(side) // 2)), rng.randint(minimum, len(side))]
    size = rng.choice(sizes)
    if strategy in (0, 1):
        degrees = _inner_degrees(host, others, side)
        sign = -1 if strategy == 0 else 1
        order = sorted(range(len(side)), key=lambda j: (sign * degrees[j], side[j]))
        return sum(1 << side[j] for j in order[:size])
    if strategy == 2:
        if host.arity == 2:
            w = rng.choice(list(VertexSet.from_bits(others[0])))
            trace = host.adj[w]
        else:
            a = rng.choice(list(VertexSet.from_bits(others[0])))
            b = rng.choice(list(VertexSet.from_bits(others[1])))
            trace = host.link[a][b] if a != b else 0
        mask = cell[pos].bits & (trace if rng.random() < 0.5 else ~trace)
        if mask.bit_count() >= minimum:
            return mask
    chosen = rng.sample(side, size)
    return sum(1 << v for v in chosen)


def witness_search_heuristic(
    host: Hypergraph,
    cell: Sequence[VertexSet],
    eps,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> RegularityVerdict:
    """Look for a regularity witness by sampling; never certifies regularity.

    Each trial draws from its own generator seeded by (seed, trial), fixes
    candidate subsets on all sides but one and optimises that side exactly.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    cell = tuple(cell)
    _check_cell(host, cell)
    eps = Threshold.of(eps)
    d = density(host, cell)
    if _trivially_regular(d, eps):
        return RegularityVerdict(None, eps, d, mode=Mode.HEURISTIC_UNKNOWN)
    minima = [max(1, eps.min_count(len(side))) for side in cell]
    if any(m > len(side) for m, side in zip(minima, cell, strict=True)):
        return RegularityVerdict(None, eps, d, mode=Mode.HEURISTIC_UNKNOWN)

    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        inner_pos = trial % len(cell)
        strategy = (trial // len(cell)) % 4
        fixed_pos = [i for i in range(len(cell)) if i != inner_pos]
        fixed = [_candidate(host, cell, i, minima[i], strategy, rng) for i in fixed_pos]
        inner = list(cell[inner_pos])
        fixed_size = prod(mask.bit_count() for mask in fixed)
        degrees = _inner_degrees(host, fixed, inner)
        scan = _scan_inner(degrees, inner, fixed_size, minima[inner_pos], d)
        if scan is None or not eps.exceeded_by(scan[0]):
            continue
        gap, inner_mask, inside = scan
        masks = [0] * len(cell)
        for pos, mask in zip(fixed_pos, fixed, strict=True):
            masks[pos] = mask
        masks[inner_pos] = inner_mask
        logger.debug("Heuristic witness found on trial %s", trial)
        witness = Witness(tuple(VertexSet.from_bits(m) for m in masks), inside, d, gap)
        return RegularityVerdict(False, eps, d, mode=Mode.HEURISTIC, witness=witness)
    return RegularityVerdict(None, eps, d, mode=Mode.HEURISTIC_UNKNOWN)


@dataclass(frozen=True)
class SlicingReport:
    """Regularity inherited by a large sub-pair."""

    eps_sub: Fraction
    density: Fraction
    sub_density: Fraction
    sub_regular: bool
    density_within: bool
    verdict: RegularityVerdict


def slicing_expectation(
    g: Graph,
    x: VertexSet,
    y: VertexSet,
    x_sub: VertexSet,
    y_sub: VertexSet,
    eps,
    gamma,
    budget: int = DEFAULT_EXACT_BUDGET,
) -> SlicingReport:
    """Check that a gamma-large sub-pair of an eps-regular pair is 2eps/gamma-regular.

    The density check uses the open interval (d - eps, d + eps). Regularity of
    the pair only bounds the gap by eps, so a sub-pair whose density sits
    exactly at d +- eps is reported with ``density_within`` False.
    """
    eps = as_fraction(eps)
    gamma = as_fraction(gamma)
    if gamma < eps:
        raise ContractError(f"gamma {gamma} is below eps {eps}")
    if gamma > 1 or gamma <= 0:
        raise ContractError("gamma must lie in (0, 1]")
    if not x_sub <= x or not y_sub <= y:
        raise ContractError("sub-pair must sit inside the pair")
    if len(x_sub) < gamma * len(x) or len(y_sub) < gamma * len(y):
        raise ContractError("sub-pair is smaller than gamma times the pair")
    base = check_pair_exact(g, x, y, eps, budget)
    if not base.regular:
        raise ContractError("the pair is not eps-regular", detail=base.witness)
    eps_sub = 2 * eps / gamma
    verdict = check_pair_exact(g, x_sub, y_sub, eps_sub, budget)
    sub_density = verdict.density
    return SlicingReport(
        eps_sub=eps_sub,
        density=base.density,
        sub_density=sub_density,
        sub_regular=bool(verdict.regular),
        density_within=abs(sub_density - base.density) < eps,
        verdict=verdict,
    )
