"""Exhaustive minimal partitions and the tower-type bound functions."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
import logging
from math import comb

from .const import DEFAULT_BIT_BUDGET, DEFAULT_EXACT_BUDGET, DEFAULT_N_CAP, Kind, TowerKind
from .core import Hypergraph, Partition, as_fraction
from .exceptions import CapacityError, DomainError
from .regularity import PartitionVerdict, check_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinimalityCertificate:
    """Every partition with a part count in ``counts_refuted`` was checked and failed."""

    counts_refuted: tuple[int, ...]
    partitions_checked: int


@dataclass(frozen=True)
class MinPartitionResult:
    """Smallest passing partition, lexicographically least among those of its size."""

    size: int
    partition: Partition
    verdict: PartitionVerdict
    certificate: MinimalityCertificate
    kind: str
    eps: Fraction


def restricted_growth_strings(n: int, blocks: int) -> Iterator[tuple[int, ...]]:
    """Labelings of 0..n-1 with exactly ``blocks`` parts, in lexicographic order.

    Label i is at most one more than the largest label before it, so every
    set partition appears exactly once.
    """
    if blocks < 1 or blocks > n:
        return
    labels = [0] * n

    def extend(position: int, top: int) -> Iterator[tuple[int, ...]]:
        if position == n:
            if top + 1 == blocks:
                yield tuple(labels)
            return
        # labels still to be opened must fit in the remaining positions
        if blocks - (top + 1) > n - position:
            return
        for label in range(min(top + 1, blocks - 1) + 1):
            labels[position] = label
            yield from extend(position + 1, max(top, label))

    yield from extend(1, 0)


def bell_partitions(n: int) -> Iterator[Partition]:
    """Every set partition of 0..n-1, ascending by part count."""
    for blocks in range(1, n + 1):
        for labels in restricted_growth_strings(n, blocks):
            yield Partition.from_labels(labels)


def min_partition_exhaustive(
    host: Hypergraph,
    eps,
    kind: str = Kind.REGULAR,
    n_cap: int = DEFAULT_N_CAP,
    budget: int = DEFAULT_EXACT_BUDGET,
    memo: dict | None = None,
) -> MinPartitionResult:
    """Minimal part count of an eps-regular (or eps-homogeneous) partition.

    Part counts are tried in ascending order, so reaching count t proves that
    no smaller count passes. Cell verdicts are memoised across partitions.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if host.n == 0:
        raise DomainError("the structure has no vertices")
    if host.n > n_cap:
        raise CapacityError(
            f"{host.n} vertices exceed n_cap = {n_cap}; raise n_cap or use a constructed upper bound"
        )
    memo = {} if memo is None else memo
    refuted: list[int] = []
    checked = 0
    for blocks in range(1, host.n + 1):
        for labels in restricted_growth_strings(host.n, blocks):
            p = Partition.from_labels(labels)
            verdict = check_partition(host, p, eps, kind, budget, memo, complete=False)
            checked += 1
            if verdict.passed:
                logger.debug(
                    "minimal %s partition at eps %s: %s parts after %s checks",
                    kind,
                    eps,
                    blocks,
                    checked,
                )
                return MinPartitionResult(
                    size=blocks,
                    partition=p,
                    verdict=verdict,
                    certificate=MinimalityCertificate(tuple(refuted), checked),
                    kind=kind,
                    eps=eps,
                )
        refuted.append(blocks)
    # the singleton partition always passes
    raise AssertionError("no partition passed, not even the singletons")


@dataclass(frozen=True)
class TowerValue:
    """Exact value of a bound function, or None past the bit budget."""

    kind: str
    argument: int
    value: int | None

    @property
    def overflow(self) -> bool:
        """Value exceeds the bit budget."""
        return self.value is None

    def __str__(self) -> str:
        """Decimal value or an overflow marker."""
        return "overflow" if self.value is None else str(self.value)


def _check_argument(x: int) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or x < 1:
        raise DomainError(f"argument must be a positive integer, got {x!r}")


def _power_of_two(exponent: int | None, bit_budget: int) -> int | None:
    if exponent is None or exponent + 1 > bit_budget:
        return None
    return 1 << exponent


def tower(i: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> TowerValue:
    """Tw(1) = 1 and Tw(i) = 2^Tw(i-1)."""
    _check_argument(i)
    value: int | None = 1
    for _ in range(i - 1):
        value = _power_of_two(value, bit_budget)
        if value is None:
            break
    return TowerValue(TowerKind.TW, i, value)


def _chung_values(x: int, bit_budget: int) -> list[int | None]:
    values: list[int | None] = [3, 3, 3]
    while len(values) < x:
        previous = values[-1]
        values.append(None if previous is None else _power_of_two(comb(previous, 3), bit_budget))
    return values[:x]


def chung_f(x: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> TowerValue:
    """f(1) = f(2) = f(3) = 3 and f(x) = 2^C(f(x-1), 3), read literally.

    The literal recurrence collapses: f(4) = 2 and f(5) = 1.
    """
    _check_argument(x)
    return TowerValue(TowerKind.F, x, _chung_values(x, bit_budget)[-1])


def tower_f(x: int, mode: str = TowerKind.TWF_LITERAL, bit_budget: int = DEFAULT_BIT_BUDGET) -> TowerValue:
    """Tw_f(1) = f(1); afterwards 2^f(x-1) (literal) or 2^Tw_f(x-1) (iterated)."""
    _check_argument(x)
    if x == 1:
        return TowerValue(mode, x, _chung_values(1, bit_budget)[0])
    match mode:
        case TowerKind.TWF_LITERAL:
            value = _power_of_two(_chung_values(x - 1, bit_budget)[-1], bit_budget)
        case TowerKind.TWF_ITERATED:
            value = tower_f(x - 1, mode, bit_budget).value
            value = _power_of_two(value, bit_budget)
        case _:
            raise DomainError(f"unknown tower mode {mode!r}")
    return TowerValue(mode, x, value)


def ceil_power(base, p: int, q: int) -> int:
    """Exact ceiling of base^(p/q) for positive rational base and q >= 1."""
    base = as_fraction(base)
    if base <= 0 or q < 1:
        raise DomainError("ceil_power needs base > 0 and q >= 1")
    target = base**p
    hi = 1
    while hi**q < target:
        hi *= 2
    lo = 0
    # smallest m with m^q >= target lies in (lo, hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**q >= target:
            hi = mid
        else:
            lo = mid
    return hi
