"""Theorem checkers that sit next to the transfers.

These do not build partitions. They test, exactly and on one instance, the
two structural statements the transfers lean on: how a regular triple of a
3-partite 3-graph sits against the sides, and that regular partitions of
simple blow-ups of G-hat are already homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
import logging

from ..const import DEFAULT_EXACT_BUDGET, Family
from ..core import Partition, VertexSet, as_fraction
from ..exceptions import ContractError, DomainError
from ..families import LabeledFamilyInstance
from ..regularity import PartitionVerdict, check_hom_partition, check_partition, check_triple_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TripleOutcome:
    """Which alternatives hold for a regular triple.

    ``alignment`` maps cell i to the side index it mostly sits in; None when
    no permutation aligns the cells.
    """

    sparse: bool
    alignment: tuple[int, int, int] | None
    density: Fraction
    sides: tuple[str, str, str]

    @property
    def aligned(self) -> bool:
        """Some permutation aligns the cells with the sides."""
        return self.alignment is not None


def tech_triple_classify(
    inst: LabeledFamilyInstance,
    d1: VertexSet,
    d2: VertexSet,
    d3: VertexSet,
    eps,
    budget: int = DEFAULT_EXACT_BUDGET,
) -> TripleOutcome:
    """Classify an eps-regular triple of a 3-partite 3-graph.

    Either the triple is sparse (density <= eps) or there is a permutation f
    with |D_i & X^f(i)| >= (1 - 2 eps) |D_i| for every i. Both may hold.
    """
    eps = as_fraction(eps)
    if not 0 < eps < Fraction(1, 3):
        raise DomainError(f"eps must lie in (0, 1/3), got {eps}")
    if inst.graph.arity != 3 or len(inst.sides) != 3:
        raise DomainError("triple classification needs a 3-graph with three named sides")
    cells = (d1, d2, d3)
    verdict = check_triple_exact(inst.graph, *cells, eps, budget=budget)
    if not verdict.regular:
        raise ContractError(
            f"triple is not {eps}-regular", detail=verdict.witness
        )

    names = tuple(inst.sides)
    sides = tuple(inst.sides.values())
    alignment = None
    for f in permutations(range(3)):
        if all(
            len(cell & sides[f[i]]) >= (1 - 2 * eps) * len(cell)
            for i, cell in enumerate(cells)
        ):
            alignment = f
            break
    outcome = TripleOutcome(verdict.density <= eps, alignment, verdict.density, names)
    if not outcome.sparse and not outcome.aligned:
        raise ContractError(
            "regular triple is neither sparse nor aligned with the sides",
            detail=outcome,
        )
    logger.debug(
        "triple density %s: sparse %s, alignment %s", outcome.density, outcome.sparse, alignment
    )
    return outcome


def check_blowup_reg_is_hom(
    big_h: LabeledFamilyInstance,
    p: Partition,
    mu,
    budget: int = DEFAULT_EXACT_BUDGET,
    memo: dict | None = None,
) -> PartitionVerdict:
    """A mu-regular partition of a simple blow-up of G-hat is 4 mu-homogeneous.

    ``mu`` must be below 1 / (2 K1), K1 being the size of the doubled base
    side. Raises ContractError when p is not mu-regular or the conclusion fails.
    """
    mu = as_fraction(mu)
    if not isinstance(big_h, LabeledFamilyInstance) or big_h.family != Family.BLOWUP:
        raise DomainError("check needs a labelled blow-up of G-hat")
    if not big_h.params.get("simple", False) or "K1" not in big_h.params:
        raise DomainError("check needs a simple blow-up that records K1 and K2")
    k1, k2 = big_h.params["K1"], big_h.params["K2"]
    if not 0 < mu < Fraction(1, 2 * k1):
        raise ContractError(f"mu = {mu} is not below 1/(2 K1) = 1/{2 * k1}")
    if k1 > k2:
        logger.warning("blow-up has K1 = %s > K2 = %s", k1, k2)

    regular = check_partition(big_h.graph, p, mu, budget=budget, memo=memo)
    if not regular.passed:
        raise ContractError(f"partition is not {mu}-regular", detail=regular)
    verdict = check_hom_partition(big_h.graph, p, 4 * mu, memo=memo)
    if not verdict.passed:
        raise ContractError(
            f"{mu}-regular partition fails {4 * mu}-homogeneity", detail=verdict
        )
    return verdict
