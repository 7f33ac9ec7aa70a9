"""Homogeneous partition of a blow-up of G from one of the blow-up of G-hat."""

from __future__ import annotations

from fractions import Fraction
import logging

from ..const import Family, TransferKind
from ..core import Graph, Partition, Threshold, VertexSet
from ..exceptions import ContractError, DomainError
from ..families import LabeledFamilyInstance
from .transfer import Construction, Contract, Transfer, homogeneous, nonempty

logger = logging.getLogger(__name__)


class BlowupHomTransfer(Transfer):
    """Restrict an eps-homogeneous partition of a simple blow-up of G-hat to A + B.

    The restriction is a partition of the simple blow-up of G with no more
    parts and is checked at eps^(1/2). The construction needs eps small
    against the base sides, eps < min(|U|, |V|)^-8; ``force`` skips that check.
    """

    KIND = TransferKind.BLOWUP_HOM

    def __init__(self, config=None, force: bool = False) -> None:
        """Initialise."""
        super().__init__(config)
        self.force = force

    @staticmethod
    def _sides(source) -> tuple[VertexSet, VertexSet, VertexSet]:
        if not isinstance(source, LabeledFamilyInstance) or source.graph.arity != 3:
            raise DomainError("blowup-hom transfer needs a labelled 3-graph blow-up")
        params = source.params
        if source.family != Family.BLOWUP or not params.get("simple", False):
            raise DomainError("blowup-hom transfer needs a simple blow-up")
        try:
            single = source.sides[params["single_side"]]
            first, second = (source.sides[name] for name in params["doubled"])
        except KeyError as err:
            raise DomainError(f"blow-up does not name its G-hat sides: {err}") from err
        return single, first, second

    def _input_host(self, source):
        self._sides(source)
        return source.graph

    def _input_contract(self, eps: Fraction) -> Contract:
        return homogeneous(eps)

    def _output_contract(self, eps: Fraction) -> Contract:
        return Contract(homogeneous(eps).kind, Threshold(eps, 2))

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        a_side, b_side, c_side = self._sides(source)
        if partition is None:
            raise DomainError("blowup-hom transfer needs a partition of the 3-graph blow-up")
        smallest = min(source.params["K1"], source.params["K2"])
        exponent = self.config.blowup_smallness_exp
        notes = []
        if eps * smallest**exponent >= 1:
            message = f"eps = {eps} is not below min(|U|, |V|)^-{exponent}"
            if not self.force:
                raise ContractError(message, detail={"eps": eps, "min_side": smallest})
            notes.append(f"{message}; forced")

        keep = a_side | b_side
        position = {old: new for new, old in enumerate(keep)}
        edges = set()
        for edge in source.graph.edges:
            a = next((x for x in edge if x in a_side), None)
            b = next((x for x in edge if x in b_side), None)
            if a is None or b is None or not any(x in c_side for x in edge):
                raise ContractError(f"edge {edge} does not cross the three sides")
            edges.add((position[a], position[b]))
        target = Graph(len(keep), edges)
        parts = nonempty(
            VertexSet(position[v] for v in part if v in position) for part in partition
        )
        notes.append("the existence statement leaves its exponent open; eps^(1/2) is checked")
        return Construction(target, parts, "restrict", len(partition), notes)
