"""Regular partition of Bip(G) from one of G."""

from __future__ import annotations

from fractions import Fraction
import logging

from ..const import TransferKind
from ..core import Graph, Partition, VertexSet
from ..exceptions import DomainError
from ..families import bip_double
from .transfer import Construction, Contract, Transfer, nonempty, regular, source_graph

logger = logging.getLogger(__name__)


class BipTransfer(Transfer):
    """An eps^9-regular partition of G with t parts gives a 2eps-regular one of Bip(G) with 2t+1.

    The u-copies take every vertex of G; ``z2`` limits the w-copies.
    """

    KIND = TransferKind.BIP

    def __init__(self, config=None, z2: VertexSet | None = None) -> None:
        """Initialise."""
        super().__init__(config)
        self.z2 = z2

    def _input_host(self, source) -> Graph:
        g = source_graph(source)
        if g.arity != 2:
            raise DomainError("bip transfer needs a graph")
        return g

    def _input_contract(self, eps: Fraction) -> Contract:
        return regular(eps**9)

    def _output_contract(self, eps: Fraction) -> Contract:
        return regular(2 * eps)

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        g = self._input_host(source)
        if partition is None:
            raise DomainError("bip transfer needs a partition of G")
        target = bip_double(g, z2=self.z2)
        a_side, b_side = target.sides["u-side"], target.sides["w-side"]
        bound = 2 * len(partition) + 1

        if len(b_side) <= eps**self.config.bip_sparse_exp * target.n:
            return Construction(target.graph, [a_side | b_side], "sparse", bound)

        w_position = {v: g.n + j for j, v in enumerate(target.params["z2"])}
        a_parts, b_small, b_kept = [], 0, []
        for part in partition:
            a_parts.append(part)
            b_part = VertexSet(w_position[v] for v in part if v in w_position)
            if len(b_part) < eps**self.config.bip_small_exp * len(part):
                b_small |= b_part.bits
            else:
                b_kept.append(b_part)
        logger.debug("bip transfer: %s small B-parts absorbed", len(partition) - len(b_kept))
        parts = nonempty([*a_parts, VertexSet.from_bits(b_small), *b_kept])
        return Construction(target.graph, parts, "split", bound)
