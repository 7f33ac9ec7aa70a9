"""Regular partition of Trip(H) from one of H."""

from __future__ import annotations

from fractions import Fraction
import logging

from ..const import TransferKind
from ..core import Partition, ThreeGraph, VertexSet
from ..exceptions import DomainError
from ..families import trip_triple
from .transfer import Construction, Contract, Transfer, nonempty, regular, source_graph

logger = logging.getLogger(__name__)


class TripTransfer(Transfer):
    """An eps^12-regular partition of H with t parts gives an eps-regular one of Trip(H).

    The construction keeps every A-part and the large B- and C-parts and
    pools the small ones into B0 and C0, so it may use 3t + 2 parts.
    """

    KIND = TransferKind.TRIP

    def __init__(
        self, config=None, z2: VertexSet | None = None, z3: VertexSet | None = None
    ) -> None:
        """Initialise."""
        super().__init__(config)
        self.z2 = z2
        self.z3 = z3

    def _input_host(self, source) -> ThreeGraph:
        h = source_graph(source)
        if h.arity != 3:
            raise DomainError("trip transfer needs a 3-graph")
        return h

    def _input_contract(self, eps: Fraction) -> Contract:
        return regular(eps**12)

    def _output_contract(self, eps: Fraction) -> Contract:
        return regular(eps)

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        h = self._input_host(source)
        if partition is None:
            raise DomainError("trip transfer needs a partition of H")
        target = trip_triple(h, z2=self.z2, z3=self.z3)
        b_side, c_side = target.sides["y-side"], target.sides["z-side"]
        t = len(partition)
        bound = 3 * t + 2

        sparse = eps**self.config.trip_sparse_exp * target.n
        if len(b_side) <= sparse or len(c_side) <= sparse:
            return Construction(target.graph, [target.graph.vertices], "sparse", bound)

        y_position = {v: h.n + j for j, v in enumerate(target.params["z2"])}
        z_position = {v: h.n + len(y_position) + j for j, v in enumerate(target.params["z3"])}
        small = eps**self.config.trip_small_exp
        a_parts, b_kept, c_kept = [], [], []
        b_small = c_small = 0
        for part in partition:
            a_parts.append(part)
            b_part = VertexSet(y_position[v] for v in part if v in y_position)
            c_part = VertexSet(z_position[v] for v in part if v in z_position)
            if len(b_part) < small * len(part):
                b_small |= b_part.bits
            else:
                b_kept.append(b_part)
            if len(c_part) < small * len(part):
                c_small |= c_part.bits
            else:
                c_kept.append(c_part)
        parts = nonempty(
            [*a_parts, *b_kept, *c_kept, VertexSet.from_bits(b_small), VertexSet.from_bits(c_small)]
        )
        notes = []
        if len(parts) > 3 * t:
            notes.append(f"{len(parts)} parts exceed 3t = {3 * t}; the construction allows 3t + 2")
        return Construction(target.graph, parts, "split", bound, notes)
