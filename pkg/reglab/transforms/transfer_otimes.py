"""Regular partition of a bipartite G from one of n (x) G."""

from __future__ import annotations

from fractions import Fraction
import logging

from ..const import TransferKind
from ..core import Graph, Partition, Threshold, VertexSet
from ..exceptions import DomainError
from ..families import LabeledFamilyInstance, bipartition, otimes
from .transfer import Construction, Contract, Transfer, nonempty, regular

logger = logging.getLogger(__name__)


class OtimesTransfer(Transfer):
    """An eps-regular partition of n (x) G with t parts gives a 36 eps^(1/18)-regular one of G.

    n is max(|U|, |V|); the output has at most 2t + 2 parts.
    """

    KIND = TransferKind.OTIMES

    def _instance(self, source) -> LabeledFamilyInstance:
        if not isinstance(source, LabeledFamilyInstance):
            raise DomainError("otimes transfer needs a bipartite instance with named sides")
        bipartition(source)
        return source

    def _input_host(self, source):
        inst = self._instance(source)
        _, u, _, v = bipartition(inst)
        return otimes(max(len(u), len(v)), inst).graph

    def _input_contract(self, eps: Fraction) -> Contract:
        return regular(eps)

    def _output_contract(self, eps: Fraction) -> Contract:
        return regular(Threshold.power(eps, 1, 18, scale=36))

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        inst = self._instance(source)
        if partition is None:
            raise DomainError("otimes transfer needs a partition of n (x) G")
        g: Graph = inst.graph
        _, u, _, v = bipartition(inst)
        t = len(partition)
        bound = 2 * t + 2
        notes = []
        if eps >= Fraction(1, 3):
            notes.append("eps >= 1/3 lies outside the regime the construction assumes")
            logger.warning("otimes transfer run with eps = %s >= 1/3", eps)

        if min(len(u), len(v)) ** 3 <= eps * g.n**3:
            return Construction(g, [g.vertices], "sparse", bound, notes)

        num, den = self.config.otimes_bucket_num, self.config.otimes_bucket_den
        u_kept, v_kept = [], []
        u_small = v_small = 0
        for part in partition:
            u_part, v_part = part & u, part & v
            # small when |U_i| <= eps^(num/den) |X_i|
            if len(u_part) ** den <= eps**num * len(part) ** den:
                u_small |= u_part.bits
            else:
                u_kept.append(u_part)
            if len(v_part) ** den <= eps**num * len(part) ** den:
                v_small |= v_part.bits
            else:
                v_kept.append(v_part)
        parts = nonempty(
            [*u_kept, *v_kept, VertexSet.from_bits(u_small), VertexSet.from_bits(v_small)]
        )
        return Construction(g, parts, "split", bound, notes)
