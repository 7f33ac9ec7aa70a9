"""Explicit homogeneous partition of an induced piece of H(k, n)."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
import logging

from ..const import TransferKind
from ..core import Partition, ThreeGraph, VertexSet, density
from ..exceptions import CapacityError, ContractError, DomainError
from ..families import LabeledFamilyInstance
from ..regularity import check_hom_partition
from .transfer import Construction, Contract, Transfer, homogeneous, nonempty

logger = logging.getLogger(__name__)


def _label_index(name: str) -> frozenset[int]:
    """U_3 -> {3}; W_{1,2} -> {1, 2}; W_{} -> {}."""
    body = name.split("_", 1)[1].strip("{}")
    return frozenset(int(i) for i in body.split(",") if i)


class ExpClassTransfer(Transfer):
    """Build Q from the U_i, V_i, W_S classes directly; no input partition.

    Large W_S stay as parts, the U- and V-classes are merged along the atoms
    of the Boolean algebra the surviving index sets S generate, and small
    classes are pooled into U0, V0 and W0.

    The output contract is 5 eps-homogeneity. Above eps = 1/10 every density
    lies in [0, 5 eps) or (1 - 5 eps, 1], so from the default eps floor of 1/8
    up that check cannot fail; the strict eps-homogeneity note carries the
    information there.
    """

    KIND = TransferKind.EXP_CLASS

    def _input_host(self, source):
        return self._instance(source).graph

    def _input_contract(self, eps: Fraction) -> None:
        return None

    def _output_contract(self, eps: Fraction) -> Contract:
        return homogeneous(5 * eps)

    @staticmethod
    def _instance(source) -> LabeledFamilyInstance:
        if not isinstance(source, LabeledFamilyInstance) or source.graph.arity != 3:
            raise DomainError("exp-class needs a labelled H(k, n) instance")
        if not {"U", "V", "W"} <= set(source.sides):
            raise DomainError("exp-class needs sides U, V and W")
        return source

    def _classes(self, inst: LabeledFamilyInstance, prefix: str) -> dict[frozenset[int], VertexSet]:
        return {
            _label_index(name): members
            for name, members in inst.labels.items()
            if name.startswith(f"{prefix}_") and members
        }

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        inst = self._instance(source)
        floor = self.config.hkn_eps_floor
        if eps < floor:
            raise CapacityError(f"eps = {eps} is below the hkn_eps_floor {floor}")
        h: ThreeGraph = inst.graph
        u, v, w = inst.sides["U"], inst.sides["V"], inst.sides["W"]
        vacuous = []
        if 10 * eps > 1:
            vacuous.append(f"5 eps = {5 * eps} > 1/2: the output contract holds for any partition")
        u_classes = self._classes(inst, "U")
        v_classes = self._classes(inst, "V")
        w_classes = self._classes(inst, "W")

        if min(len(u), len(v), len(w)) <= eps * h.n:
            return Construction(h, nonempty([h.vertices]), "sparse", 1, vacuous)

        uv_exp, w_exp = self.config.hkn_uv_exp, self.config.hkn_w_exp
        f_u = {i: c for i, c in u_classes.items() if len(c) >= eps**uv_exp * len(u)}
        f_v = {i: c for i, c in v_classes.items() if len(c) >= eps**uv_exp * len(v)}
        f_w = {s: c for s, c in w_classes.items() if len(c) >= eps**w_exp * len(w)}
        u0 = _union(c for i, c in u_classes.items() if i not in f_u)
        v0 = _union(c for i, c in v_classes.items() if i not in f_v)
        w0 = _union(c for s, c in w_classes.items() if s not in f_w)

        family = sorted(f_w, key=lambda s: (len(s), sorted(s)))
        # an index's atom is determined by which surviving S contain it
        atoms: dict[tuple[bool, ...], list[int]] = {}
        for index in sorted(set().union(*u_classes, *v_classes)):
            signature = tuple(index in s for s in family)
            atoms.setdefault(signature, []).append(index)
        u_atoms = [_union(f_u[frozenset({i})] for i in idx if frozenset({i}) in f_u) for idx in atoms.values()]
        v_atoms = [_union(f_v[frozenset({i})] for i in idx if frozenset({i}) in f_v) for idx in atoms.values()]

        parts = nonempty([*(f_w[s] for s in family), *u_atoms, *v_atoms, u0, v0, w0])
        bound = 8 * 2 ** len(family)
        notes = [f"J has {len(family)} index sets, {len(atoms)} atoms", *vacuous]
        if any(len(idx) > 1 for idx in atoms.values()):
            notes.append("an atom merges several indices; its crossing cells need not have density 0 or 1")
        self._check_non_crossing(h, parts, (u, v, w))

        strict = check_hom_partition(h, Partition(h.n, parts), eps)
        notes.append(f"strict eps-homogeneity {'holds' if strict.passed else 'fails'}")
        return Construction(h, parts, "classes", bound, notes)

    @staticmethod
    def _check_non_crossing(h: ThreeGraph, parts: list[VertexSet], sides) -> None:
        def home(part: VertexSet) -> int | None:
            for index, side in enumerate(sides):
                if part <= side:
                    return index
            return None

        homes = [home(part) for part in parts]
        for cell in product(range(len(parts)), repeat=3):
            if sorted(homes[i] for i in cell if homes[i] is not None) == [0, 1, 2]:
                continue
            d = density(h, tuple(parts[i] for i in cell))
            if d != 0:
                raise ContractError(
                    f"non-crossing cell {cell} has density {d}", detail=cell
                )


def _union(parts) -> VertexSet:
    bits = 0
    for part in parts:
        bits |= part.bits
    return VertexSet.from_bits(bits)
