"""Base class and report type shared by every partition transfer."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import logging

from ..config import Config
from ..const import Kind
from ..core import Hypergraph, Partition, Threshold, VertexSet, as_fraction
from ..exceptions import CapacityError, ContractError, DomainError
from ..families import LabeledFamilyInstance
from ..regularity import PartitionVerdict, Witness, check_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Contract:
    """A partition property: kind (regular or hom) at a threshold."""

    kind: str
    eps: Threshold

    def __str__(self) -> str:
        """Render as e.g. regular@1/4."""
        return f"{self.kind}@{self.eps}"


@dataclass
class Construction:
    """What a transfer's ``_construct`` hands back."""

    target: Hypergraph
    parts: list[VertexSet]
    branch: str
    bound: int
    notes: list[str] = field(default_factory=list)


@dataclass
class TransferReport:
    """Outcome of one transfer run.

    ``verified`` is True only when the exact re-check of the output ran and
    passed; ``input_verified`` is None when the input was not checked.
    """

    kind: str
    branch: str
    eps: Fraction
    target: Hypergraph
    input_partition: Partition | None
    output_partition: Partition
    input_contract: Contract | None
    output_contract: Contract
    input_verified: bool | None
    verified: bool
    capacity_exceeded: bool
    claimed_bound: int
    actual_parts: int
    failing_cell: tuple[int, ...] | None = None
    witness: Witness | None = None
    notes: list[str] = field(default_factory=list)


def source_graph(source) -> Hypergraph:
    """The structure behind an instance or a bare structure."""
    return source.graph if isinstance(source, LabeledFamilyInstance) else source


class Transfer:
    """Transfers are callables turning a partition of one structure into one of another.

    Subclasses build the new partition following a construction and declare
    the contracts on both ends; the base class checks the input when asked,
    enforces the part-count bound and re-verifies the output exactly.
    """

    # override in subclass
    KIND = ""

    def __init__(self, config: Config | None = None) -> None:
        """Initialise."""
        self.config = config or Config()

    def __call__(
        self, source, partition: Partition | None, eps, check_input: bool = True
    ) -> TransferReport:
        """Run the construction and re-verify its output."""
        eps = as_fraction(eps)
        if eps <= 0:
            raise DomainError("eps must be positive")
        notes: list[str] = []

        input_contract = self._input_contract(eps)
        input_verified = None
        if partition is not None:
            host = self._input_host(source)
            if partition.n != host.n:
                raise DomainError(
                    f"partition covers {partition.n} vertices, input structure has {host.n}"
                )
            if check_input and input_contract is not None:
                verdict = self._check(host, partition, input_contract, notes, "input")
                input_verified = None if verdict is None else verdict.passed
                if input_verified is False:
                    notes.append(f"input partition fails {input_contract}")
                    logger.warning("%s input partition fails %s", self.KIND, input_contract)

        construction = self._construct(source, partition, eps)
        notes.extend(construction.notes)
        output = Partition(construction.target.n, construction.parts)
        if len(output) > construction.bound:
            raise ContractError(
                f"{self.KIND} produced {len(output)} parts, bound is {construction.bound}",
                detail=output,
            )

        output_contract = self._output_contract(eps)
        verdict = self._check(construction.target, output, output_contract, notes, "output")
        logger.debug(
            "%s transfer: branch %s, %s parts, verified %s",
            self.KIND,
            construction.branch,
            len(output),
            verdict is not None and verdict.passed,
        )
        return TransferReport(
            kind=self.KIND,
            branch=construction.branch,
            eps=eps,
            target=construction.target,
            input_partition=partition,
            output_partition=output,
            input_contract=input_contract,
            output_contract=output_contract,
            input_verified=input_verified,
            verified=verdict is not None and verdict.passed,
            capacity_exceeded=verdict is None,
            claimed_bound=construction.bound,
            actual_parts=len(output),
            failing_cell=None if verdict is None else verdict.failing_cell,
            witness=None if verdict is None else verdict.witness,
            notes=notes,
        )

    def _check(
        self, host: Hypergraph, p: Partition, contract: Contract, notes: list[str], side: str
    ) -> PartitionVerdict | None:
        try:
            return check_partition(
                host, p, contract.eps, contract.kind, budget=self.config.exact_budget
            )
        except CapacityError as err:
            notes.append(f"{side} check skipped: {err}")
            logger.info("%s %s check skipped: %s", self.KIND, side, err)
            return None

    def _input_host(self, source) -> Hypergraph:
        """Override in subclass.

        Return the structure the input partition lives on.
        """
        raise NotImplementedError

    def _input_contract(self, eps: Fraction) -> Contract | None:
        """Override in subclass.

        Return the contract the input partition is assumed to satisfy, or None
        when the transfer takes no input partition.
        """
        raise NotImplementedError

    def _output_contract(self, eps: Fraction) -> Contract:
        """Override in subclass.

        Return the contract the output partition is claimed to satisfy.
        """
        raise NotImplementedError

    def _construct(self, source, partition: Partition | None, eps: Fraction) -> Construction:
        """Override in subclass.

        Build the target structure and the output parts. Empty parts must be
        left out; the bound is the part count the construction promises.
        """
        raise NotImplementedError


def regular(eps) -> Contract:
    """Shorthand for a regularity contract."""
    return Contract(Kind.REGULAR, Threshold.of(eps))


def homogeneous(eps) -> Contract:
    """Shorthand for a homogeneity contract."""
    return Contract(Kind.HOM, Threshold.of(eps))


def nonempty(parts) -> list[VertexSet]:
    """Drop empty parts, keep order."""
    return [part for part in parts if part]
