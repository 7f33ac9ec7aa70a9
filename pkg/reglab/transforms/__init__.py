"""Partition transfers and the theorem checkers that accompany them."""

from __future__ import annotations

import logging

from ..const import TransferKind
from ..core import Partition
from ..exceptions import DomainError
from .checks import TripleOutcome, check_blowup_reg_is_hom, tech_triple_classify
from .transfer import Construction, Contract, Transfer, TransferReport
from .transfer_bip import BipTransfer
from .transfer_blowup import BlowupHomTransfer
from .transfer_exp import ExpClassTransfer
from .transfer_otimes import OtimesTransfer
from .transfer_trip import TripTransfer

_LOGGER = logging.getLogger(__package__)

# fmt: off
TRANSFERS: dict[str, type[Transfer]] = {
    TransferKind.BIP:        BipTransfer,
    TransferKind.TRIP:       TripTransfer,
    TransferKind.OTIMES:     OtimesTransfer,
    TransferKind.BLOWUP_HOM: BlowupHomTransfer,
    TransferKind.EXP_CLASS:  ExpClassTransfer,
}
# fmt: on


def run_transfer(
    kind: str, source, partition: Partition | None, eps, config=None, check_input: bool = True, **kwargs
) -> TransferReport:
    """Look up a transfer by kind and run it once."""
    try:
        cls = TRANSFERS[kind]
    except KeyError as err:
        raise DomainError(
            f"unknown transfer {kind!r}; choose one of {', '.join(TransferKind.ALL)}"
        ) from err
    _LOGGER.debug("running %s transfer at eps = %s", kind, eps)
    return cls(config, **kwargs)(source, partition, eps, check_input=check_input)


def bip_transfer(g, p: Partition, eps, config=None, **kwargs) -> TransferReport:
    """Regular partition of Bip(G) from one of G."""
    return run_transfer(TransferKind.BIP, g, p, eps, config, **kwargs)


def trip_transfer(h, p: Partition, eps, config=None, **kwargs) -> TransferReport:
    """Regular partition of Trip(H) from one of H."""
    return run_transfer(TransferKind.TRIP, h, p, eps, config, **kwargs)


def otimes_project(g, p: Partition, eps, config=None, **kwargs) -> TransferReport:
    """Regular partition of a bipartite G from one of n (x) G."""
    return run_transfer(TransferKind.OTIMES, g, p, eps, config, **kwargs)


def blowup_hom_project(big_h, p: Partition, eps, config=None, **kwargs) -> TransferReport:
    """Homogeneous partition of a blow-up of G from one of the blow-up of G-hat."""
    return run_transfer(TransferKind.BLOWUP_HOM, big_h, p, eps, config, **kwargs)


def exp_class_partition(h_inst, eps, config=None) -> TransferReport:
    """Homogeneous partition of an H(k, n) sub-instance built from its classes."""
    return run_transfer(TransferKind.EXP_CLASS, h_inst, None, eps, config)


__all__ = [
    "TRANSFERS",
    "BipTransfer",
    "BlowupHomTransfer",
    "Construction",
    "Contract",
    "ExpClassTransfer",
    "OtimesTransfer",
    "Transfer",
    "TransferReport",
    "TripTransfer",
    "TripleOutcome",
    "blowup_hom_project",
    "bip_transfer",
    "check_blowup_reg_is_hom",
    "exp_class_partition",
    "otimes_project",
    "run_transfer",
    "tech_triple_classify",
    "trip_transfer",
]
