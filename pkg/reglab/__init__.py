"""Exact checkers, constructions and experiments for weak hypergraph regularity.

Every density and threshold is an exact rational. Library calls return
verdict and report objects; the ``reglab`` command wraps them as JSON.
"""

import logging

from .config import Config
from .const import VERSION
from .core import Graph, Partition, ThreeGraph, Threshold, VertexSet
from .exceptions import (
    CapacityError,
    ContractError,
    DomainError,
    InputError,
    ReglabError,
    SearchExhaustedError,
)
from .families import LabeledFamilyInstance
from .regularity import check_pair_exact, check_partition, check_triple_exact

__version__ = VERSION

_LOGGER: logging.Logger = logging.getLogger(__package__)
_LOGGER.addHandler(logging.NullHandler())

__all__ = [
    "CapacityError",
    "Config",
    "ContractError",
    "DomainError",
    "Graph",
    "InputError",
    "LabeledFamilyInstance",
    "Partition",
    "ReglabError",
    "SearchExhaustedError",
    "ThreeGraph",
    "Threshold",
    "VertexSet",
    "check_pair_exact",
    "check_partition",
    "check_triple_exact",
]
