"""Run configuration for reglab."""

from __future__ import annotations

from fractions import Fraction
import logging
import os
from typing import Any

import voluptuous as vol

from .const import (
    DEFAULT_BIT_BUDGET,
    DEFAULT_EXACT_BUDGET,
    DEFAULT_N_CAP,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    DEFAULT_TRIALS,
    ENV_THREADS,
)
from .core import parse_rational
from .exceptions import InputError

logger = logging.getLogger(__name__)


def _rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except InputError as err:
            raise vol.Invalid(str(err)) from err
    raise vol.Invalid(f"expected a fraction string, got {value!r}")


_POSITIVE = vol.All(int, vol.Range(min=1))
_EXPONENT = vol.All(int, vol.Range(min=0))

# Threshold exponents come straight from the transfer constructions and are
# exposed so sensitivity runs can move them.
# fmt: off
DEFAULTS: dict[str, Any] = {
    "exact_budget":          DEFAULT_EXACT_BUDGET,
    "n_cap":                 DEFAULT_N_CAP,
    "bit_budget":            DEFAULT_BIT_BUDGET,
    "seed":                  DEFAULT_SEED,
    "threads":               DEFAULT_THREADS,
    "trials":                DEFAULT_TRIALS,
    "output_format":         DEFAULT_OUTPUT_FORMAT,
    "record_timing":         True,
    "bip_sparse_exp":        3,
    "bip_small_exp":         5,
    "trip_sparse_exp":       4,
    "trip_small_exp":        8,
    "otimes_bucket_num":     2,
    "otimes_bucket_den":     3,
    "hkn_uv_exp":            10,
    "hkn_w_exp":             4,
    "hkn_eps_floor":         Fraction(1, 8),
    "blowup_smallness_exp":  8,
}

SCHEMA = vol.Schema(
    {
        vol.Optional("exact_budget"):         _POSITIVE,
        vol.Optional("n_cap"):                _POSITIVE,
        vol.Optional("bit_budget"):           _POSITIVE,
        vol.Optional("seed"):                 vol.All(int, vol.Range(min=0)),
        vol.Optional("threads"):              _POSITIVE,
        vol.Optional("trials"):               _POSITIVE,
        vol.Optional("output_format"):        vol.In(["json", "csv"]),
        vol.Optional("record_timing"):        bool,
        vol.Optional("bip_sparse_exp"):       _EXPONENT,
        vol.Optional("bip_small_exp"):        _EXPONENT,
        vol.Optional("trip_sparse_exp"):      _EXPONENT,
        vol.Optional("trip_small_exp"):       _EXPONENT,
        vol.Optional("otimes_bucket_num"):    _POSITIVE,
        vol.Optional("otimes_bucket_den"):    _POSITIVE,
        vol.Optional("hkn_uv_exp"):           _EXPONENT,
        vol.Optional("hkn_w_exp"):            _EXPONENT,
        vol.Optional("hkn_eps_floor"):        _rational,
        vol.Optional("blowup_smallness_exp"): _POSITIVE,
    }
)
# fmt: on


class Config:
    """Validated options with defaults filled in."""

    def __init__(self, options: dict[str, Any] | None = None) -> None:
        """Initialise."""
        self._options: dict[str, Any] = {}
        self.options = options

    @classmethod
    def from_env(cls, options: dict[str, Any] | None = None) -> Config:
        """Take the thread hint from REGLAB_THREADS unless given explicitly."""
        options = dict(options or {})
        if "threads" not in options and (raw := os.environ.get(ENV_THREADS)):
            try:
                options["threads"] = int(raw)
            except ValueError as err:
                raise InputError(f"{ENV_THREADS} must be an integer, got {raw!r}") from err
        return cls(options)

    @property
    def options(self) -> dict[str, Any]:
        """Return the merged options."""
        return self._options

    @options.setter
    def options(self, options: dict[str, Any] | None) -> None:
        """Validate user options and merge them over the defaults."""
        try:
            checked = SCHEMA(dict(options or {}))
        except vol.Invalid as err:
            raise InputError(f"invalid configuration: {err}") from err
        self._options = {**DEFAULTS, **checked}
        logger.debug("Configuration: %s", self._options)

    def with_options(self, **overrides) -> Config:
        """Copy with some options replaced."""
        return Config({**self._options, **overrides})

    def __getattr__(self, name: str) -> Any:
        """Expose options as attributes."""
        try:
            return self.__dict__["_options"][name]
        except KeyError as err:
            raise AttributeError(name) from err
