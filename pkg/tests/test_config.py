"""Tests for the run configuration."""

from fractions import Fraction

import pytest

from reglab.config import DEFAULTS, Config
from reglab.const import DEFAULT_EXACT_BUDGET, ENV_THREADS
from reglab.exceptions import InputError


def test_defaults(config):
    assert config.exact_budget == DEFAULT_EXACT_BUDGET
    assert config.n_cap == 12
    assert config.hkn_eps_floor == Fraction(1, 8)
    assert config.options == DEFAULTS


def test_options_merge_over_defaults():
    config = Config({"n_cap": 8, "hkn_eps_floor": "1/16"})
    assert config.n_cap == 8
    assert config.hkn_eps_floor == Fraction(1, 16)
    assert config.seed == 0


@pytest.mark.parametrize(
    "options",
    [{"n_cap": 0}, {"output_format": "xml"}, {"unknown": 1}, {"hkn_eps_floor": "0.1"}],
)
def test_invalid_options(options):
    with pytest.raises(InputError):
        Config(options)


def test_with_options_copies(config):
    other = config.with_options(threads=4)
    assert other.threads == 4
    assert config.threads == 1


def test_missing_attribute(config):
    with pytest.raises(AttributeError):
        config.not_an_option


def test_thread_hint_from_environment(monkeypatch):
    monkeypatch.setenv(ENV_THREADS, "3")
    assert Config.from_env().threads == 3
    assert Config.from_env({"threads": 2}).threads == 2
    monkeypatch.setenv(ENV_THREADS, "many")
    with pytest.raises(InputError):
        Config.from_env()
