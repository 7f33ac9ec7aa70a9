"""Shared fixtures for reglab tests."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from reglab.codec import dumps
from reglab.config import Config
from reglab.families import blowup, gen_halfgraph, gen_powerset_graph, path_graph


@pytest.fixture
def config() -> Config:
    """Default configuration."""
    return Config()


@pytest.fixture
def u2():
    """U(2) with its labels."""
    return gen_powerset_graph(2)


@pytest.fixture
def h4():
    """The half graph H(4)."""
    return gen_halfgraph(4)


@pytest.fixture
def p3_blowup():
    """Simple 4-blow-up of the path on three vertices."""
    return blowup(path_graph(3), 4)


@pytest.fixture
def write_doc(tmp_path: Path):
    """Write an object as a reglab JSON document and return its path."""

    def write(name: str, obj) -> str:
        path = tmp_path / name
        if isinstance(obj, str):
            path.write_text(obj, encoding="utf-8")
        elif isinstance(obj, dict) and "parts" in obj:
            path.write_text(json.dumps(obj), encoding="utf-8")
        else:
            path.write_text(dumps(obj), encoding="utf-8")
        return str(path)

    return write
