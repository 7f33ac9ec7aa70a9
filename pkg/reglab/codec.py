"""JSON documents for structures, partitions and reports.

Every document carries ``"schema": "reglab/1"``. Rationals travel as "p/q"
strings and output is written with sorted keys, so equal inputs produce
byte-identical files.
"""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses
from fractions import Fraction
import json
import logging
from pathlib import Path
from typing import Any

import voluptuous as vol

from .const import SCHEMA, Family
from .core import (
    Graph,
    Partition,
    ThreeGraph,
    Threshold,
    VertexSet,
    format_rational,
    parse_rational,
)
from .exceptions import DomainError, InputError
from .families import LabeledFamilyInstance

logger = logging.getLogger(__name__)

KINDS = {Graph.kind: Graph, ThreeGraph.kind: ThreeGraph}

_INDEX_LIST = [vol.All(int, vol.Range(min=0))]

STRUCTURE_SCHEMA = vol.Schema(
    {
        vol.Optional("schema"): SCHEMA,
        vol.Required("kind"): vol.In(list(KINDS)),
        vol.Required("n"): vol.All(int, vol.Range(min=0)),
        vol.Required("edges"): [list],
        vol.Optional("family"): str,
        vol.Optional("labels"): {str: _INDEX_LIST},
        vol.Optional("sides"): {str: _INDEX_LIST},
        vol.Optional("params"): dict,
    }
)

PARTITION_SCHEMA = vol.Schema(
    {
        vol.Optional("schema"): SCHEMA,
        vol.Optional("n"): vol.All(int, vol.Range(min=0)),
        vol.Required("parts"): [_INDEX_LIST],
    }
)

OPTIONS_SCHEMA = vol.Schema({vol.Optional("schema"): SCHEMA}, extra=vol.ALLOW_EXTRA)


def _location(source: str, err: vol.Invalid) -> str:
    path = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.path)
    return f"{source}:{path.lstrip('.') or '$'}"


def to_jsonable(obj: Any) -> Any:
    """Convert library values into plain JSON types."""
    match obj:
        case bool() | int() | str() | None:
            return obj
        case Fraction():
            return format_rational(obj)
        case Threshold():
            return str(obj)
        case VertexSet():
            return list(obj)
        case Partition():
            return obj.as_lists()
        case Graph() | ThreeGraph():
            return structure_to_dict(obj)
        case LabeledFamilyInstance():
            return instance_to_dict(obj)
        case float():
            raise DomainError("floating point values are not serialised")
        case Mapping():
            return {_key(k): to_jsonable(v) for k, v in obj.items()}
        case list() | tuple() | set() | frozenset():
            items = [to_jsonable(v) for v in obj]
            return sorted(items, key=json.dumps) if isinstance(obj, set | frozenset) else items
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise DomainError(f"cannot serialise {type(obj).__name__}")


def _key(key: Any) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(to_jsonable(key))


def structure_to_dict(host) -> dict[str, Any]:
    """Graph or 3-graph document."""
    return {
        "schema": SCHEMA,
        "kind": host.kind,
        "n": host.n,
        "edges": [list(edge) for edge in host.edges],
    }


def instance_to_dict(inst: LabeledFamilyInstance) -> dict[str, Any]:
    """Structure document with family, labels, sides and params."""
    data = structure_to_dict(inst.graph)
    data.update(
        {
            "family": inst.family,
            "labels": {name: list(members) for name, members in inst.labels.items()},
            "sides": {name: list(members) for name, members in inst.sides.items()},
            "params": to_jsonable(inst.params),
        }
    )
    return data


def partition_to_dict(p: Partition) -> dict[str, Any]:
    """Partition document."""
    return {"schema": SCHEMA, "n": p.n, "parts": p.as_lists()}


def structure_from_dict(data: Any, source: str = "<input>") -> LabeledFamilyInstance:
    """Validate and load a structure document.

    Bare graphs come back wrapped in an instance without labels.
    """
    try:
        data = STRUCTURE_SCHEMA(data)
    except vol.Invalid as err:
        raise InputError(err.msg, _location(source, err)) from err
    cls = KINDS[data["kind"]]
    try:
        host = cls(data["n"], data["edges"])
        labels = {k: _checked_set(v, host.n) for k, v in data.get("labels", {}).items()}
        sides = {k: _checked_set(v, host.n) for k, v in data.get("sides", {}).items()}
    except DomainError as err:
        raise InputError(str(err), f"{source}:edges") from err
    params = dict(data.get("params", {}))
    if "classes" in params:
        params["classes"] = tuple(VertexSet(c) for c in params["classes"])
    for key in ("doubled", "sizes", "z1", "z2", "z3"):
        if key in params:
            params[key] = tuple(params[key])
    return LabeledFamilyInstance(
        graph=host,
        labels=labels,
        family=data.get("family", Family.BASIC),
        sides=sides,
        params=params,
    )


def _checked_set(members: list[int], n: int) -> VertexSet:
    if any(v >= n for v in members):
        raise DomainError(f"label member outside 0..{n - 1}")
    return VertexSet(members)


def partition_from_dict(data: Any, n: int, source: str = "<input>") -> Partition:
    """Validate and load a partition of 0..n-1."""
    try:
        data = PARTITION_SCHEMA(data)
    except vol.Invalid as err:
        raise InputError(err.msg, _location(source, err)) from err
    if data.get("n", n) != n:
        raise InputError(f"partition is for {data['n']} vertices, structure has {n}", f"{source}:n")
    try:
        return Partition(n, data["parts"])
    except DomainError as err:
        raise InputError(str(err), f"{source}:parts") from err


def read_json(path: str | Path) -> Any:
    """Read a JSON file, turning I/O and syntax problems into InputError."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read file: {err.strerror}", str(path)) from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(err.msg, f"{path}:{err.lineno}:{err.colno}") from err


def load_structure(path: str | Path) -> LabeledFamilyInstance:
    """Load a graph or 3-graph file."""
    logger.debug("Loading structure from %s", path)
    return structure_from_dict(read_json(path), str(path))


def load_partition(path: str | Path, n: int) -> Partition:
    """Load a partition file for a structure on n vertices."""
    logger.debug("Loading partition from %s", path)
    return partition_from_dict(read_json(path), n, str(path))


def load_options(path: str | Path) -> dict[str, Any]:
    """Load a JSON options file; values are validated by the Config schema."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise InputError("options file must hold a JSON object", f"{path}:$")
    try:
        data = OPTIONS_SCHEMA(data)
    except vol.Invalid as err:
        raise InputError(err.msg, _location(str(path), err)) from err
    data.pop("schema", None)
    return data


def parse_eps(text: str, location: str = "--eps") -> Fraction:
    """A positive exact rational from the command line."""
    value = parse_rational(text, location)
    if value <= 0:
        raise InputError(f"must be positive, got {text!r}", location)
    return value


def dumps(obj: Any) -> str:
    """Canonical JSON text with a trailing newline."""
    data = to_jsonable(obj)
    if isinstance(data, dict) and "schema" not in data:
        data = {"schema": SCHEMA, **data}
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
