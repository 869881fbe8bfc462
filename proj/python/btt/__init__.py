"""Lattices, norms and piecewise affine maps into the Bruhat-Tits building.

Thin wrapper over the C++ core. Maps are JSON documents (dicts or JSON text)
in the same format the ``btt`` command line reads; results come back as dicts
identical to the command line's JSON output.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence, Union

from . import _core

__all__ = [
    "BttError",
    "evaluate",
    "generic_fiber",
    "hom",
    "lattice",
    "split",
    "tree_dot",
    "tree_geodesic",
    "tree_helly",
    "tree_neighbors",
    "validate",
]

JsonLike = Union[str, Mapping[str, Any]]


class BttError(ValueError):
    """A failure reported by the core; ``code`` is the error name (e.g. "SchemaError")."""

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


def _text(doc: JsonLike) -> str:
    return doc if isinstance(doc, str) else json.dumps(doc)


def _call(fn, *args, **kwargs) -> tuple[dict, int]:
    try:
        body, code = fn(*args, **kwargs)
    except _core.Error as e:
        message, name = e.args
        raise BttError(message, name) from None
    return json.loads(body), code


def _coords(xs: Sequence[Any]) -> list[str]:
    return [str(x) for x in xs]


def validate(phi: JsonLike, field: str | None = None) -> dict:
    """Complex and gluing report; ``result["ok"]`` tells whether both pass."""
    return _call(_core.validate, _text(phi), field)[0]


def evaluate(phi: JsonLike, cell: str, at: Sequence[Any], field: str | None = None) -> dict:
    """The norm Φ(x) for x in the given cell; coordinates may be ints or "a/b" strings."""
    return _call(_core.evaluate, _text(phi), cell, _coords(at), field)[0]


def lattice(phi: JsonLike, vertex: Sequence[Any], character: Sequence[int], field: str | None = None) -> dict:
    return _call(_core.lattice, _text(phi), _coords(vertex), list(character), field)[0]


def generic_fiber(phi: JsonLike, field: str | None = None) -> dict:
    return _call(_core.generic_fiber, _text(phi), field)[0]


def split(phi: JsonLike, depth: int | None = None, far_cap: int = 1024, field: str | None = None) -> dict:
    """Verdict dict: "split" with a frame, "not_split" with a certificate, or "unknown"."""
    return _call(_core.split, _text(phi), depth, far_cap, field)[0]


def hom(phi: JsonLike, morphism: JsonLike, seed: int = 0, samples: int = 0, field: str | None = None) -> dict:
    """``morphism`` is {"target": map, "matrix": rows}."""
    return _call(_core.hom, _text(phi), _text(morphism), seed, samples, field)[0]


def tree_neighbors(field: str = "padic:2", center: str = "0:0") -> dict:
    return _call(_core.tree_neighbors, field, center)[0]


def tree_geodesic(source: str, target: str, field: str = "padic:2") -> dict:
    return _call(_core.tree_geodesic, source, target, field)[0]


def tree_helly(vertices: Sequence[str], field: str = "padic:2") -> dict:
    return _call(_core.tree_helly, list(vertices), field)[0]


def tree_dot(field: str = "padic:2", center: str = "0:0", radius: int = 2, radius_cap: int = 8) -> str:
    try:
        return _core.tree_dot(field, center, radius, radius_cap)
    except _core.Error as e:
        message, name = e.args
        raise BttError(message, name) from None
