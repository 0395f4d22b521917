"""Exact tattooing invariants of small connected graphs.

Rationals are returned as :class:`fractions.Fraction`; compute documents keep
the ``"p/q"`` strings of the JSON form and add parsed values under ``"parsed"``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Optional

from . import _core
from ._core import ConsistencyError, GraphError, InfeasibleError, SearchLimitError

__all__ = [
    "ConsistencyError",
    "GraphError",
    "InfeasibleError",
    "SearchLimitError",
    "compute",
    "cycle_tau",
    "fr3_formulas",
    "general_fr_formulas",
    "joost_formulas",
    "oracle",
    "replay",
    "sweep",
    "verify",
]


def _value(v: Any) -> Any:
    if isinstance(v, str) and "/" in v:
        return Fraction(v)
    if isinstance(v, list):
        return [_value(x) for x in v]
    return v


def compute(
    family: Optional[str] = None,
    edge_list: Optional[str] = None,
    *,
    mode: str = "blend",
    quantity: str = "index",
    policy: str = "smallest",
    max_edges: Optional[int] = None,
    threads: int = 1,
) -> dict:
    """Compute one invariant of a family graph (``"cycle:7"``) or an edge list."""
    doc = json.loads(_core.compute(family, edge_list, mode, quantity, policy, max_edges, threads))
    doc["parsed"] = {
        "value": _value(doc["value"]),
        "index": Fraction(doc["index"]),
        "raw_ratio": Fraction(doc["raw_ratio"]),
    }
    return doc


def replay(document: dict) -> dict:
    """Re-run a compute document's witness and check it reproduces the value."""
    clean = {k: v for k, v in document.items() if k != "parsed"}
    return json.loads(_core.replay(json.dumps(clean)))


def verify(suite: str, corpus_edges: int = 5) -> list[tuple[str, str, str]]:
    """Rows of (check, status, detail); status is PASS, FAIL or DISCREPANCY."""
    return list(_core.verify(suite, corpus_edges))


def sweep(
    family: str,
    n: tuple[int, int],
    k: tuple[int, int] = (1, 1),
    *,
    mode: str = "blend",
    policy: str = "smallest",
    max_edges: Optional[int] = None,
) -> list[dict]:
    """One dict per instance, in parameter order."""
    text = _core.sweep(family, n, k, mode, policy, max_edges)
    return list(csv.DictReader(io.StringIO(text)))


def oracle(family: Optional[str] = None, edge_list: Optional[str] = None, *, mode: str = "blend") -> dict:
    """Brute-force values (cost, labelsum, index, ratio) for graphs with at most six edges."""
    return {k: _value(v) for k, v in json.loads(_core.oracle(family, edge_list, mode)).items()}


def _formula(result: tuple[int, str, str]) -> tuple[int, Fraction, str]:
    b_tau, index, source = result
    return b_tau, Fraction(index), source


def fr3_formulas(n: int) -> tuple[int, Fraction, str]:
    return _formula(_core.fr3_formulas(n))


def joost_formulas(n: int, k: int) -> tuple[int, Fraction, str]:
    return _formula(_core.joost_formulas(n, k))


def general_fr_formulas(families: list[tuple[int, int]]) -> tuple[int, Fraction, str]:
    return _formula(_core.general_fr_formulas(families))


def cycle_tau(n: int) -> int:
    return _core.cycle_tau(n)
