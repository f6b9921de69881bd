"""JSON readers and writers for the documented file formats.

Rationals are serialized as integers or ``"p/q"`` strings.  Readers raise
:class:`~coordcut.errors.ParseError` naming the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError
from .games import PolymatrixGame
from .graphs import OrientedDigraph, Partition, UndirectedGraph
from .mwdp import Matrix2, MwdpInstance
from .rationals import format_rational, to_fraction
from .encodings import TwoColoredGraph
from .threshold import Hypergraph3, ThresholdGame, TwoTypeThreshold

FORMAT_VERSION = 1


def _get(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(where, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"{where}.{key}" if where else key, "missing field")
    return obj[key]


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(where, f"expected an integer, got {value!r}")
    return value


def _rational(value: Any, where: str) -> Fraction:
    try:
        return to_fraction(value)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(where, f"expected a list, got {type(value).__name__}")
    return value


def _matrix(value: Any, where: str) -> Matrix2:
    rows = _list(value, where)
    if len(rows) != 2:
        raise ParseError(where, "matrix needs exactly two rows")
    entries = []
    for i, row in enumerate(rows):
        row = _list(row, f"{where}[{i}]")
        if len(row) != 2:
            raise ParseError(f"{where}[{i}]", "matrix row needs exactly two entries")
        entries.append([_rational(row[0], f"{where}[{i}][0]"), _rational(row[1], f"{where}[{i}][1]")])
    return Matrix2.from_rows(entries)


def _build(ctor: Callable, where: str, *args, **kwargs):
    try:
        return ctor(*args, **kwargs)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def _pair(value: Any, where: str) -> tuple[int, int]:
    pair = _list(value, where)
    if len(pair) != 2:
        raise ParseError(where, "expected a pair [u, v]")
    return _int(pair[0], f"{where}[0]"), _int(pair[1], f"{where}[1]")


def load_instance(doc: Any) -> MwdpInstance:
    """`{"n": int, "arcs": [{"tail", "head", "c", "m"}, ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    arcs = []
    for i, arc in enumerate(_list(_get(doc, "arcs", ""), "arcs")):
        where = f"arcs[{i}]"
        tail = _int(_get(arc, "tail", where), f"{where}.tail")
        head = _int(_get(arc, "head", where), f"{where}.head")
        c = _rational(_get(arc, "c", where), f"{where}.c")
        m = _matrix(_get(arc, "m", where), f"{where}.m")
        arcs.append((tail, head, c, m))
    return _build(MwdpInstance.from_arcs, "arcs", n, arcs)


def dump_instance(inst: MwdpInstance) -> dict:
    return {
        "n": inst.n,
        "arcs": [
            {
                "tail": t,
                "head": h,
                "c": format_rational(c),
                "m": [[format_rational(x) for x in row] for row in m.rows()],
            }
            for (t, h), c, m in zip(inst.arcs, inst.weights, inst.matrices)
        ],
    }


def load_game(doc: Any) -> PolymatrixGame:
    """`{"n": int, "edges": [{"u", "v", "pi_uv", "pi_vu"}, ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    edges = []
    for i, edge in enumerate(_list(_get(doc, "edges", ""), "edges")):
        where = f"edges[{i}]"
        u = _int(_get(edge, "u", where), f"{where}.u")
        v = _int(_get(edge, "v", where), f"{where}.v")
        pi_uv = _matrix(_get(edge, "pi_uv", where), f"{where}.pi_uv")
        pi_vu = _matrix(_get(edge, "pi_vu", where), f"{where}.pi_vu")
        edges.append((u, v, pi_uv, pi_vu))
    return _build(PolymatrixGame.from_edges, "edges", n, edges)


def load_threshold(doc: Any) -> ThresholdGame | TwoTypeThreshold:
    """Threshold games, per-player gammas or the two-type shorthand."""
    n = _int(_get(doc, "n", ""), "n")
    edges = [
        _pair(e, f"edges[{i}]")
        for i, e in enumerate(_list(_get(doc, "edges", ""), "edges"))
    ]
    graph = _build(UndirectedGraph, "edges", n, edges)
    if "types" in doc:
        types = _get(doc, "types", "")
        if not isinstance(types, str):
            raise ParseError("types", "expected a string of 'A'/'B'")
        gamma_a = _rational(_get(doc, "gamma_A", ""), "gamma_A")
        gamma_b = _rational(_get(doc, "gamma_B", ""), "gamma_B")
        return _build(TwoTypeThreshold, "types", graph, types, gamma_a, gamma_b)
    gammas = [
        _rational(x, f"gamma[{i}]")
        for i, x in enumerate(_list(_get(doc, "gamma", ""), "gamma"))
    ]
    return _build(ThresholdGame, "gamma", graph, gammas)


def load_hypergraph(doc: Any) -> Hypergraph3:
    """`{"n": int, "hyperedges": [[a, b, c], ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    hyperedges = []
    for i, e in enumerate(_list(_get(doc, "hyperedges", ""), "hyperedges")):
        members = _list(e, f"hyperedges[{i}]")
        hyperedges.append([_int(v, f"hyperedges[{i}][{j}]") for j, v in enumerate(members)])
    return _build(Hypergraph3, "hyperedges", n, hyperedges)


def load_colored_graph(doc: Any) -> TwoColoredGraph:
    """`{"n": int, "edges": [{"u", "v", "color", "w"?}, ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    edges, colors, weights = [], [], []
    for i, edge in enumerate(_list(_get(doc, "edges", ""), "edges")):
        where = f"edges[{i}]"
        edges.append(
            (_int(_get(edge, "u", where), f"{where}.u"), _int(_get(edge, "v", where), f"{where}.v"))
        )
        colors.append(_int(_get(edge, "color", where), f"{where}.color"))
        weights.append(_rational(edge.get("w", 1), f"{where}.w"))
    return _build(TwoColoredGraph, "edges", n, edges, colors, weights)


def load_undirected(doc: Any) -> UndirectedGraph:
    """`{"n": int, "edges": [[u, v], ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    edges = [
        _pair(e, f"edges[{i}]")
        for i, e in enumerate(_list(_get(doc, "edges", ""), "edges"))
    ]
    return _build(UndirectedGraph, "edges", n, edges)


def load_digraph(doc: Any) -> OrientedDigraph:
    """`{"n": int, "arcs": [[tail, head], ...]}`"""
    n = _int(_get(doc, "n", ""), "n")
    arcs = [
        _pair(a, f"arcs[{i}]")
        for i, a in enumerate(_list(_get(doc, "arcs", ""), "arcs"))
    ]
    return _build(OrientedDigraph, "arcs", n, arcs)


def partition_json(p: Partition) -> dict:
    return {"x1": list(p.x1), "x2": list(p.x2)}


def profile_json(p: Partition) -> dict:
    return {"one": list(p.ones), "two": list(p.twos)}


def dumps_report(report: dict) -> str:
    """Canonical JSON rendering: sorted keys, stable separators, newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
