"""Classic graph problems encoded as digraph-partition instances.

Each encoder produces an :class:`EncodedProblem` (instance + decode context);
:func:`decode` maps an optimal solve outcome back to a solution of the source
problem.  Conventions shared by every encoder: undirected edges are oriented
from the lower to the higher vertex index, arc weights are 1 unless the
source problem supplies magnitudes, and all magnitudes otherwise live in the
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .graphs import OrientedDigraph, Partition, UndirectedGraph
from .mwdp import (
    Matrix2,
    MwdpInstance,
    SolveOutcome,
    SolvePolicy,
    solve,
)
from .rationals import to_fraction


class EncodingKind(Enum):
    MAX_CUT = "max-cut"
    DIRECTED_MAX_CUT = "directed-max-cut"
    EULERIAN_CLOSENESS = "eulerian"
    MIN_ST_CUT_DIRECTED = "min-st-cut-directed"
    MIN_ST_CUT_UNDIRECTED = "min-st-cut-undirected"
    TWO_COLOR_PARTITION = "two-color-partition"
    MAX_AVG_DEGREE = "max-avg-degree"
    TWO_COLOR_DIFFERENCE = "two-color-difference"


@dataclass(frozen=True)
class EncodedProblem:
    instance: MwdpInstance
    kind: EncodingKind
    context: Mapping[str, object]

    @staticmethod
    def _ctx(**kwargs) -> Mapping[str, object]:
        return MappingProxyType(dict(kwargs))


class TwoColoredGraph:
    """Simple undirected graph whose edges carry a color (1 or 2) and an
    optional rational weight (default 1)."""

    __slots__ = ("n", "edges", "colors", "weights")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        colors: Iterable[int],
        weights: Optional[Iterable[object]] = None,
    ):
        base = UndirectedGraph(n, edges)  # validates simplicity
        colors = tuple(int(c) for c in colors)
        if len(colors) != len(base.edges):
            raise ValueError("colors must match edges one-to-one")
        if any(c not in (1, 2) for c in colors):
            raise ValueError("edge colors must be 1 or 2")
        if weights is None:
            w = (Fraction(1),) * len(base.edges)
        else:
            w = tuple(to_fraction(x) for x in weights)
            if len(w) != len(base.edges):
                raise ValueError("weights must match edges one-to-one")
        self.n = n
        self.edges = base.edges
        self.colors = colors
        self.weights = w


def _oriented(edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(u, v) if u < v else (v, u) for u, v in edges]


# -- max cut ----------------------------------------------------------------

CUT_MATRIX = Matrix2(0, 1, 1, 0)


def encode_max_cut(g: UndirectedGraph) -> EncodedProblem:
    """Maximum cut: every edge scores 1 exactly when its endpoints split."""
    arcs = [(u, v, 1, CUT_MATRIX) for u, v in _oriented(g.edges)]
    inst = MwdpInstance.from_arcs(g.n, arcs)
    return EncodedProblem(inst, EncodingKind.MAX_CUT, EncodedProblem._ctx(n=g.n))


@dataclass(frozen=True)
class CutResult:
    partition: Partition
    size: int


def _decode_max_cut(problem: EncodedProblem, outcome: SolveOutcome) -> CutResult:
    return CutResult(outcome.partition, int(outcome.value))


# -- directed max cut -------------------------------------------------------

DIRECTED_CUT_MATRIX = Matrix2(0, 1, 0, 0)


def encode_directed_max_cut(d: OrientedDigraph) -> EncodedProblem:
    """Maximize the number of arcs leaving X1 into X2."""
    arcs = [(t, h, 1, DIRECTED_CUT_MATRIX) for t, h in d.arcs]
    inst = MwdpInstance.from_arcs(d.n, arcs)
    return EncodedProblem(inst, EncodingKind.DIRECTED_MAX_CUT, EncodedProblem._ctx(n=d.n))


def _decode_directed_max_cut(problem: EncodedProblem, outcome: SolveOutcome) -> CutResult:
    return CutResult(outcome.partition, int(outcome.value))


# -- closeness to Eulerian --------------------------------------------------

EULERIAN_MATRIX = Matrix2(1, 2, 0, 1)


def encode_eulerian_closeness(d: OrientedDigraph) -> EncodedProblem:
    """Maximize (#arcs X1->X2) - (#arcs X2->X1).

    Uses the shifted non-negative matrix [[1, 2], [0, 1]]; the decoder
    subtracts the arc count.  Digraphs with in-degree = out-degree everywhere
    decode to 0.
    """
    arcs = [(t, h, 1, EULERIAN_MATRIX) for t, h in d.arcs]
    inst = MwdpInstance.from_arcs(d.n, arcs)
    return EncodedProblem(
        inst, EncodingKind.EULERIAN_CLOSENESS, EncodedProblem._ctx(arc_count=d.arc_count)
    )


@dataclass(frozen=True)
class EulerianResult:
    partition: Partition
    closeness: int


def _decode_eulerian(problem: EncodedProblem, outcome: SolveOutcome) -> EulerianResult:
    closeness = outcome.value - problem.context["arc_count"]
    return EulerianResult(outcome.partition, int(closeness))


# -- minimum s-t cut --------------------------------------------------------

ST_CUT_DIRECTED_MATRIX = Matrix2(1, 0, 1, 1)
ST_CUT_UNDIRECTED_MATRIX = Matrix2(1, 0, 0, 1)


def encode_min_st_cut(
    g: UndirectedGraph | OrientedDigraph, s: int, t: int
) -> EncodedProblem:
    """Minimum s-t cut (directed or undirected input).

    Every original edge/arc pays 1 unless it crosses the cut in the charged
    direction.  Two auxiliary vertices pin the sides: an arc into s whose
    matrix pays |E| only when s sits in X1, and an arc out of t paying |E|
    only when t sits in X2.  The optimum equals 3|E| minus the minimum cut.
    """
    if s == t:
        raise ValueError("s and t must differ")
    n = g.n
    for v in (s, t):
        if not 0 <= v < n:
            raise ValueError(f"terminal {v} out of range [0, {n})")
    if isinstance(g, OrientedDigraph):
        kind = EncodingKind.MIN_ST_CUT_DIRECTED
        base_arcs = list(g.arcs)
        matrix = ST_CUT_DIRECTED_MATRIX
    else:
        kind = EncodingKind.MIN_ST_CUT_UNDIRECTED
        base_arcs = _oriented(g.edges)
        matrix = ST_CUT_UNDIRECTED_MATRIX
    total = len(base_arcs)
    aux_s, aux_t = n, n + 1
    big = Fraction(total)
    arcs = [(u, v, 1, matrix) for u, v in base_arcs]
    arcs.append((aux_s, s, 1, Matrix2(big, 0, 0, 0)))
    arcs.append((t, aux_t, 1, Matrix2(0, 0, 0, big)))
    inst = MwdpInstance.from_arcs(n + 2, arcs)
    return EncodedProblem(
        inst, kind, EncodedProblem._ctx(n=n, s=s, t=t, total=total)
    )


@dataclass(frozen=True)
class StCutResult:
    partition: Partition  # over the original vertices, s in X1, t in X2
    size: int


def _decode_min_st_cut(problem: EncodedProblem, outcome: SolveOutcome) -> StCutResult:
    ctx = problem.context
    n, s, t, total = ctx["n"], ctx["s"], ctx["t"], ctx["total"]
    size = 3 * total - outcome.value
    bits = outcome.partition.bits[:n]
    if not (bits[s] == 0 and bits[t] == 1):
        # Only reachable when every s-t partition is minimum (all ties);
        # return the canonical one.
        bits = tuple(1 if v == t else 0 for v in range(n))
    return StCutResult(Partition(bits), int(size))


# -- 2-color partition ------------------------------------------------------

COLOR1_INSIDE_X1 = Matrix2(1, 0, 0, 0)
COLOR2_INSIDE_X2 = Matrix2(0, 0, 0, 1)


def encode_two_color_partition(cg: TwoColoredGraph) -> EncodedProblem:
    """Maximize (#color-1 edges inside X1) + (#color-2 edges inside X2)."""
    arcs = [
        (u, v, 1, COLOR1_INSIDE_X1 if c == 1 else COLOR2_INSIDE_X2)
        for (u, v), c in zip(cg.edges, cg.colors)
    ]
    inst = MwdpInstance.from_arcs(cg.n, arcs)
    return EncodedProblem(inst, EncodingKind.TWO_COLOR_PARTITION, EncodedProblem._ctx(n=cg.n))


@dataclass(frozen=True)
class TwoColorPartitionResult:
    partition: Partition
    count: int


def _decode_two_color_partition(
    problem: EncodedProblem, outcome: SolveOutcome
) -> TwoColorPartitionResult:
    return TwoColorPartitionResult(outcome.partition, int(outcome.value))


# -- maximum average degree / densest subgraph -------------------------------


def encode_max_avg_degree_decision(g: UndirectedGraph, k) -> EncodedProblem:
    """Decision form: is there a nonempty W with average degree > k in G[W]?

    Each vertex u gets a partner vertex and an arc to it paying k when both
    stay in X1; each original edge pays 2 when both endpoints move to X2.
    The optimum exceeds k|V| exactly when a qualifying W = V(G) cap X2
    exists.
    """
    k = to_fraction(k)
    if k < 0:
        raise ValueError("degree threshold k must be non-negative")
    n = g.n
    partner_matrix = Matrix2(k, 0, 0, 0)
    edge_matrix = Matrix2(0, 0, 0, 2)
    arcs: list[tuple[int, int, object, Matrix2]] = [
        (u, v, 1, edge_matrix) for u, v in _oriented(g.edges)
    ]
    arcs.extend((u, n + u, 1, partner_matrix) for u in range(n))
    inst = MwdpInstance.from_arcs(2 * n, arcs)
    return EncodedProblem(
        inst, EncodingKind.MAX_AVG_DEGREE, EncodedProblem._ctx(n=n, k=k)
    )


@dataclass(frozen=True)
class AvgDegreeResult:
    witness: Optional[frozenset[int]]


def _decode_max_avg_degree(
    problem: EncodedProblem, outcome: SolveOutcome
) -> AvgDegreeResult:
    n, k = problem.context["n"], problem.context["k"]
    if outcome.value <= k * n:
        return AvgDegreeResult(None)
    witness = frozenset(v for v in range(n) if not outcome.partition.in_x1(v))
    return AvgDegreeResult(witness)


def max_density_subgraph(
    g: UndirectedGraph, policy: Optional[SolvePolicy] = None
) -> tuple[frozenset[int], Fraction]:
    """Nonempty W maximizing edges(W) / |W|.

    Binary search on the average-degree decision encoder over k in
    [0, n-1]; distinct subgraph average degrees differ by more than the
    final interval width 1/(n(n-1)), so the last witness is exactly optimal
    and its own density is returned.
    """
    n = g.n
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    if not g.edges:
        return frozenset({0}), Fraction(0)
    adj_pairs = set(g.edges)

    def edges_inside(w: frozenset[int]) -> int:
        return sum(1 for u, v in adj_pairs if u in w and v in w)

    def witness(k: Fraction) -> Optional[frozenset[int]]:
        problem = encode_max_avg_degree_decision(g, k)
        outcome = solve(problem.instance, policy)
        return _decode_max_avg_degree(problem, outcome).witness

    lo, hi = Fraction(0), Fraction(n - 1)
    best = witness(lo)
    assert best is not None  # the graph has an edge
    threshold = Fraction(1, n * (n - 1))
    while hi - lo >= threshold:
        mid = (lo + hi) / 2
        w = witness(mid)
        if w is None:
            hi = mid
        else:
            lo, best = mid, w
    return best, Fraction(edges_inside(best), len(best))


# -- 2-color difference -----------------------------------------------------

COLOR2_GAIN = Matrix2(1, 0, 0, 0)
COLOR1_LOSS = Matrix2(-1, 0, 0, 0)


def encode_two_color_difference(cg: TwoColoredGraph) -> EncodedProblem:
    """Maximize w2(X) - w1(X) over vertex sets X (weights of the edges of
    each color inside X); X is read off as X1.

    Edge weights become arc weights, which must stay positive: zero-weight
    edges are dropped (they never contribute) and negative-weight edges flip
    color along with the weight's sign (an exact reformulation).
    """
    arcs = []
    for (u, v), c, w in zip(cg.edges, cg.colors, cg.weights):
        if w == 0:
            continue
        if w < 0:
            c, w = 3 - c, -w
        matrix = COLOR2_GAIN if c == 2 else COLOR1_LOSS
        if u > v:
            u, v = v, u
        arcs.append((u, v, w, matrix))
    inst = MwdpInstance.from_arcs(cg.n, arcs)
    return EncodedProblem(
        inst, EncodingKind.TWO_COLOR_DIFFERENCE, EncodedProblem._ctx(n=cg.n)
    )


@dataclass(frozen=True)
class TwoColorDifferenceResult:
    x: frozenset[int]
    value: Fraction


def _decode_two_color_difference(
    problem: EncodedProblem, outcome: SolveOutcome
) -> TwoColorDifferenceResult:
    return TwoColorDifferenceResult(frozenset(outcome.partition.x1), outcome.value)


# -- dispatch ---------------------------------------------------------------

_DECODERS = {
    EncodingKind.MAX_CUT: _decode_max_cut,
    EncodingKind.DIRECTED_MAX_CUT: _decode_directed_max_cut,
    EncodingKind.EULERIAN_CLOSENESS: _decode_eulerian,
    EncodingKind.MIN_ST_CUT_DIRECTED: _decode_min_st_cut,
    EncodingKind.MIN_ST_CUT_UNDIRECTED: _decode_min_st_cut,
    EncodingKind.TWO_COLOR_PARTITION: _decode_two_color_partition,
    EncodingKind.MAX_AVG_DEGREE: _decode_max_avg_degree,
    EncodingKind.TWO_COLOR_DIFFERENCE: _decode_two_color_difference,
}


def decode(problem: EncodedProblem, outcome: SolveOutcome):
    """Translate an optimal outcome of the encoded instance back to the source
    problem.  The outcome must come from solving ``problem.instance``."""
    return _DECODERS[problem.kind](problem, outcome)


def solve_encoded(problem: EncodedProblem, policy: Optional[SolvePolicy] = None):
    """Solve the encoded instance and decode; returns (outcome, result)."""
    outcome = solve(problem.instance, policy)
    return outcome, decode(problem, outcome)
