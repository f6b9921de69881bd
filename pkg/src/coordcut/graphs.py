"""Graph containers and the exact max-flow / min-cut kernel.

All graph values are immutable after construction and safe to share across
threads; every operation here is a pure function of its inputs.

Capacities and edge weights are exact rationals.  The flow solver scales them
by the least common multiple of their denominators and runs Dinic's algorithm
on Python integers, so returned flow values and cut certificates are exact.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NoFiniteCut
from .rationals import to_fraction


def _check_vertex(v: object, n: int, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValueError(f"{what} must be an int, got {v!r}")
    if not 0 <= v < n:
        raise ValueError(f"{what} {v} out of range [0, {n})")
    return v


class Partition:
    """A two-way split (X1, X2) of vertices 0..n-1, stored as a bit vector.

    Bit 0 means X1 and bit 1 means X2.  The same object doubles as a binary
    strategy profile: X1 corresponds to action one, X2 to action two.

    Partitions compare lexicographically on their bit vectors (the library's
    tie-break order for exact solvers), and a partition is *not* identified
    with its complement: the two sides play asymmetric roles.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("partition bits must be 0 (X1) or 1 (X2)")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Partition is immutable")

    @classmethod
    def all_x1(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def all_x2(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @classmethod
    def from_x2_set(cls, n: int, x2: Iterable[int]) -> "Partition":
        x2 = set(x2)
        for v in x2:
            _check_vertex(v, n, "vertex")
        return cls(tuple(1 if v in x2 else 0 for v in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def x1(self) -> tuple[int, ...]:
        return tuple(v for v, b in enumerate(self.bits) if b == 0)

    @property
    def x2(self) -> tuple[int, ...]:
        return tuple(v for v, b in enumerate(self.bits) if b == 1)

    def in_x1(self, v: int) -> bool:
        return self.bits[v] == 0

    # Strategy-profile aliases: X1 = action one, X2 = action two.
    def plays_one(self, v: int) -> bool:
        return self.bits[v] == 0

    @property
    def ones(self) -> tuple[int, ...]:
        return self.x1

    @property
    def twos(self) -> tuple[int, ...]:
        return self.x2

    def flipped(self) -> "Partition":
        return Partition(tuple(1 - b for b in self.bits))

    def restrict(self, vertices: Sequence[int]) -> "Partition":
        """Partition of the listed vertices, re-indexed in the given order."""
        return Partition(tuple(self.bits[v] for v in vertices))

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.bits == other.bits

    def __lt__(self, other: "Partition") -> bool:
        return self.bits < other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"Partition(x1={list(self.x1)}, x2={list(self.x2)})"


class UndirectedGraph:
    """Simple undirected graph with optional rational edge weights.

    Edges are normalized to ``(min(u, v), max(u, v))``.  Self-loops and
    parallel edges are rejected at construction; callers merge duplicates
    explicitly.
    """

    __slots__ = ("n", "edges", "weights", "_adjacency")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        weights: Optional[Iterable[object]] = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            _check_vertex(u, n, "edge endpoint")
            _check_vertex(v, n, "edge endpoint")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"parallel edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        if weights is None:
            object.__setattr__(self, "weights", None)
        else:
            w = tuple(to_fraction(x) for x in weights)
            if len(w) != len(norm):
                raise ValueError("weights must match edges one-to-one")
            object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_adjacency", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("UndirectedGraph is immutable")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists, computed once and cached."""
        cached = self._adjacency
        if cached is None:
            adj: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            cached = tuple(tuple(a) for a in adj)
            object.__setattr__(self, "_adjacency", cached)
        return cached

    def neighbor_side_counts(self, bits: Sequence[int]) -> tuple[list[int], list[int]]:
        """Per-vertex counts of neighbors with bit 0 (X1) and bit 1 (X2)."""
        cnt1 = [0] * self.n
        cnt2 = [0] * self.n
        for u, v in self.edges:
            if bits[v]:
                cnt2[u] += 1
            else:
                cnt1[u] += 1
            if bits[u]:
                cnt2[v] += 1
            else:
                cnt1[v] += 1
        return cnt1, cnt2


class OrientedDigraph:
    """Directed graph with no self-loops, no parallel arcs and no 2-cycles."""

    __slots__ = ("n", "arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        out: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for t, h in arcs:
            _check_vertex(t, n, "arc tail")
            _check_vertex(h, n, "arc head")
            if t == h:
                raise ValueError(f"self-loop at vertex {t}")
            if (t, h) in seen:
                raise ValueError(f"parallel arc ({t}, {h})")
            if (h, t) in seen:
                raise ValueError(f"2-cycle between {t} and {h}")
            seen.add((t, h))
            out.append((t, h))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(out))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("OrientedDigraph is immutable")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)


#: Marker for an effectively infinite capacity.  Internally replaced by
#: (sum of all finite capacities) + 1, so arithmetic stays finite and a min
#: cut that is forced through such an arc is detected exactly.
INFINITE = None


class FlowNetwork:
    """Directed capacitated network with designated source and sink.

    Arc capacities are non-negative rationals, or :data:`INFINITE` (``None``)
    for the sentinel "infinite" capacity.  Parallel arcs and 2-cycles are
    allowed here; they are meaningful for flow.
    """

    __slots__ = ("n", "source", "sink", "arcs")

    def __init__(
        self,
        n: int,
        source: int,
        sink: int,
        arcs: Iterable[tuple[int, int, object]] = (),
    ):
        if n < 0:
            raise ValueError("node count must be non-negative")
        _check_vertex(source, n, "source")
        _check_vertex(sink, n, "sink")
        if source == sink:
            raise ValueError("source and sink must differ")
        out: list[tuple[int, int, Optional[Fraction]]] = []
        for t, h, cap in arcs:
            _check_vertex(t, n, "arc tail")
            _check_vertex(h, n, "arc head")
            if cap is INFINITE:
                out.append((t, h, None))
                continue
            c = to_fraction(cap)
            if c < 0:
                raise ValueError(f"negative capacity on arc ({t}, {h})")
            out.append((t, h, c))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "sink", sink)
        object.__setattr__(self, "arcs", tuple(out))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("FlowNetwork is immutable")


def connected_components(g: UndirectedGraph) -> list[set[int]]:
    """Connected components as vertex sets, ordered by smallest member."""
    adj = g.adjacency()
    seen = [False] * g.n
    components: list[set[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        components.append(comp)
    return components


def _dinic(n: int, arcs: Sequence[tuple[int, int, int]], s: int, t: int) -> tuple[int, list[int]]:
    """Max flow on integer capacities.

    Returns ``(flow, head)`` where ``head`` is the list of arc records; the
    residual graph is left in-place for reachability queries.  Arc records are
    ``[to, cap, rev_index]`` stored per node.
    """
    graph: list[list[list[int]]] = [[] for _ in range(n)]
    for u, v, c in arcs:
        if u == v:
            continue
        graph[u].append([v, c, len(graph[v])])
        graph[v].append([u, 0, len(graph[u]) - 1])

    total = 0
    while True:
        # BFS level graph.
        level = [-1] * n
        level[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for e in graph[u]:
                if e[1] > 0 and level[e[0]] < 0:
                    level[e[0]] = level[u] + 1
                    dq.append(e[0])
        if level[t] < 0:
            break
        # Iterative DFS for a blocking flow.
        it = [0] * n
        while True:
            # Find an augmenting path in the level graph.
            path: list[tuple[int, int]] = []  # (node, edge index into graph[node])
            u = s
            while u != t:
                advanced = False
                while it[u] < len(graph[u]):
                    e = graph[u][it[u]]
                    if e[1] > 0 and level[e[0]] == level[u] + 1:
                        path.append((u, it[u]))
                        u = e[0]
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        path = []
                        break
                    # Dead end: retreat and retire the edge we came through.
                    pu, pe = path.pop()
                    it[pu] += 1
                    u = pu
            if not path and u != t:
                break
            # Augment along the path by its bottleneck.
            bottleneck = min(graph[pu][pe][1] for pu, pe in path)
            for pu, pe in path:
                e = graph[pu][pe]
                e[1] -= bottleneck
                graph[e[0]][e[2]][1] += bottleneck
            total += bottleneck

    return total, graph


def _residual_source_side(n: int, graph: list[list[list[int]]], s: int) -> set[int]:
    side = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for e in graph[u]:
            if e[1] > 0 and e[0] not in side:
                side.add(e[0])
                stack.append(e[0])
    return side


def max_flow_min_cut(net: FlowNetwork) -> tuple[Fraction, Partition]:
    """Exact maximum flow and a minimum s-t cut certificate.

    The returned value equals both the maximum flow and the capacity of the
    returned cut; the cut places the source in X1 and the sink in X2.

    Raises NoFiniteCut when an infinite-capacity arc lies on every s-t cut
    (equivalently, when the minimum cut found crosses one).
    """
    finite_sum = sum((c for _, _, c in net.arcs if c is not None), Fraction(0))
    sentinel = finite_sum + 1
    caps = [sentinel if c is None else c for _, _, c in net.arcs]
    lcm = math.lcm(1, *(c.denominator for c in caps))
    scaled = [(t, h, int(c * lcm)) for (t, h, _), c in zip(net.arcs, caps)]
    flow, residual = _dinic(net.n, scaled, net.source, net.sink)
    side = _residual_source_side(net.n, residual, net.source)
    for (t, h, c) in net.arcs:
        if c is None and t in side and h not in side:
            raise NoFiniteCut("every s-t cut crosses an infinite-capacity arc")
    value = Fraction(flow, lcm)
    cut = Partition(tuple(0 if v in side else 1 for v in range(net.n)))
    return value, cut


def undirected_min_st_cut(
    g: UndirectedGraph, s: int, t: int
) -> tuple[Fraction, Partition]:
    """Minimum-weight s-t cut of a weighted undirected graph.

    Each edge is replaced by two opposed arcs of equal capacity and the
    directed max-flow kernel does the rest.  Unweighted graphs get unit
    weights.  Edge weights must be non-negative.
    """
    _check_vertex(s, g.n, "s")
    _check_vertex(t, g.n, "t")
    if s == t:
        raise ValueError("s and t must differ")
    weights = g.weights if g.weights is not None else (Fraction(1),) * len(g.edges)
    for (u, v), w in zip(g.edges, weights):
        if w < 0:
            raise ValueError(f"negative weight on edge ({u}, {v})")
    arcs: list[tuple[int, int, Fraction]] = []
    for (u, v), w in zip(g.edges, weights):
        arcs.append((u, v, w))
        arcs.append((v, u, w))
    net = FlowNetwork(g.n, s, t, arcs)
    return max_flow_min_cut(net)
