"""Threshold games and welfare-optimal Nash equilibria.

A threshold game is an anonymous pure-coordination polymatrix game: player u
carries a single diagonal payoff matrix [[gamma_u, 0], [0, 1 - gamma_u]] used
against every neighbor.  Playing one pays gamma_u per neighbor playing one;
playing two pays 1 - gamma_u per neighbor playing two.

For two-type games (thresholds gamma_A >= gamma_B) the welfare-optimal
equilibrium problem splits into four regimes:

1. gamma_A <= 1/2: everyone prefers two; the all-two profile is optimal.
2. gamma_B >= 1/2: everyone prefers one; the all-one profile is optimal.
3. gamma_A = 1, gamma_B = 0: reduce to a min s-t cut over contracted
   same-type components (see :func:`solve_case3`).
4. otherwise: NP-hard; solved exactly by a budgeted equilibrium scan, with
   best-response dynamics as the over-budget fallback.

The module also hosts the hitting-set gadget generator used to exhibit the
hardness regime, together with its canonical equilibria (G-extensions) and
the welfare-to-traversal decoder.  Gadget graphs contain cliques far too
large to materialize edge by edge, so they are represented by structured
edge blocks that support per-vertex neighbour-side counting in time linear
in the vertex count.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import BudgetExceeded, CoordCutError, NoValidXA, NotATraversal
from .games import EdgeGame, PolymatrixGame, StrategyProfile
from .graphs import (
    FlowNetwork,
    INFINITE,
    Partition,
    UndirectedGraph,
    connected_components,
    max_flow_min_cut,
)
from .mwdp import Matrix2
from .rationals import to_fraction

DEFAULT_NE_BUDGET = 24


# ---------------------------------------------------------------------------
# Block-structured graphs (clique-heavy gadgets)


class _CliqueBlock:
    __slots__ = ("rng",)

    def __init__(self, rng: range):
        self.rng = rng

    def edge_count(self) -> int:
        k = len(self.rng)
        return k * (k - 1) // 2

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        return itertools.combinations(self.rng, 2)

    def count_sides(self, bits, cnt1, cnt2) -> None:
        rng = self.rng
        size = len(rng)
        twos = sum(bits[rng.start : rng.stop])
        for v in rng:
            n2 = twos - bits[v]
            cnt2[v] += n2
            cnt1[v] += size - 1 - n2


class _BicliqueBlock:
    """All edges between two disjoint vertex sets."""

    __slots__ = ("left", "right")

    def __init__(self, left: Sequence[int], right: range):
        self.left = tuple(left)
        self.right = right

    def edge_count(self) -> int:
        return len(self.left) * len(self.right)

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        return itertools.product(self.left, self.right)

    def count_sides(self, bits, cnt1, cnt2) -> None:
        right = self.right
        r2 = sum(bits[right.start : right.stop])
        r1 = len(right) - r2
        l2 = sum(bits[v] for v in self.left)
        l1 = len(self.left) - l2
        for v in self.left:
            cnt1[v] += r1
            cnt2[v] += r2
        for v in right:
            cnt1[v] += l1
            cnt2[v] += l2


class _StarBlock:
    __slots__ = ("center", "leaves")

    def __init__(self, center: int, leaves: range):
        self.center = center
        self.leaves = leaves

    def edge_count(self) -> int:
        return len(self.leaves)

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        return ((self.center, leaf) for leaf in self.leaves)

    def count_sides(self, bits, cnt1, cnt2) -> None:
        leaves = self.leaves
        l2 = sum(bits[leaves.start : leaves.stop])
        cnt2[self.center] += l2
        cnt1[self.center] += len(leaves) - l2
        bc = bits[self.center]
        if bc:
            for v in leaves:
                cnt2[v] += 1
        else:
            for v in leaves:
                cnt1[v] += 1


class _EdgeListBlock:
    __slots__ = ("edges",)

    def __init__(self, edges: Sequence[tuple[int, int]]):
        self.edges = tuple(edges)

    def edge_count(self) -> int:
        return len(self.edges)

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)

    def count_sides(self, bits, cnt1, cnt2) -> None:
        for u, v in self.edges:
            if bits[v]:
                cnt2[u] += 1
            else:
                cnt1[u] += 1
            if bits[u]:
                cnt2[v] += 1
            else:
                cnt1[v] += 1


class BlockUndirectedGraph:
    """Undirected graph assembled from structured edge blocks.

    Simplicity (no self-loops or duplicate edges across blocks) is the
    builder's responsibility; the block constructions in this module satisfy
    it.  Exposes the same read surface as UndirectedGraph where it matters:
    ``n``, ``edge_count``, ``iter_edges`` and ``neighbor_side_counts``.
    """

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: Sequence[object]):
        self.n = n
        self.blocks = tuple(blocks)

    @property
    def edge_count(self) -> int:
        return sum(b.edge_count() for b in self.blocks)

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        for b in self.blocks:
            yield from b.iter_edges()

    def neighbor_side_counts(self, bits: Sequence[int]) -> tuple[list[int], list[int]]:
        cnt1 = [0] * self.n
        cnt2 = [0] * self.n
        for b in self.blocks:
            b.count_sides(bits, cnt1, cnt2)
        return cnt1, cnt2


# ---------------------------------------------------------------------------
# Game types


class ThresholdGame:
    """A graph plus a threshold gamma_u in [0, 1] per player."""

    __slots__ = ("graph", "gammas", "_ratio_pairs")

    def __init__(self, graph, gammas: Iterable[object]):
        g = tuple(to_fraction(x) for x in gammas)
        if len(g) != graph.n:
            raise ValueError("one threshold per vertex required")
        for i, x in enumerate(g):
            if not 0 <= x <= 1:
                raise ValueError(f"threshold of player {i} out of [0, 1]: {x}")
        self.graph = graph
        self.gammas = g
        self._ratio_pairs = None

    def ratio_pairs(self) -> list[tuple[int, int]]:
        """Per player: (p, q - p) for gamma = p/q; all comparisons cross-multiply."""
        if self._ratio_pairs is None:
            self._ratio_pairs = [
                (g.numerator, g.denominator - g.numerator) for g in self.gammas
            ]
        return self._ratio_pairs


class TwoTypeThreshold:
    """Threshold game with two player types A and B, gamma_B <= gamma_A."""

    __slots__ = ("graph", "types", "gamma_A", "gamma_B")

    def __init__(self, graph, types: str | Sequence[str], gamma_A, gamma_B):
        types = "".join(types)
        if len(types) != graph.n:
            raise ValueError("one type per vertex required")
        if any(t not in "AB" for t in types):
            raise ValueError("types must be 'A' or 'B'")
        ga, gb = to_fraction(gamma_A), to_fraction(gamma_B)
        if not (0 <= gb <= ga <= 1):
            raise ValueError(f"need 0 <= gamma_B <= gamma_A <= 1, got {gb}, {ga}")
        self.graph = graph
        self.types = types
        self.gamma_A = ga
        self.gamma_B = gb

    def gamma(self, v: int) -> Fraction:
        return self.gamma_A if self.types[v] == "A" else self.gamma_B

    @property
    def gammas(self) -> tuple[Fraction, ...]:
        return tuple(
            self.gamma_A if t == "A" else self.gamma_B for t in self.types
        )

    def as_threshold_game(self) -> ThresholdGame:
        return ThresholdGame(self.graph, self.gammas)


def _gammas_of(tg) -> tuple[Fraction, ...]:
    return tg.gammas if isinstance(tg.gammas, tuple) else tuple(tg.gammas)


def _ratio_pairs_of(tg) -> list[tuple[int, int]]:
    if isinstance(tg, ThresholdGame):
        return tg.ratio_pairs()
    return [
        (g.numerator, g.denominator - g.numerator) for g in _gammas_of(tg)
    ]


def to_polymatrix(tg) -> PolymatrixGame:
    """Expand into an explicit polymatrix game (materializes all edges)."""
    gammas = _gammas_of(tg)
    mats = {
        g: Matrix2(g, 0, 0, 1 - g) for g in set(gammas)
    }
    edges = [
        (u, v, EdgeGame(mats[gammas[u]], mats[gammas[v]]))
        for u, v in tg.graph.iter_edges()
    ]
    pairs = [(u, v) for u, v, _ in edges]
    games = {(u, v): g for u, v, g in edges}
    return PolymatrixGame(UndirectedGraph(tg.graph.n, pairs), games)


def threshold_welfare(tg, s: StrategyProfile) -> Fraction:
    """Social welfare evaluated directly from neighbour-side counts."""
    gammas = _gammas_of(tg)
    if s.n != tg.graph.n:
        raise ValueError(f"profile covers {s.n} players, game has {tg.graph.n}")
    bits = s.bits
    cnt1, cnt2 = tg.graph.neighbor_side_counts(bits)
    # Group integer counts by distinct threshold; then a handful of exact
    # rational multiplications finishes the job.
    acc: dict[Fraction, list[int]] = {}
    for v, g in enumerate(gammas):
        slot = acc.setdefault(g, [0, 0])
        if bits[v]:
            slot[1] += cnt2[v]
        else:
            slot[0] += cnt1[v]
    total = Fraction(0)
    for g, (ones, twos) in acc.items():
        total += g * ones + (1 - g) * twos
    return total


def nash_ratio_check(tg, s: StrategyProfile) -> bool:
    """Equilibrium test through per-vertex neighbour-count ratios.

    A vertex playing one is stable iff cnt_one * gamma >= cnt_two * (1-gamma)
    (cross-multiplied, so empty neighbourhoods pass automatically), and
    symmetrically for a vertex playing two.  Agrees with the generic
    polymatrix equilibrium test on every profile.
    """
    if s.n != tg.graph.n:
        raise ValueError(f"profile covers {s.n} players, game has {tg.graph.n}")
    bits = s.bits
    cnt1, cnt2 = tg.graph.neighbor_side_counts(bits)
    pairs = _ratio_pairs_of(tg)
    for v in range(tg.graph.n):
        p, q = pairs[v]
        if bits[v]:
            if cnt1[v] * p > cnt2[v] * q:
                return False
        else:
            if cnt2[v] * q > cnt1[v] * p:
                return False
    return True


# ---------------------------------------------------------------------------
# Welfare-optimal equilibria


class ThresholdMethod(Enum):
    ALL_ONE = "AllOne"
    ALL_TWO = "AllTwo"
    MIN_CUT = "MinCut"
    EXACT = "Exact"
    LOCAL_SEARCH = "LocalSearch"


@dataclass(frozen=True)
class Case3Audit:
    """Numbers behind the case-3 identity wel = 2|E| - |E(A,B)| - cut."""

    edge_count: int
    cross_edges: int
    cut_value: Fraction


@dataclass(frozen=True)
class ThresholdOutcome:
    profile: StrategyProfile
    welfare: Fraction
    method: ThresholdMethod
    exact: bool
    note: Optional[str] = None
    audit: Optional[Case3Audit] = None


def _scaled_welfare_terms(tg) -> tuple[list[int], list[int], int]:
    """Per-vertex integer payoff factors (one-side, two-side) and the scale."""
    gammas = _gammas_of(tg)
    lcm = math.lcm(1, *(g.denominator for g in gammas))
    p1 = [int(g * lcm) for g in gammas]
    p2 = [lcm - x for x in p1]
    return p1, p2, lcm


def _exact_welfare_optimal_ne(tg, budget: int) -> tuple[Partition, Fraction]:
    """Scan all profiles, keep ratio-check equilibria, maximize welfare."""
    n = tg.graph.n
    if n > budget:
        raise BudgetExceeded(n, budget)
    pairs = _ratio_pairs_of(tg)
    p1, p2, lcm = _scaled_welfare_terms(tg)
    graph = tg.graph
    best: Optional[tuple[int, tuple[int, ...]]] = None
    for bits in itertools.product((0, 1), repeat=n):
        cnt1, cnt2 = graph.neighbor_side_counts(bits)
        ok = True
        for v in range(n):
            p, q = pairs[v]
            if bits[v]:
                if cnt1[v] * p > cnt2[v] * q:
                    ok = False
                    break
            elif cnt2[v] * q > cnt1[v] * p:
                ok = False
                break
        if not ok:
            continue
        welfare = sum(
            (cnt2[v] * p2[v] if bits[v] else cnt1[v] * p1[v]) for v in range(n)
        )
        if best is None or welfare > best[0]:
            best = (welfare, bits)
    assert best is not None  # the all-one profile is always an equilibrium
    return Partition(best[1]), Fraction(best[0], lcm)


def _dynamics_welfare_ne(
    tg, restarts: int, seed: int
) -> tuple[Partition, Fraction]:
    """Best-response sweeps from fixed and random starts.

    Threshold games are pairwise-potential games, so strict best-response
    dynamics terminates; every limit profile is an equilibrium.
    """
    n = tg.graph.n
    pairs = _ratio_pairs_of(tg)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in tg.graph.iter_edges():
        adj[u].append(v)
        adj[v].append(u)
    rng = random.Random(seed)
    starts = [[0] * n, [1] * n]
    for _ in range(max(0, restarts)):
        starts.append([rng.randint(0, 1) for _ in range(n)])
    p1, p2, lcm = _scaled_welfare_terms(tg)

    best: Optional[tuple[int, tuple[int, ...]]] = None
    for bits in starts:
        cnt1, cnt2 = tg.graph.neighbor_side_counts(bits)
        changed = True
        guard = 0
        while changed:
            changed = False
            guard += 1
            if guard > 4 * n * n + 16:  # safety net; convergence is guaranteed
                break
            for v in range(n):
                p, q = pairs[v]
                one_pay = cnt1[v] * p
                two_pay = cnt2[v] * q
                want = 1 if two_pay > one_pay else 0 if one_pay > two_pay else bits[v]
                if want != bits[v]:
                    bits[v] = want
                    delta = 1 if want else -1
                    for w in adj[v]:
                        cnt2[w] += delta
                        cnt1[w] -= delta
                    changed = True
        welfare = sum(
            (cnt2[v] * p2[v] if bits[v] else cnt1[v] * p1[v]) for v in range(n)
        )
        key = (welfare, tuple(bits))
        if best is None or key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key
    return Partition(best[1]), Fraction(best[0], lcm)


def solve_case3(tt: TwoTypeThreshold) -> ThresholdOutcome:
    """Welfare-optimal equilibrium for gamma_A = 1, gamma_B = 0.

    In any equilibrium every connected component of the A-induced (resp.
    B-induced) subgraph plays uniformly, and an A-component playing two may
    not touch a B-component playing one.  Contract components into nodes of
    a flow network: s feeds each A-component with capacity 2x(its internal
    edge count), each B-component feeds t likewise, A->B arcs carry the
    number of connecting edges, and B->A arcs are infinite where any edge
    exists.  A minimum s-t cut then maximizes welfare, with

        welfare = 2|E(G)| - |E(A,B)| - cut.
    """
    if tt.gamma_A != 1 or tt.gamma_B != 0:
        raise ValueError(
            f"component contraction needs thresholds exactly 1 and 0, "
            f"got {tt.gamma_A}, {tt.gamma_B}"
        )
    n = tt.graph.n
    types = tt.types
    edges = list(tt.graph.iter_edges())

    a_vertices = [v for v in range(n) if types[v] == "A"]
    b_vertices = [v for v in range(n) if types[v] == "B"]

    def induced_components(vertices: list[int]) -> list[list[int]]:
        index = {v: i for i, v in enumerate(vertices)}
        sub_edges = [
            (index[u], index[v])
            for u, v in edges
            if u in index and v in index
        ]
        sub = UndirectedGraph(len(vertices), sub_edges)
        return [sorted(vertices[i] for i in comp) for comp in connected_components(sub)]

    comps_a = induced_components(a_vertices)
    comps_b = induced_components(b_vertices)
    comp_of = [-1] * n
    for i, comp in enumerate(comps_a):
        for v in comp:
            comp_of[v] = i
    for j, comp in enumerate(comps_b):
        for v in comp:
            comp_of[v] = len(comps_a) + j

    internal_a = [0] * len(comps_a)
    internal_b = [0] * len(comps_b)
    cross: dict[tuple[int, int], int] = {}
    cross_total = 0
    for u, v in edges:
        tu, tv = types[u], types[v]
        if tu == "A" and tv == "A":
            internal_a[comp_of[u]] += 1
        elif tu == "B" and tv == "B":
            internal_b[comp_of[u] - len(comps_a)] += 1
        else:
            a_vertex, b_vertex = (u, v) if tu == "A" else (v, u)
            key = (comp_of[a_vertex], comp_of[b_vertex] - len(comps_a))
            cross[key] = cross.get(key, 0) + 1
            cross_total += 1

    # Flow network: node 0 = s, 1 = t, then A-components, then B-components.
    s, t = 0, 1
    a_node = lambda i: 2 + i
    b_node = lambda j: 2 + len(comps_a) + j
    arcs: list[tuple[int, int, object]] = []
    for i, count in enumerate(internal_a):
        arcs.append((s, a_node(i), 2 * count))
    for j, count in enumerate(internal_b):
        arcs.append((b_node(j), t, 2 * count))
    for (i, j), count in sorted(cross.items()):
        arcs.append((a_node(i), b_node(j), count))
        arcs.append((b_node(j), a_node(i), INFINITE))
    net = FlowNetwork(2 + len(comps_a) + len(comps_b), s, t, arcs)
    cut_value, cut = max_flow_min_cut(net)

    bits = [0] * n
    for i, comp in enumerate(comps_a):
        side = cut.bits[a_node(i)]
        for v in comp:
            bits[v] = side
    for j, comp in enumerate(comps_b):
        side = cut.bits[b_node(j)]
        for v in comp:
            bits[v] = side
    profile = Partition(bits)

    welfare = threshold_welfare(tt, profile)
    expected = 2 * len(edges) - cross_total - cut_value
    if welfare != expected:
        raise CoordCutError(
            f"cut identity violated: welfare {welfare}, "
            f"2|E| - |E(A,B)| - cut = {expected}"
        )
    audit = Case3Audit(len(edges), cross_total, cut_value)
    return ThresholdOutcome(profile, welfare, ThresholdMethod.MIN_CUT, True, audit=audit)


def _swap_types_and_actions(tt: TwoTypeThreshold) -> TwoTypeThreshold:
    """Exchange the two actions and the two types (gamma -> 1 - gamma)."""
    swapped = "".join("B" if t == "A" else "A" for t in tt.types)
    return TwoTypeThreshold(tt.graph, swapped, 1 - tt.gamma_B, 1 - tt.gamma_A)


def welfare_optimal_nash(
    tt: TwoTypeThreshold,
    budget: int = DEFAULT_NE_BUDGET,
    restarts: int = 16,
    seed: int = 0,
) -> ThresholdOutcome:
    """Welfare-optimal pure Nash equilibrium of a two-type threshold game.

    Dispatches on the threshold regime (see the module docstring).  In the
    hard regime an exhaustive equilibrium scan runs within ``budget``;
    beyond it, best-response dynamics from seeded starts is returned with
    ``exact=False`` and an explanatory note.
    """
    n = tt.graph.n
    if tt.gamma_B >= Fraction(1, 2):
        profile = Partition.all_x1(n)
        return ThresholdOutcome(
            profile, threshold_welfare(tt, profile), ThresholdMethod.ALL_ONE, True
        )
    if tt.gamma_A <= Fraction(1, 2):
        profile = Partition.all_x2(n)
        return ThresholdOutcome(
            profile, threshold_welfare(tt, profile), ThresholdMethod.ALL_TWO, True
        )
    if tt.gamma_A == 1 and tt.gamma_B == 0:
        return solve_case3(tt)

    # Hard regime.  Canonicalize gamma_B = 0 (with 1/2 < gamma_A < 1) by
    # swapping types and actions, solve, then flip the profile back.
    if tt.gamma_B == 0:
        inner = welfare_optimal_nash(_swap_types_and_actions(tt), budget, restarts, seed)
        profile = inner.profile.flipped()
        return ThresholdOutcome(
            profile,
            threshold_welfare(tt, profile),
            inner.method,
            inner.exact,
            note=inner.note,
        )
    try:
        profile, welfare = _exact_welfare_optimal_ne(tt, budget)
        return ThresholdOutcome(profile, welfare, ThresholdMethod.EXACT, True)
    except BudgetExceeded:
        profile, welfare = _dynamics_welfare_ne(tt, restarts, seed)
        return ThresholdOutcome(
            profile,
            welfare,
            ThresholdMethod.LOCAL_SEARCH,
            False,
            note=f"{n} players exceed the exhaustive budget of {budget}; "
            "best equilibrium found by best-response dynamics",
        )


def welfare_optimal_nash_general(
    tg: ThresholdGame,
    budget: int = DEFAULT_NE_BUDGET,
    restarts: int = 16,
    seed: int = 0,
) -> ThresholdOutcome:
    """Generic exact scan (or dynamics fallback) for arbitrary thresholds."""
    try:
        profile, welfare = _exact_welfare_optimal_ne(tg, budget)
        return ThresholdOutcome(profile, welfare, ThresholdMethod.EXACT, True)
    except BudgetExceeded:
        profile, welfare = _dynamics_welfare_ne(tg, restarts, seed)
        return ThresholdOutcome(
            profile,
            welfare,
            ThresholdMethod.LOCAL_SEARCH,
            False,
            note=f"{tg.graph.n} players exceed the exhaustive budget of {budget}; "
            "best equilibrium found by best-response dynamics",
        )


# ---------------------------------------------------------------------------
# Hitting-set gadget


class Hypergraph3:
    """3-uniform hypergraph: every hyperedge is a set of exactly 3 vertices."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        out: list[tuple[int, int, int]] = []
        seen: set[tuple[int, int, int]] = set()
        for e in edges:
            members = sorted(set(e))
            if len(members) != 3:
                raise ValueError(f"hyperedge must have exactly 3 distinct vertices: {e}")
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"hyperedge vertex {v} out of range [0, {n})")
            key = tuple(members)
            if key in seen:
                raise ValueError(f"duplicate hyperedge {key}")
            seen.add(key)
            out.append(key)  # type: ignore[arg-type]
        self.n = n
        self.edges = tuple(out)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_traversal(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(vs & set(e) for e in self.edges)


@dataclass(frozen=True)
class GadgetConstants:
    """The six integer sizes that shape the hitting-set gadget."""

    theta: int
    x_B: int
    x_A: int
    c_A: int
    c_B: int
    z: int

    def check(self, h: Hypergraph3, gamma_A, gamma_B) -> list[str]:
        """Re-verify the defining (in)equalities; returns violations."""
        ga, gb = to_fraction(gamma_A), to_fraction(gamma_B)
        m, nv = h.edge_count, h.n
        bad: list[str] = []
        if self.z != math.ceil(3 * m * (1 - gb) / (gb * (1 - 2 * gb))):
            bad.append("z ceiling formula")
        if self.theta != 6 * m + 2 * nv * self.z:
            bad.append("theta formula")
        rate = (1 - gb) * (ga - gb) / gb
        if not (self.x_B >= 1 and self.x_B * rate > self.theta):
            bad.append("x_B bound")
        if self.x_B > 1 and (self.x_B - 1) * rate > self.theta:
            bad.append("x_B minimality")
        upper = (self.x_B + 3) * (1 - gb) / gb
        if not (upper - 1 / gb < self.x_A < upper):
            bad.append("x_A interval")
        q = self.theta + 2 * m * (self.x_A + self.x_B)
        if not (self.c_A >= self.x_A and (self.c_A - 1) * (2 * ga - 1) > q):
            bad.append("c_A bound")
        if self.c_A - 1 >= self.x_A and (self.c_A - 2) * (2 * ga - 1) > q:
            bad.append("c_A minimality")
        ok_b = (
            self.c_B >= self.x_B
            and (self.c_B - 1) * (1 - 2 * gb) > q
            and Fraction(self.c_B - 1, m) >= gb / (1 - gb)
        )
        if not ok_b:
            bad.append("c_B bound")
        if (
            self.c_B - 1 >= self.x_B
            and (self.c_B - 2) * (1 - 2 * gb) > q
            and Fraction(self.c_B - 2, m) >= gb / (1 - gb)
        ):
            bad.append("c_B minimality")
        return bad


def gadget_constants(h: Hypergraph3, gamma_A, gamma_B) -> GadgetConstants:
    """Derive the gadget sizes for thresholds 0 < gamma_B < 1/2 < gamma_A <= 1.

    z and theta come from closed formulas; x_B, c_A and c_B are the minimal
    integers meeting their strict bounds; x_A is the largest integer strictly
    inside its open interval (any interior point works, largest is the
    deterministic choice).
    """
    ga, gb = to_fraction(gamma_A), to_fraction(gamma_B)
    if not (0 < gb < Fraction(1, 2) < ga <= 1):
        raise ValueError(
            f"need 0 < gamma_B < 1/2 < gamma_A <= 1, got {gb}, {ga}"
        )
    m, nv = h.edge_count, h.n
    if m == 0:
        raise ValueError("hypergraph has no hyperedges")
    z = math.ceil(3 * m * (1 - gb) / (gb * (1 - 2 * gb)))
    theta = 6 * m + 2 * nv * z
    x_b = math.floor(theta * gb / ((1 - gb) * (ga - gb))) + 1
    upper = (x_b + 3) * (1 - gb) / gb
    x_a = math.ceil(upper) - 1
    if not upper - 1 / gb < x_a:
        raise NoValidXA(f"no integer strictly inside ({upper - 1 / gb}, {upper})")
    q = theta + 2 * m * (x_a + x_b)
    c_a = max(x_a, math.floor(q / (2 * ga - 1)) + 2)
    c_b = max(
        x_b,
        math.floor(q / (1 - 2 * gb)) + 2,
        math.ceil(m * gb / (1 - gb)) + 1,
    )
    return GadgetConstants(theta, x_b, x_a, c_a, c_b, z)


@dataclass(frozen=True)
class HittingSetGadget:
    """The two-type threshold game encoding minimum hitting set.

    Vertex layout: the A-clique, the B-clique, one connector vertex per
    hyperedge, one selector vertex per hypergraph vertex, and a pendant set
    of ``z`` vertices per selector.  Only the A-clique has type A.
    """

    game: TwoTypeThreshold
    hypergraph: Hypergraph3
    constants: GadgetConstants
    clique_a: range
    clique_b: range
    connector: tuple[int, ...]  # per hyperedge
    selector: tuple[int, ...]  # per hypergraph vertex
    pendant: tuple[range, ...]  # per hypergraph vertex
    base_welfare: Fraction  # clique + attachment edges under the canonical sides


class ExtensionWelfare(NamedTuple):
    base: Fraction
    epsilon: Fraction
    total: Fraction


def build_hitting_set_gadget(
    h: Hypergraph3, gamma_A, gamma_B
) -> HittingSetGadget:
    """Materialize the gadget graph (block-structured; cliques stay implicit).

    Each connector attaches to the first x_A A-clique vertices and the first
    x_B B-clique vertices by index; connectors join their hyperedge's three
    selectors; every selector owns a pendant star of z leaves.
    """
    ga, gb = to_fraction(gamma_A), to_fraction(gamma_B)
    gc = gadget_constants(h, ga, gb)
    m, nv = h.edge_count, h.n

    clique_a = range(0, gc.c_A)
    clique_b = range(gc.c_A, gc.c_A + gc.c_B)
    base_r = gc.c_A + gc.c_B
    connector = tuple(base_r + e for e in range(m))
    base_v = base_r + m
    selector = tuple(base_v + u for u in range(nv))
    base_z = base_v + nv
    pendant = tuple(
        range(base_z + u * gc.z, base_z + (u + 1) * gc.z) for u in range(nv)
    )
    n_total = base_z + nv * gc.z

    blocks: list[object] = [_CliqueBlock(clique_a), _CliqueBlock(clique_b)]
    if m:
        blocks.append(_BicliqueBlock(connector, range(0, gc.x_A)))
        blocks.append(_BicliqueBlock(connector, range(gc.c_A, gc.c_A + gc.x_B)))
    incidence = [
        (connector[e], selector[u]) for e, edge in enumerate(h.edges) for u in edge
    ]
    blocks.append(_EdgeListBlock(incidence))
    for u in range(nv):
        blocks.append(_StarBlock(selector[u], pendant[u]))

    graph = BlockUndirectedGraph(n_total, blocks)
    types = "A" * gc.c_A + "B" * (n_total - gc.c_A)
    game = TwoTypeThreshold(graph, types, ga, gb)

    base_welfare = (
        Fraction(gc.c_A * (gc.c_A - 1), 2) * 2 * ga
        + Fraction(gc.c_B * (gc.c_B - 1), 2) * 2 * (1 - gb)
        + m * gc.x_A * (ga + gb)
    )
    return HittingSetGadget(
        game, h, gc, clique_a, clique_b, connector, selector, pendant, base_welfare
    )


def g_extension(gadget: HittingSetGadget, traversal: Iterable[int]) -> StrategyProfile:
    """Canonical equilibrium induced by a traversal of the hypergraph.

    The A-clique and all connectors play one, the B-clique plays two, and a
    selector (with its pendant set) plays one exactly when its hypergraph
    vertex belongs to the traversal.  Raises NotATraversal when some
    hyperedge is unhit.
    """
    t_set = set(traversal)
    h = gadget.hypergraph
    for v in t_set:
        if not 0 <= v < h.n:
            raise ValueError(f"traversal vertex {v} out of range [0, {h.n})")
    missed = [e for e in h.edges if not t_set & set(e)]
    if missed:
        raise NotATraversal(f"hyperedges not hit: {missed}")
    bits = [0] * gadget.game.graph.n
    for v in gadget.clique_b:
        bits[v] = 1
    for u in range(h.n):
        if u not in t_set:
            bits[gadget.selector[u]] = 1
            for v in gadget.pendant[u]:
                bits[v] = 1
    return Partition(bits)


def extension_welfare_parts(
    gadget: HittingSetGadget, traversal: Iterable[int]
) -> ExtensionWelfare:
    """Welfare of a G-extension, split per the closed formula.

    total = base + epsilon + |V(H)| * z * 2(1-gamma_B) - |T| * 2z(1-2gamma_B)
    where epsilon is the connector-selector edge welfare, always in
    [0, 2z(1-2gamma_B)).
    """
    t_set = set(traversal)
    h = gadget.hypergraph
    gb = gadget.game.gamma_B
    gc = gadget.constants
    hits = sum(len(t_set & set(e)) for e in h.edges)
    epsilon = 2 * gb * hits
    total = (
        gadget.base_welfare
        + epsilon
        + h.n * gc.z * 2 * (1 - gb)
        - len(t_set) * 2 * gc.z * (1 - 2 * gb)
    )
    return ExtensionWelfare(gadget.base_welfare, epsilon, total)


def traversal_from_welfare(gadget: HittingSetGadget, w_opt: Fraction) -> int:
    """Minimum traversal size from the optimal-equilibrium welfare.

    The epsilon slack is strictly below one step of the traversal-size
    coefficient, so the ceiling recovers the exact size.
    """
    gb = gadget.game.gamma_B
    gc = gadget.constants
    h = gadget.hypergraph
    numerator = gadget.base_welfare + h.n * gc.z * (2 - 2 * gb) - to_fraction(w_opt)
    step = 2 * gc.z * (1 - 2 * gb)
    return math.ceil(numerator / step)
