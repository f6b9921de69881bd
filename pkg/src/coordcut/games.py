"""Binary-action polymatrix games on graphs.

Each vertex is a player with actions ``one`` and ``two``; each edge (u, v)
carries a two-player game: a payoff matrix for u (u's action picks the row,
v's the column) and one for v (v's action picks the row).  A player's payoff
is the sum over their neighbors, using the same action everywhere.

Strategy profiles are :class:`~coordcut.graphs.Partition` values: X1 is
action one, X2 is action two.

Welfare and potential maximization reduce to the digraph-partition solver:
an edge (u, v) becomes the arc u -> v (u < v after normalization) carrying
the welfare matrix ``pi_uv + pi_vu^T`` (both summands re-indexed so rows are
u's action) or the pairwise potential matrix.  Both reductions preserve the
objective exactly, profile by profile.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import BudgetExceeded, NotPotential
from .graphs import Partition, UndirectedGraph
from .mwdp import (
    Matrix2,
    MwdpInstance,
    SolveMethod,
    SolveOutcome,
    SolvePolicy,
    solve,
)

#: A strategy profile is a partition: X1 plays one, X2 plays two.
StrategyProfile = Partition

DEFAULT_NASH_BUDGET = 24


def _entry(m: Matrix2, row: int, col: int) -> Fraction:
    """Payoff entry by 0-based action bits (0 = one, 1 = two)."""
    return m.entries[(row << 1) | col]


@dataclass(frozen=True)
class EdgeGame:
    """A two-player game: ``pi_uv`` pays u (u = row), ``pi_vu`` pays v (v = row)."""

    pi_uv: Matrix2
    pi_vu: Matrix2

    def payoff_to_u(self, su: int, sv: int) -> Fraction:
        return _entry(self.pi_uv, su, sv)

    def payoff_to_v(self, su: int, sv: int) -> Fraction:
        return _entry(self.pi_vu, sv, su)

    def welfare_matrix(self) -> Matrix2:
        """Both players' payoffs summed, indexed by (u action, v action)."""
        return self.pi_uv + self.pi_vu.transpose()

    def swapped(self) -> "EdgeGame":
        """The same game seen from the other endpoint."""
        return EdgeGame(self.pi_vu, self.pi_uv)


def _coerce_matrix(m: object) -> Matrix2:
    return m if isinstance(m, Matrix2) else Matrix2.from_rows(m)


class PolymatrixGame:
    """An undirected graph with one :class:`EdgeGame` per edge.

    Edge keys are normalized to (min, max); supplying an edge as (v, u)
    swaps the two payoff matrices accordingly.
    """

    __slots__ = ("graph", "games", "_incident", "_potentials")

    def __init__(self, graph: UndirectedGraph, games: Mapping[tuple[int, int], EdgeGame]):
        keys = set(games)
        if keys != set(graph.edges):
            raise ValueError("games must cover exactly the graph's edges")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "games", {e: games[e] for e in graph.edges})
        object.__setattr__(self, "_incident", None)
        object.__setattr__(self, "_potentials", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PolymatrixGame is immutable")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int, object, object]]
    ) -> "PolymatrixGame":
        """Build from ``(u, v, pi_uv, pi_vu)`` tuples (matrices or 2x2 rows)."""
        pairs: list[tuple[int, int]] = []
        games: dict[tuple[int, int], EdgeGame] = {}
        for u, v, pi_uv, pi_vu in edges:
            game = EdgeGame(_coerce_matrix(pi_uv), _coerce_matrix(pi_vu))
            if u > v:
                u, v, game = v, u, game.swapped()
            pairs.append((u, v))
            games[(u, v)] = game
        return cls(UndirectedGraph(n, pairs), games)

    @property
    def n(self) -> int:
        return self.graph.n

    def incident(self) -> tuple[tuple[tuple[int, Matrix2], ...], ...]:
        """Per player: (neighbor, payoff matrix with the player as row)."""
        cached = self._incident
        if cached is None:
            lists: list[list[tuple[int, Matrix2]]] = [[] for _ in range(self.n)]
            for (u, v), game in self.games.items():
                lists[u].append((v, game.pi_uv))
                lists[v].append((u, game.pi_vu))
            cached = tuple(tuple(l) for l in lists)
            object.__setattr__(self, "_incident", cached)
        return cached


def player_payoff(g: PolymatrixGame, s: StrategyProfile, player: int) -> Fraction:
    """Sum of the player's payoffs against every neighbor under profile s."""
    if s.n != g.n:
        raise ValueError(f"profile covers {s.n} players, game has {g.n}")
    if not 0 <= player < g.n:
        raise ValueError(f"unknown player {player}")
    bits = s.bits
    total = Fraction(0)
    for j, pi in g.incident()[player]:
        total += _entry(pi, bits[player], bits[j])
    return total


def social_welfare(g: PolymatrixGame, s: StrategyProfile) -> Fraction:
    """Sum of all players' payoffs under profile s."""
    if s.n != g.n:
        raise ValueError(f"profile covers {s.n} players, game has {g.n}")
    bits = s.bits
    total = Fraction(0)
    for (u, v), game in g.games.items():
        total += game.payoff_to_u(bits[u], bits[v])
        total += game.payoff_to_v(bits[u], bits[v])
    return total


def is_pure_nash(g: PolymatrixGame, s: StrategyProfile) -> tuple[bool, tuple[int, ...]]:
    """Whether no player gains strictly by flipping; also the deviators."""
    if s.n != g.n:
        raise ValueError(f"profile covers {s.n} players, game has {g.n}")
    bits = s.bits
    deviators = []
    for i in range(g.n):
        cur = Fraction(0)
        alt = Fraction(0)
        bi = bits[i]
        for j, pi in g.incident()[i]:
            cur += _entry(pi, bi, bits[j])
            alt += _entry(pi, 1 - bi, bits[j])
        if alt > cur:
            deviators.append(i)
    return (not deviators, tuple(deviators))


class GameTag(Enum):
    PURE_COORDINATION = "PureCoordination"
    ANTI_COORDINATION = "AntiCoordination"
    MIXED = "Mixed"


class EdgeCoordination(NamedTuple):
    pure: bool
    anti: bool

    @property
    def tag(self) -> str:
        # Both flags may hold (all-zero game); pure takes priority.
        if self.pure:
            return "PureCoordination"
        if self.anti:
            return "AntiCoordination"
        return "Neither"


@dataclass(frozen=True)
class GameClass:
    """Coordination classification, per edge and game-wide."""

    edge_flags: tuple[EdgeCoordination, ...]
    tag: GameTag


def _edge_coordination(game: EdgeGame) -> EdgeCoordination:
    u, v = game.pi_uv, game.pi_vu
    # (one, one) and (two, two) are pure Nash equilibria of the edge game.
    pure = (
        _entry(u, 0, 0) >= _entry(u, 1, 0)
        and _entry(v, 0, 0) >= _entry(v, 1, 0)
        and _entry(u, 1, 1) >= _entry(u, 0, 1)
        and _entry(v, 1, 1) >= _entry(v, 0, 1)
    )
    # (one, two) and (two, one) are pure Nash equilibria of the edge game.
    anti = (
        _entry(u, 0, 1) >= _entry(u, 1, 1)
        and _entry(v, 1, 0) >= _entry(v, 0, 0)
        and _entry(u, 1, 0) >= _entry(u, 0, 0)
        and _entry(v, 0, 1) >= _entry(v, 1, 1)
    )
    return EdgeCoordination(pure, anti)


def classify_game(g: PolymatrixGame) -> GameClass:
    flags = tuple(_edge_coordination(g.games[e]) for e in g.graph.edges)
    if all(f.pure for f in flags):
        tag = GameTag.PURE_COORDINATION
    elif all(f.anti for f in flags):
        tag = GameTag.ANTI_COORDINATION
    else:
        tag = GameTag.MIXED
    return GameClass(flags, tag)


@dataclass(frozen=True)
class PotentialMatrix:
    """Pairwise potential of an edge game, normalized so phi11 = 0.

    Potentials are unique only up to an additive constant, so identities are
    stated over entry differences.
    """

    phi: Matrix2


def derive_pairwise_potential(game: EdgeGame) -> PotentialMatrix:
    """Integrate the deviation increments around the four pure profiles.

    Starting from phi11 = 0, u's deviation at v = one fixes phi21, v's
    deviation at u = one fixes phi12, and v's deviation at u = two fixes
    phi22.  The game admits a potential iff the remaining deviation (u at
    v = two) gives the same phi22; otherwise NotPotential is raised.
    """
    u, v = game.pi_uv, game.pi_vu
    phi11 = Fraction(0)
    phi21 = _entry(u, 1, 0) - _entry(u, 0, 0)
    phi12 = _entry(v, 1, 0) - _entry(v, 0, 0)
    phi22 = phi21 + (_entry(v, 1, 1) - _entry(v, 0, 1))
    closing = phi12 + (_entry(u, 1, 1) - _entry(u, 0, 1))
    if phi22 != closing:
        raise NotPotential(
            f"deviation increments do not close: {phi22} != {closing}"
        )
    return PotentialMatrix(Matrix2(phi11, phi12, phi21, phi22))


def _edge_potentials(g: PolymatrixGame) -> dict[tuple[int, int], PotentialMatrix]:
    cached = g._potentials
    if cached is not None:
        return cached
    potentials: dict[tuple[int, int], PotentialMatrix] = {}
    failing: list[tuple[int, int]] = []
    for e in g.graph.edges:
        try:
            potentials[e] = derive_pairwise_potential(g.games[e])
        except NotPotential:
            failing.append(e)
    if failing:
        raise NotPotential(
            f"edges without a pairwise potential: {failing}", edges=tuple(failing)
        )
    object.__setattr__(g, "_potentials", potentials)
    return potentials


def total_potential(g: PolymatrixGame, s: StrategyProfile) -> Fraction:
    """Sum of the per-edge potentials at s (phi11-normalized per edge)."""
    if s.n != g.n:
        raise ValueError(f"profile covers {s.n} players, game has {g.n}")
    potentials = _edge_potentials(g)
    bits = s.bits
    return sum(
        (_entry(potentials[(u, v)].phi, bits[u], bits[v]) for u, v in g.graph.edges),
        Fraction(0),
    )


class ReducedInstance(NamedTuple):
    """A partition instance plus the edge behind each arc (tail = lower index)."""

    instance: MwdpInstance
    arc_edges: tuple[tuple[int, int], ...]


def welfare_mwdp(g: PolymatrixGame) -> ReducedInstance:
    """Encode welfare maximization: one unit-weight arc per edge carrying the
    welfare matrix; profile value and partition value agree exactly."""
    arcs = [
        (u, v, Fraction(1), g.games[(u, v)].welfare_matrix())
        for u, v in g.graph.edges
    ]
    return ReducedInstance(MwdpInstance.from_arcs(g.n, arcs), tuple(g.graph.edges))


def potential_mwdp(g: PolymatrixGame) -> ReducedInstance:
    """Encode potential maximization; requires every edge to admit one."""
    potentials = _edge_potentials(g)
    arcs = [
        (u, v, Fraction(1), potentials[(u, v)].phi) for u, v in g.graph.edges
    ]
    return ReducedInstance(MwdpInstance.from_arcs(g.n, arcs), tuple(g.graph.edges))


def game_from_mwdp_welfare(inst: MwdpInstance) -> PolymatrixGame:
    """Inverse welfare encoding: each arc's value is split evenly, so both
    endpoint players receive c*m/2 at every outcome and the social welfare
    equals the partition value, profile by profile."""
    edges = []
    for (a, b), c, m in zip(inst.arcs, inst.weights, inst.matrices):
        half = m.scaled(c / 2)
        edges.append((a, b, half, half.transpose()))
    return PolymatrixGame.from_edges(inst.n, edges)


def game_from_mwdp_potential(inst: MwdpInstance) -> PolymatrixGame:
    """Inverse potential encoding: each arc's matrix becomes the pairwise
    potential of a two-player game.

    With phi = f(uv) and weight c, the tail player's payoffs are
    [[phi11/2, 0], [phi21 - phi11/2, phi22 - phi12]] and the head player's
    (head = row) are [[phi11/2, 0], [phi12 - phi11/2, phi22 - phi21]], both
    scaled by c.  Re-deriving the potential recovers c*f(uv) up to the
    phi11 = 0 normalization shift.
    """
    edges = []
    for (a, b), c, m in zip(inst.arcs, inst.weights, inst.matrices):
        half = m.m11 / 2
        pi_uv = Matrix2(half, 0, m.m21 - half, m.m22 - m.m12).scaled(c)
        pi_vu = Matrix2(half, 0, m.m12 - half, m.m22 - m.m21).scaled(c)
        edges.append((a, b, pi_uv, pi_vu))
    return PolymatrixGame.from_edges(inst.n, edges)


@dataclass(frozen=True)
class GameOutcome:
    profile: StrategyProfile
    value: Fraction
    method: SolveMethod
    exact: bool


def _translate(outcome: SolveOutcome) -> GameOutcome:
    return GameOutcome(outcome.partition, outcome.value, outcome.method, outcome.exact)


def maximize_welfare(
    g: PolymatrixGame, policy: Optional[SolvePolicy] = None
) -> GameOutcome:
    """Maximize social welfare via the partition reduction.

    Pure-coordination games always take the min-cut route (their welfare
    matrices satisfy property (a) edge by edge); hard families fall through
    to the exact or hill-climbing solvers per the policy.
    """
    policy = replace(policy or SolvePolicy(), prefer_mincut=True)
    reduced = welfare_mwdp(g)
    return _translate(solve(reduced.instance, policy))


def maximize_potential(
    g: PolymatrixGame, policy: Optional[SolvePolicy] = None
) -> GameOutcome:
    """Maximize the game potential via the partition reduction.

    Requires every edge to admit a pairwise potential.  The returned profile
    is a potential maximizer and hence a pure Nash equilibrium.
    """
    policy = replace(policy or SolvePolicy(), prefer_mincut=True)
    reduced = potential_mwdp(g)
    return _translate(solve(reduced.instance, policy))


def _scaled_payoff_tables(
    g: PolymatrixGame,
) -> tuple[list[list[tuple[int, tuple[int, int, int, int]]]], list[tuple[tuple[int, int], tuple[int, int, int, int]]], int]:
    """Integer payoff tables: per-player incident lists and per-edge welfare."""
    entries = [
        x
        for game in g.games.values()
        for m in (game.pi_uv, game.pi_vu)
        for x in m.entries
    ]
    lcm = math.lcm(1, *(x.denominator for x in entries))

    def table(m: Matrix2) -> tuple[int, int, int, int]:
        return tuple(int(x * lcm) for x in m.entries)  # type: ignore[return-value]

    incident: list[list[tuple[int, tuple[int, int, int, int]]]] = [
        [] for _ in range(g.n)
    ]
    edge_welfare: list[tuple[tuple[int, int], tuple[int, int, int, int]]] = []
    for (u, v), game in g.games.items():
        incident[u].append((v, table(game.pi_uv)))
        incident[v].append((u, table(game.pi_vu)))
        edge_welfare.append(((u, v), table(game.welfare_matrix())))
    return incident, edge_welfare, lcm


def _iter_nash_profiles(g: PolymatrixGame, budget: int):
    if g.n > budget:
        raise BudgetExceeded(g.n, budget)
    incident, edge_welfare, lcm = _scaled_payoff_tables(g)
    n = g.n
    for bits in itertools.product((0, 1), repeat=n):
        nash = True
        for i in range(n):
            bi = bits[i]
            cur = 0
            alt = 0
            for j, tab in incident[i]:
                sj = bits[j]
                cur += tab[(bi << 1) | sj]
                alt += tab[((1 - bi) << 1) | sj]
            if alt > cur:
                nash = False
                break
        if nash:
            welfare = sum(
                tab[(bits[u] << 1) | bits[v]] for (u, v), tab in edge_welfare
            )
            yield bits, Fraction(welfare, lcm)


def enumerate_pure_nash(
    g: PolymatrixGame, budget: int = DEFAULT_NASH_BUDGET
) -> list[StrategyProfile]:
    """All pure Nash equilibria, in lexicographic profile order."""
    return [Partition(bits) for bits, _ in _iter_nash_profiles(g, budget)]


def welfare_optimal_nash_exact(
    g: PolymatrixGame, budget: int = DEFAULT_NASH_BUDGET
) -> tuple[StrategyProfile, Fraction]:
    """Welfare-maximizing pure Nash equilibrium by exhaustive scan.

    Returns the lexicographically smallest profile among welfare ties.
    Raises BudgetExceeded past the budget and ValueError when the game has
    no pure equilibrium at all.
    """
    best: Optional[tuple[tuple[int, ...], Fraction]] = None
    for bits, welfare in _iter_nash_profiles(g, budget):
        if best is None or welfare > best[1]:
            best = (bits, welfare)
    if best is None:
        raise ValueError("game has no pure Nash equilibrium")
    return Partition(best[0]), best[1]
