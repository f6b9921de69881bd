"""Two-way weighted digraph partitioning: model, classifier and solvers.

An instance assigns every arc of an oriented digraph a positive rational
weight c and a 2x2 rational matrix M.  A partition (X1, X2) of the vertices
scores, per arc uv,

    c * m11  if u, v in X1        c * m12  if u in X1, v in X2
    c * m22  if u, v in X2        c * m21  if u in X2, v in X1

and the solver maximizes the total.  Tractability is governed by three
per-matrix properties:

    (a)  m11 + m22 >= m12 + m21
    (b)  m11 is a maximum entry
    (c)  m22 is a maximum entry

If every matrix satisfies (b) (resp. (c)) the all-X1 (resp. all-X2) partition
is optimal.  If every matrix satisfies (a) the problem reduces to a minimum
s-t cut in an auxiliary undirected graph (see :func:`build_cut_network`).
Otherwise the problem is NP-hard and is solved exactly at small scale or by
hill climbing beyond the exhaustive budget.

X1 and X2 are asymmetric (m11 != m22 in general): a partition and its
complement are distinct solutions, and exhaustive scans cover all 2^n side
vectors.  All exact solvers break ties toward the lexicographically smallest
side bit-vector (X1 = 0).
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import BudgetExceeded, NotPropertyA
from .graphs import OrientedDigraph, Partition, UndirectedGraph, undirected_min_st_cut
from .rationals import to_fraction

DEFAULT_EXACT_BUDGET = 24


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 rational matrix of partition payoffs.

    Row index is the arc tail's side, column index the head's side
    (1 = X1, 2 = X2).
    """

    m11: Fraction
    m12: Fraction
    m21: Fraction
    m22: Fraction

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "Matrix2":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected two rows of two entries")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    @classmethod
    def zero(cls) -> "Matrix2":
        return cls(0, 0, 0, 0)

    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.m11, self.m12, self.m21, self.m22)

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def transpose(self) -> "Matrix2":
        return Matrix2(self.m11, self.m21, self.m12, self.m22)

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.m11 + other.m11,
            self.m12 + other.m12,
            self.m21 + other.m21,
            self.m22 + other.m22,
        )

    def scaled(self, factor: object) -> "Matrix2":
        f = to_fraction(factor)
        return Matrix2(self.m11 * f, self.m12 * f, self.m21 * f, self.m22 * f)

    def property_a(self) -> bool:
        return self.m11 + self.m22 >= self.m12 + self.m21

    def property_b(self) -> bool:
        return self.m11 == max(self.entries)

    def property_c(self) -> bool:
        return self.m22 == max(self.entries)


class MwdpInstance:
    """An oriented digraph with a positive weight and a matrix on each arc."""

    __slots__ = ("digraph", "weights", "matrices", "_value_tables")

    def __init__(
        self,
        digraph: OrientedDigraph,
        weights: Iterable[object],
        matrices: Iterable[Matrix2],
    ):
        w = tuple(to_fraction(x) for x in weights)
        m = tuple(matrices)
        if len(w) != len(digraph.arcs) or len(m) != len(digraph.arcs):
            raise ValueError("weights and matrices must match arcs one-to-one")
        for (t, h), c in zip(digraph.arcs, w):
            if c <= 0:
                raise ValueError(f"arc ({t}, {h}) has non-positive weight {c}")
        for x in m:
            if not isinstance(x, Matrix2):
                raise ValueError(f"not a Matrix2: {x!r}")
        object.__setattr__(self, "digraph", digraph)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "matrices", m)
        object.__setattr__(self, "_value_tables", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MwdpInstance is immutable")

    @classmethod
    def from_arcs(
        cls, n: int, arcs: Iterable[tuple[int, int, object, object]]
    ) -> "MwdpInstance":
        """Build from ``(tail, head, weight, matrix)`` tuples; matrices may be
        Matrix2 values or 2x2 row nestings."""
        tails_heads = []
        weights = []
        matrices = []
        for t, h, c, m in arcs:
            tails_heads.append((t, h))
            weights.append(c)
            matrices.append(m if isinstance(m, Matrix2) else Matrix2.from_rows(m))
        return cls(OrientedDigraph(n, tails_heads), weights, matrices)

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self.digraph.arcs

    def value_tables(self) -> tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]:
        """Per-arc payoff table (c*m11, c*m12, c*m21, c*m22), cached."""
        cached = self._value_tables
        if cached is None:
            cached = tuple(
                (c * m.m11, c * m.m12, c * m.m21, c * m.m22)
                for c, m in zip(self.weights, self.matrices)
            )
            object.__setattr__(self, "_value_tables", cached)
        return cached


def partition_value(inst: MwdpInstance, p: Partition) -> Fraction:
    """Total weight of the instance under partition ``p`` (exact)."""
    if p.n != inst.n:
        raise ValueError(f"partition covers {p.n} vertices, instance has {inst.n}")
    bits = p.bits
    total = Fraction(0)
    for (t, h), tab in zip(inst.arcs, inst.value_tables()):
        total += tab[(bits[t] << 1) | bits[h]]
    return total


class FamilyTag(Enum):
    ALL_A = "AllA"
    ALL_B = "AllB"
    ALL_C = "AllC"
    HARD = "Hard"


class MatrixProperties(NamedTuple):
    a: bool
    b: bool
    c: bool


@dataclass(frozen=True)
class FamilyClass:
    """Dichotomy verdict for the matrix family of an instance.

    ``flags`` holds one (a, b, c) triple per arc.  The tag is checked in
    priority order AllB, AllC, AllA; an instance may satisfy several (the
    aggregate booleans expose all of them).
    """

    tag: FamilyTag
    flags: tuple[MatrixProperties, ...]
    all_a: bool
    all_b: bool
    all_c: bool

    @property
    def polynomial(self) -> bool:
        return self.tag is not FamilyTag.HARD


def classify_family(inst: MwdpInstance) -> FamilyClass:
    """Classify the instance's matrix family with exact comparisons."""
    flags = tuple(
        MatrixProperties(m.property_a(), m.property_b(), m.property_c())
        for m in inst.matrices
    )
    all_a = all(f.a for f in flags)
    all_b = all(f.b for f in flags)
    all_c = all(f.c for f in flags)
    if all_b:
        tag = FamilyTag.ALL_B
    elif all_c:
        tag = FamilyTag.ALL_C
    elif all_a:
        tag = FamilyTag.ALL_A
    else:
        tag = FamilyTag.HARD
    return FamilyClass(tag, flags, all_a, all_b, all_c)


class SolveMethod(Enum):
    TRIVIAL_ALL_X1 = "TrivialAllX1"
    TRIVIAL_ALL_X2 = "TrivialAllX2"
    MIN_CUT = "MinCut"
    EXACT = "Exact"
    LOCAL_SEARCH = "LocalSearch"


@dataclass(frozen=True)
class SolveOutcome:
    partition: Partition
    value: Fraction
    method: SolveMethod
    exact: bool


@dataclass(frozen=True)
class SolvePolicy:
    """Solver dispatch knobs.

    ``budget`` caps the exhaustive scan (vertex count), ``restarts``/``seed``
    drive the hill-climbing fallback, ``threads`` bounds worker parallelism
    for exhaustive scans (output is identical for any thread count), and
    ``prefer_mincut`` routes instances whose matrices all satisfy property (a)
    through the cut reduction even when a trivial route also applies.
    """

    budget: int = DEFAULT_EXACT_BUDGET
    restarts: int = 16
    seed: int = 0
    threads: int = 1
    prefer_mincut: bool = False


@dataclass(frozen=True)
class CutNetwork:
    """Auxiliary undirected cut graph for property-(a) instances.

    ``h`` has vertices 0..n-1 plus ``s`` = n and ``t`` = n+1, carries the
    shifted non-negative weights, and satisfies: for every (s,t)-cut, the
    cut weight equals -(instance value of the induced partition) - n*theta.
    ``theta`` is the smallest s/t-incident edge weight before the shift and
    is subtracted from every s/t edge unconditionally.
    """

    h: UndirectedGraph
    s: int
    t: int
    theta: Fraction


def build_cut_network(inst: MwdpInstance) -> CutNetwork:
    """Build the min-cut reduction graph for an all-property-(a) instance.

    Per arc uv with weight c and matrix M:

    - the central edge uv gets weight c*(m11 + m22 - m12 - m21)/2 (this is
      where property (a) is needed: the weight must be non-negative);
    - c*(-m22)/2 is added to both su and sv;
    - c*(m21 - m11 - m12)/2 is added to tu;
    - c*(m12 - m11 - m21)/2 is added to tv.

    Raises NotPropertyA on the first matrix that violates property (a).
    """
    n = inst.n
    s, t = n, n + 1
    s_weight = [Fraction(0)] * n
    t_weight = [Fraction(0)] * n
    central: list[tuple[tuple[int, int], Fraction]] = []
    for (u, v), c, m in zip(inst.arcs, inst.weights, inst.matrices):
        diag = m.m11 + m.m22 - m.m12 - m.m21
        if diag < 0:
            raise NotPropertyA(
                f"matrix on arc ({u}, {v}) violates property (a): "
                f"{m.m11} + {m.m22} < {m.m12} + {m.m21}"
            )
        central.append(((u, v), c * diag / 2))
        half = Fraction(1, 2)
        s_weight[u] += c * (-m.m22) * half
        s_weight[v] += c * (-m.m22) * half
        t_weight[u] += c * (m.m21 - m.m11 - m.m12) * half
        t_weight[v] += c * (m.m12 - m.m11 - m.m21) * half

    theta = min(s_weight + t_weight, default=Fraction(0))
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    for (u, v), w in central:
        edges.append((u, v))
        weights.append(w)
    for u in range(n):
        edges.append((u, s))
        weights.append(s_weight[u] - theta)
    for u in range(n):
        edges.append((u, t))
        weights.append(t_weight[u] - theta)
    h = UndirectedGraph(n + 2, edges, weights)
    return CutNetwork(h, s, t, theta)


def _min_cut_value_with_forcings(
    cn: CutNetwork, big: Fraction, to_x1: set[int], to_x2: set[int]
) -> Fraction:
    """Min s-t cut value after adding ``big`` to edges pinning vertex sides."""
    weights = list(cn.h.weights)
    for idx, (u, v) in enumerate(cn.h.edges):
        if v == cn.s and u in to_x1:
            weights[idx] += big
        elif v == cn.t and u in to_x2:
            weights[idx] += big
    g = UndirectedGraph(cn.h.n, cn.h.edges, weights)
    value, _ = undirected_min_st_cut(g, cn.s, cn.t)
    return value


def solve_mincut(inst: MwdpInstance) -> SolveOutcome:
    """Globally maximize a property-(a) instance through the cut reduction.

    Among all optimal partitions, returns the lexicographically smallest side
    vector; this costs one unconstrained min cut plus one pinned min cut per
    vertex (pinning a vertex adds a dominating weight to its s- or t-edge).
    """
    cn = build_cut_network(inst)
    base, _ = undirected_min_st_cut(cn.h, cn.s, cn.t)
    big = sum(cn.h.weights, Fraction(0)) + 1
    to_x1: set[int] = set()
    to_x2: set[int] = set()
    for v in range(inst.n):
        value = _min_cut_value_with_forcings(cn, big, to_x1 | {v}, to_x2)
        if value == base:
            to_x1.add(v)
        else:
            to_x2.add(v)
    partition = Partition(tuple(1 if v in to_x2 else 0 for v in range(inst.n)))
    return SolveOutcome(partition, partition_value(inst, partition), SolveMethod.MIN_CUT, True)


def solve_trivial(inst: MwdpInstance, which: FamilyTag) -> SolveOutcome:
    """All-X1 (for AllB families) or all-X2 (for AllC) optimum."""
    fam = classify_family(inst)
    if which is FamilyTag.ALL_B:
        if not fam.all_b:
            raise ValueError("classification mismatch: not every matrix satisfies (b)")
        p = Partition.all_x1(inst.n)
        return SolveOutcome(p, partition_value(inst, p), SolveMethod.TRIVIAL_ALL_X1, True)
    if which is FamilyTag.ALL_C:
        if not fam.all_c:
            raise ValueError("classification mismatch: not every matrix satisfies (c)")
        p = Partition.all_x2(inst.n)
        return SolveOutcome(p, partition_value(inst, p), SolveMethod.TRIVIAL_ALL_X2, True)
    raise ValueError(f"solve_trivial expects AllB or AllC, got {which}")


def _scaled_tables(inst: MwdpInstance) -> tuple[list[tuple[int, int, int, int]], int]:
    flat = [x for tab in inst.value_tables() for x in tab]
    lcm = math.lcm(1, *(x.denominator for x in flat))
    tables = [
        (int(t[0] * lcm), int(t[1] * lcm), int(t[2] * lcm), int(t[3] * lcm))
        for t in inst.value_tables()
    ]
    return tables, lcm


def _incidence(
    n: int, arcs: Sequence[tuple[int, int]], tables: Sequence[tuple[int, int, int, int]]
) -> list[list[tuple[tuple[int, int, int, int], int, bool]]]:
    incident: list[list[tuple[tuple[int, int, int, int], int, bool]]] = [[] for _ in range(n)]
    for (t, h), tab in zip(arcs, tables):
        incident[t].append((tab, h, True))
        incident[h].append((tab, t, False))
    return incident


def _evaluate_scaled(
    side: Sequence[int],
    arcs: Sequence[tuple[int, int]],
    tables: Sequence[tuple[int, int, int, int]],
) -> int:
    return sum(tab[(side[t] << 1) | side[h]] for (t, h), tab in zip(arcs, tables))


def _flip_delta(side, incident_v, sv: int) -> int:
    nv = 1 - sv
    delta = 0
    for tab, o, is_tail in incident_v:
        so = side[o]
        if is_tail:
            delta += tab[(nv << 1) | so] - tab[(sv << 1) | so]
        else:
            delta += tab[(so << 1) | nv] - tab[(so << 1) | sv]
    return delta


def _scan_gray_chunk(args) -> tuple[int, int, int]:
    """Scan Gray codes of indices [start, stop); return (value, revkey, mask).

    ``revkey`` places vertex 0 at the most significant bit, so smaller keys
    are lexicographically smaller side vectors; ties prefer smaller keys.
    """
    n, arcs, tables, start, stop = args
    incident = _incidence(n, arcs, tables)
    mask = start ^ (start >> 1)
    side = [(mask >> v) & 1 for v in range(n)]
    rev = 0
    for v in range(n):
        if side[v]:
            rev |= 1 << (n - 1 - v)
    val = _evaluate_scaled(side, arcs, tables)
    best_val, best_rev, best_mask = val, rev, mask
    for i in range(start + 1, stop):
        v = (i & -i).bit_length() - 1
        sv = side[v]
        val += _flip_delta(side, incident[v], sv)
        side[v] = 1 - sv
        mask ^= 1 << v
        rev ^= 1 << (n - 1 - v)
        if val > best_val or (val == best_val and rev < best_rev):
            best_val, best_rev, best_mask = val, rev, mask
    return best_val, best_rev, best_mask


def solve_exact(
    inst: MwdpInstance, budget: int = DEFAULT_EXACT_BUDGET, threads: int = 1
) -> SolveOutcome:
    """Exhaustive optimum over all 2^n partitions.

    X1/X2 are asymmetric, so no side may be fixed: the scan covers every side
    vector (Gray-code order with incremental re-evaluation).  Ties break
    toward the lexicographically smallest side vector.  Raises BudgetExceeded
    when n exceeds ``budget``.
    """
    n = inst.n
    if n > budget:
        raise BudgetExceeded(n, budget)
    if n == 0:
        return SolveOutcome(Partition(()), Fraction(0), SolveMethod.EXACT, True)
    tables, _ = _scaled_tables(inst)
    arcs = inst.arcs
    total = 1 << n
    workers = max(1, min(threads, total))
    if workers > 1 and n >= 16:
        chunk = (total + workers - 1) // workers
        jobs = [
            (n, arcs, tables, lo, min(lo + chunk, total))
            for lo in range(0, total, chunk)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_gray_chunk, jobs))
        best_val, best_rev, best_mask = max(
            results, key=lambda r: (r[0], -r[1])
        )
    else:
        best_val, best_rev, best_mask = _scan_gray_chunk((n, arcs, tables, 0, total))
    partition = Partition(tuple((best_mask >> v) & 1 for v in range(n)))
    return SolveOutcome(partition, partition_value(inst, partition), SolveMethod.EXACT, True)


def solve_local_search(
    inst: MwdpInstance, restarts: int = 16, seed: int = 0
) -> SolveOutcome:
    """1-flip hill climbing from the all-X1 start plus seeded random starts.

    The returned partition is a local optimum: no single-vertex flip improves
    it.  Output is deterministic given (instance, restarts, seed).
    """
    n = inst.n
    if n == 0:
        return SolveOutcome(Partition(()), Fraction(0), SolveMethod.LOCAL_SEARCH, False)
    tables, _ = _scaled_tables(inst)
    arcs = inst.arcs
    incident = _incidence(n, arcs, tables)
    rng = random.Random(seed)
    starts = [[0] * n]
    for _ in range(max(0, restarts)):
        starts.append([rng.randint(0, 1) for _ in range(n)])

    best: Optional[tuple[int, tuple[int, ...]]] = None
    for side in starts:
        val = _evaluate_scaled(side, arcs, tables)
        while True:
            best_delta, best_v = 0, -1
            for v in range(n):
                delta = _flip_delta(side, incident[v], side[v])
                if delta > best_delta:
                    best_delta, best_v = delta, v
            if best_v < 0:
                break
            side[best_v] = 1 - side[best_v]
            val += best_delta
        key = (val, tuple(side))
        if best is None or key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key
    partition = Partition(best[1])
    return SolveOutcome(
        partition, partition_value(inst, partition), SolveMethod.LOCAL_SEARCH, False
    )


def solve(inst: MwdpInstance, policy: Optional[SolvePolicy] = None) -> SolveOutcome:
    """Dispatch on the dichotomy classification.

    AllB/AllC instances use the trivial uniform optimum, remaining all-(a)
    instances use the cut reduction, and hard instances are solved exactly
    within the budget or by hill climbing (flagged non-exact) beyond it.
    """
    policy = policy or SolvePolicy()
    fam = classify_family(inst)
    if policy.prefer_mincut and fam.all_a:
        return solve_mincut(inst)
    if fam.tag is FamilyTag.ALL_B:
        return solve_trivial(inst, FamilyTag.ALL_B)
    if fam.tag is FamilyTag.ALL_C:
        return solve_trivial(inst, FamilyTag.ALL_C)
    if fam.tag is FamilyTag.ALL_A:
        return solve_mincut(inst)
    if inst.n <= policy.budget:
        return solve_exact(inst, budget=policy.budget, threads=policy.threads)
    return solve_local_search(inst, restarts=policy.restarts, seed=policy.seed)
