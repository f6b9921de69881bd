"""coordcut: exact two-way digraph partitioning and coordination-game solvers.

The library revolves around one optimization problem: partition the vertices
of an oriented digraph into (X1, X2) to maximize a sum of per-arc payoffs
drawn from 2x2 rational matrices.  A three-property test on the matrices
decides between trivial optima, an exact min-cut reduction, and NP-hard
territory handled by budgeted exhaustive search or hill climbing.  On top of
that sit polymatrix-game welfare/potential maximization, welfare-optimal
Nash equilibria of threshold games, the hitting-set gadget generator, and
encoders for eight classic graph problems.

All arithmetic is exact (``fractions.Fraction``); every solver is
deterministic given its inputs and seed.
"""

from .errors import (
    BudgetExceeded,
    CoordCutError,
    NoFiniteCut,
    NotATraversal,
    NotPotential,
    NotPropertyA,
    NoValidXA,
    ParseError,
)
from .graphs import (
    INFINITE,
    FlowNetwork,
    OrientedDigraph,
    Partition,
    UndirectedGraph,
    connected_components,
    max_flow_min_cut,
    undirected_min_st_cut,
)
from .mwdp import (
    CutNetwork,
    FamilyClass,
    FamilyTag,
    Matrix2,
    MatrixProperties,
    MwdpInstance,
    SolveMethod,
    SolveOutcome,
    SolvePolicy,
    build_cut_network,
    classify_family,
    partition_value,
    solve,
    solve_exact,
    solve_local_search,
    solve_mincut,
    solve_trivial,
)
from .games import (
    EdgeGame,
    GameClass,
    GameOutcome,
    GameTag,
    PolymatrixGame,
    PotentialMatrix,
    StrategyProfile,
    classify_game,
    derive_pairwise_potential,
    enumerate_pure_nash,
    game_from_mwdp_potential,
    game_from_mwdp_welfare,
    is_pure_nash,
    maximize_potential,
    maximize_welfare,
    player_payoff,
    potential_mwdp,
    social_welfare,
    total_potential,
    welfare_mwdp,
    welfare_optimal_nash_exact,
)
from .threshold import (
    GadgetConstants,
    HittingSetGadget,
    Hypergraph3,
    ThresholdGame,
    ThresholdOutcome,
    TwoTypeThreshold,
    build_hitting_set_gadget,
    extension_welfare_parts,
    g_extension,
    gadget_constants,
    nash_ratio_check,
    solve_case3,
    threshold_welfare,
    to_polymatrix,
    traversal_from_welfare,
    welfare_optimal_nash,
    welfare_optimal_nash_general,
)
from .encodings import (
    EncodedProblem,
    EncodingKind,
    TwoColoredGraph,
    decode,
    encode_directed_max_cut,
    encode_eulerian_closeness,
    encode_max_avg_degree_decision,
    encode_max_cut,
    encode_min_st_cut,
    encode_two_color_difference,
    encode_two_color_partition,
    max_density_subgraph,
    solve_encoded,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CoordCutError",
    "CutNetwork",
    "EdgeGame",
    "EncodedProblem",
    "EncodingKind",
    "FamilyClass",
    "FamilyTag",
    "FlowNetwork",
    "GadgetConstants",
    "GameClass",
    "GameOutcome",
    "GameTag",
    "HittingSetGadget",
    "Hypergraph3",
    "INFINITE",
    "Matrix2",
    "MatrixProperties",
    "MwdpInstance",
    "NoFiniteCut",
    "NoValidXA",
    "NotATraversal",
    "NotPotential",
    "NotPropertyA",
    "OrientedDigraph",
    "ParseError",
    "Partition",
    "PolymatrixGame",
    "PotentialMatrix",
    "SolveMethod",
    "SolveOutcome",
    "SolvePolicy",
    "StrategyProfile",
    "ThresholdGame",
    "ThresholdOutcome",
    "TwoColoredGraph",
    "TwoTypeThreshold",
    "UndirectedGraph",
    "build_cut_network",
    "build_hitting_set_gadget",
    "classify_family",
    "classify_game",
    "connected_components",
    "decode",
    "derive_pairwise_potential",
    "encode_directed_max_cut",
    "encode_eulerian_closeness",
    "encode_max_avg_degree_decision",
    "encode_max_cut",
    "encode_min_st_cut",
    "encode_two_color_difference",
    "encode_two_color_partition",
    "enumerate_pure_nash",
    "extension_welfare_parts",
    "g_extension",
    "gadget_constants",
    "game_from_mwdp_potential",
    "game_from_mwdp_welfare",
    "is_pure_nash",
    "max_density_subgraph",
    "max_flow_min_cut",
    "maximize_potential",
    "maximize_welfare",
    "nash_ratio_check",
    "partition_value",
    "player_payoff",
    "potential_mwdp",
    "social_welfare",
    "solve",
    "solve_case3",
    "solve_encoded",
    "solve_exact",
    "solve_local_search",
    "solve_mincut",
    "solve_trivial",
    "threshold_welfare",
    "to_polymatrix",
    "total_potential",
    "traversal_from_welfare",
    "undirected_min_st_cut",
    "welfare_mwdp",
    "welfare_optimal_nash",
    "welfare_optimal_nash_exact",
    "welfare_optimal_nash_general",
]
