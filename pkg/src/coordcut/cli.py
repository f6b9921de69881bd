"""Command-line front end.

Subcommands: solve, classify, game-welfare, game-potential, threshold-ne,
encode, density, gadget.  Input is JSON in the documented formats; output is
a JSON report (default), a text summary, or an annotated DOT graph.

Exit codes: 0 success, 2 malformed input (the message names the offending
field), 3 solver error (budget, missing potential, ...), 4 I/O error.

All randomness is seeded; the seed, budget and thread bound are echoed in
the report, and repeated runs on the same input are byte-identical.  The
environment variable COORDCUT_BUDGET overrides the default exhaustive
budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import CoordCutError, ParseError
from .games import (
    GameOutcome,
    PolymatrixGame,
    maximize_potential,
    maximize_welfare,
)
from .graphs import Partition
from .jsonio import (
    FORMAT_VERSION,
    dumps_report,
    load_colored_graph,
    load_digraph,
    load_game,
    load_hypergraph,
    load_instance,
    load_threshold,
    load_undirected,
    partition_json,
    profile_json,
)
from .mwdp import (
    DEFAULT_EXACT_BUDGET,
    MwdpInstance,
    SolvePolicy,
    classify_family,
    solve,
)
from .rationals import format_rational, to_fraction
from .encodings import (
    EncodedProblem,
    decode,
    encode_directed_max_cut,
    encode_eulerian_closeness,
    encode_max_avg_degree_decision,
    encode_max_cut,
    encode_min_st_cut,
    encode_two_color_difference,
    encode_two_color_partition,
    max_density_subgraph,
)
from .threshold import (
    TwoTypeThreshold,
    build_hitting_set_gadget,
    extension_welfare_parts,
    g_extension,
    nash_ratio_check,
    threshold_welfare,
    welfare_optimal_nash,
    welfare_optimal_nash_general,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _default_budget() -> int:
    raw = os.environ.get("COORDCUT_BUDGET")
    if raw is None:
        return DEFAULT_EXACT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParseError("COORDCUT_BUDGET", f"not an integer: {raw!r}")
    if value < 1:
        raise ParseError("COORDCUT_BUDGET", "budget must be >= 1")
    return value


def _policy(args) -> SolvePolicy:
    return SolvePolicy(
        budget=args.budget,
        restarts=args.restarts,
        seed=args.seed,
        threads=args.threads,
    )


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("<document>", f"invalid JSON: {exc}") from None


def _echo_policy(args) -> dict:
    return {
        "budget": args.budget,
        "restarts": args.restarts,
        "seed": args.seed,
        "threads": args.threads,
    }


# -- DOT rendering ----------------------------------------------------------


def _dot_colors(bits, v: int) -> str:
    return "lightblue" if bits[v] == 0 else "lightsalmon"


def _dot_digraph(inst: MwdpInstance, p: Partition) -> str:
    lines = ["digraph coordcut {"]
    for v in range(inst.n):
        side = "X1" if p.in_x1(v) else "X2"
        lines.append(
            f'  v{v} [label="{v} ({side})", style=filled, fillcolor={_dot_colors(p.bits, v)}];'
        )
    for (t, h), c in zip(inst.arcs, inst.weights):
        lines.append(f'  v{t} -> v{h} [label="{format_rational(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_graph(n: int, edges, p: Partition, one_label="one", two_label="two") -> str:
    lines = ["graph coordcut {"]
    for v in range(n):
        side = one_label if p.bits[v] == 0 else two_label
        lines.append(
            f'  v{v} [label="{v} ({side})", style=filled, fillcolor={_dot_colors(p.bits, v)}];'
        )
    for u, v in edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- command handlers -------------------------------------------------------


def _cmd_solve(args) -> tuple[dict, Optional[str]]:
    inst = load_instance(_load_json(args.input))
    fam = classify_family(inst)
    outcome = solve(inst, _policy(args))
    report = {
        "command": "solve",
        "method": outcome.method.value,
        "exact": outcome.exact,
        "value": format_rational(outcome.value),
        "partition": partition_json(outcome.partition),
        "classification": {
            "tag": fam.tag.value,
            "all_a": fam.all_a,
            "all_b": fam.all_b,
            "all_c": fam.all_c,
        },
        **_echo_policy(args),
    }
    dot = _dot_digraph(inst, outcome.partition) if args.format == "dot" else None
    return report, dot


def _cmd_classify(args) -> tuple[dict, Optional[str]]:
    inst = load_instance(_load_json(args.input))
    fam = classify_family(inst)
    per_arc = [
        {"tail": t, "head": h, "a": f.a, "b": f.b, "c": f.c}
        for (t, h), f in zip(inst.arcs, fam.flags)
    ]
    report = {
        "command": "classify",
        "tag": fam.tag.value,
        "hard": fam.tag.value == "Hard",
        "all_a": fam.all_a,
        "all_b": fam.all_b,
        "all_c": fam.all_c,
        "per_arc": per_arc,
    }
    return report, None


def _game_report(command: str, g: PolymatrixGame, outcome: GameOutcome, args) -> dict:
    return {
        "command": command,
        "method": outcome.method.value,
        "exact": outcome.exact,
        "value": format_rational(outcome.value),
        "profile": profile_json(outcome.profile),
        **_echo_policy(args),
    }


def _cmd_game_welfare(args) -> tuple[dict, Optional[str]]:
    g = load_game(_load_json(args.input))
    outcome = maximize_welfare(g, _policy(args))
    report = _game_report("game-welfare", g, outcome, args)
    dot = (
        _dot_graph(g.n, g.graph.edges, outcome.profile)
        if args.format == "dot"
        else None
    )
    return report, dot


def _cmd_game_potential(args) -> tuple[dict, Optional[str]]:
    g = load_game(_load_json(args.input))
    outcome = maximize_potential(g, _policy(args))
    report = _game_report("game-potential", g, outcome, args)
    dot = (
        _dot_graph(g.n, g.graph.edges, outcome.profile)
        if args.format == "dot"
        else None
    )
    return report, dot


def _cmd_threshold_ne(args) -> tuple[dict, Optional[str]]:
    tg = load_threshold(_load_json(args.input))
    if isinstance(tg, TwoTypeThreshold):
        outcome = welfare_optimal_nash(tg, args.budget, args.restarts, args.seed)
    else:
        # Collapse to two types when the thresholds allow it.
        distinct = sorted(set(tg.gammas), reverse=True)
        if len(distinct) <= 2:
            ga = distinct[0] if distinct else Fraction(1, 2)
            gb = distinct[-1] if distinct else ga
            types = "".join("A" if g == ga else "B" for g in tg.gammas)
            two = TwoTypeThreshold(tg.graph, types, ga, gb)
            outcome = welfare_optimal_nash(two, args.budget, args.restarts, args.seed)
        else:
            outcome = welfare_optimal_nash_general(
                tg, args.budget, args.restarts, args.seed
            )
    report = {
        "command": "threshold-ne",
        "method": outcome.method.value,
        "exact": outcome.exact,
        "value": format_rational(outcome.welfare),
        "profile": profile_json(outcome.profile),
        **_echo_policy(args),
    }
    if outcome.note:
        report["note"] = outcome.note
    if outcome.audit is not None:
        audit = outcome.audit
        report["audit"] = {
            "identity": "wel = 2|E| - |E(A,B)| - cut",
            "edges": audit.edge_count,
            "cross_edges": audit.cross_edges,
            "cut": format_rational(audit.cut_value),
            "welfare": format_rational(outcome.welfare),
        }
    dot = None
    if args.format == "dot":
        dot = _dot_graph(tg.graph.n, list(tg.graph.iter_edges()), outcome.profile)
    return report, dot


_ENCODE_KINDS = (
    "max-cut",
    "directed-max-cut",
    "eulerian",
    "min-st-cut",
    "two-color-partition",
    "max-avg-degree",
    "two-color-difference",
)


def _encode_problem(args, doc) -> EncodedProblem:
    kind = args.kind
    if kind == "max-cut":
        return encode_max_cut(load_undirected(doc))
    if kind == "directed-max-cut":
        return encode_directed_max_cut(load_digraph(doc))
    if kind == "eulerian":
        return encode_eulerian_closeness(load_digraph(doc))
    if kind == "min-st-cut":
        if args.source is None or args.sink is None:
            raise ParseError("--source/--sink", "min-st-cut needs both terminals")
        g = load_digraph(doc) if "arcs" in doc else load_undirected(doc)
        try:
            return encode_min_st_cut(g, args.source, args.sink)
        except ValueError as exc:
            raise ParseError("--source/--sink", str(exc)) from None
    if kind == "two-color-partition":
        return encode_two_color_partition(load_colored_graph(doc))
    if kind == "two-color-difference":
        return encode_two_color_difference(load_colored_graph(doc))
    if kind == "max-avg-degree":
        if args.k is None:
            raise ParseError("--k", "max-avg-degree needs a degree threshold")
        try:
            k = to_fraction(args.k)
            return encode_max_avg_degree_decision(load_undirected(doc), k)
        except ValueError as exc:
            raise ParseError("--k", str(exc)) from None
    raise ParseError("--kind", f"unknown encoding {kind!r}")


def _decoded_json(result) -> dict:
    out = {}
    for key, value in vars(result).items():
        if isinstance(value, Partition):
            out[key] = partition_json(value)
        elif isinstance(value, frozenset):
            out[key] = sorted(value)
        elif isinstance(value, Fraction):
            out[key] = format_rational(value)
        elif value is None:
            out[key] = None
        else:
            out[key] = value
    return out


def _cmd_encode(args) -> tuple[dict, Optional[str]]:
    doc = _load_json(args.input)
    problem = _encode_problem(args, doc)
    fam = classify_family(problem.instance)
    outcome = solve(problem.instance, _policy(args))
    result = decode(problem, outcome)
    report = {
        "command": "encode",
        "kind": problem.kind.value,
        "classification": fam.tag.value,
        "method": outcome.method.value,
        "exact": outcome.exact,
        "value": format_rational(outcome.value),
        "partition": partition_json(outcome.partition),
        "decoded": _decoded_json(result),
        **_echo_policy(args),
    }
    dot = _dot_digraph(problem.instance, outcome.partition) if args.format == "dot" else None
    return report, dot


def _cmd_density(args) -> tuple[dict, Optional[str]]:
    g = load_undirected(_load_json(args.input))
    witness, density = max_density_subgraph(g, _policy(args))
    report = {
        "command": "density",
        "witness": sorted(witness),
        "density": format_rational(density),
        **_echo_policy(args),
    }
    dot = None
    if args.format == "dot":
        bits = tuple(0 if v in witness else 1 for v in range(g.n))
        dot = _dot_graph(g.n, g.edges, Partition(bits), one_label="in", two_label="out")
    return report, dot


def _cmd_gadget(args) -> tuple[dict, Optional[str]]:
    h = load_hypergraph(_load_json(args.input))
    try:
        ga = to_fraction(args.gamma_a)
        gb = to_fraction(args.gamma_b)
    except ValueError as exc:
        raise ParseError("--gamma-a/--gamma-b", str(exc)) from None
    try:
        gadget = build_hitting_set_gadget(h, ga, gb)
    except ValueError as exc:
        raise ParseError("--gamma-a/--gamma-b", str(exc)) from None
    gc = gadget.constants
    report = {
        "command": "gadget",
        "constants": {
            "theta": gc.theta,
            "x_B": gc.x_B,
            "x_A": gc.x_A,
            "c_A": gc.c_A,
            "c_B": gc.c_B,
            "z": gc.z,
        },
        "sizes": {
            "vertices": gadget.game.graph.n,
            "edges": gadget.game.graph.edge_count,
            "clique_a": len(gadget.clique_a),
            "clique_b": len(gadget.clique_b),
            "connectors": len(gadget.connector),
            "selectors": len(gadget.selector),
            "pendants": sum(len(r) for r in gadget.pendant),
        },
        "base_welfare": format_rational(gadget.base_welfare),
    }
    if args.traversal is not None:
        try:
            vertices = [int(x) for x in args.traversal.split(",") if x.strip() != ""]
        except ValueError:
            raise ParseError("--traversal", "expected comma-separated integers")
        profile = g_extension(gadget, vertices)
        parts = extension_welfare_parts(gadget, vertices)
        welfare = threshold_welfare(gadget.game, profile)
        report["traversal"] = {
            "vertices": sorted(set(vertices)),
            "is_nash": nash_ratio_check(gadget.game, profile),
            "welfare": format_rational(welfare),
            "formula_welfare": format_rational(parts.total),
            "epsilon": format_rational(parts.epsilon),
        }
    return report, None


# -- rendering --------------------------------------------------------------


def _render_text(report: dict) -> str:
    def text_value(v) -> str:
        if isinstance(v, list):
            return "[" + ", ".join(text_value(x) for x in v) + "]"
        if isinstance(v, dict):
            return "{" + ", ".join(f"{k}: {text_value(v[k])}" for k in sorted(v)) + "}"
        return str(v)

    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            for sub in sorted(value):
                lines.append(f"{key}.{sub} = {text_value(value[sub])}")
        else:
            lines.append(f"{key} = {text_value(value)}")
    return "\n".join(lines) + "\n"


def _write_output(args, report: dict, dot: Optional[str]) -> None:
    if args.format == "json":
        text = dumps_report(report)
    elif args.format == "text":
        text = _render_text(report)
    else:
        if dot is None:
            raise ParseError("--format", f"dot output is not defined for {report['command']}")
        text = dot
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_HANDLERS = {
    "solve": _cmd_solve,
    "classify": _cmd_classify,
    "game-welfare": _cmd_game_welfare,
    "game-potential": _cmd_game_potential,
    "threshold-ne": _cmd_threshold_ne,
    "encode": _cmd_encode,
    "density": _cmd_density,
    "gadget": _cmd_gadget,
}


def build_parser(default_budget: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coordcut",
        description="Exact partition, welfare and equilibrium solvers on graphs.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"coordcut {__version__} (format {FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="path to the JSON input file")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        p.add_argument(
            "--format", choices=("json", "text", "dot"), default="json"
        )
        p.add_argument("--budget", type=int, default=default_budget)
        p.add_argument("--restarts", type=int, default=16)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)

    common(sub.add_parser("solve", help="solve a partition instance"))
    common(sub.add_parser("classify", help="dichotomy verdict for an instance"))
    common(sub.add_parser("game-welfare", help="maximize social welfare"))
    common(sub.add_parser("game-potential", help="maximize the game potential"))
    common(sub.add_parser("threshold-ne", help="welfare-optimal Nash equilibrium"))

    p = sub.add_parser("encode", help="encode, solve and decode a classic problem")
    common(p)
    p.add_argument("--kind", choices=_ENCODE_KINDS, required=True)
    p.add_argument("--source", type=int, default=None)
    p.add_argument("--sink", type=int, default=None)
    p.add_argument("--k", default=None, help="degree threshold for max-avg-degree")

    common(sub.add_parser("density", help="densest subgraph"))

    p = sub.add_parser("gadget", help="build the hitting-set gadget")
    common(p)
    p.add_argument("--gamma-a", required=True)
    p.add_argument("--gamma-b", required=True)
    p.add_argument(
        "--traversal",
        default=None,
        help="comma-separated hypergraph vertices; evaluates the induced equilibrium",
    )

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        parser = build_parser(_default_budget())
        args = parser.parse_args(argv)
        if args.budget < 1:
            raise ParseError("--budget", "budget must be >= 1")
        report, dot = _HANDLERS[args.command](args)
        _write_output(args, report, dot)
        return EXIT_OK
    except ParseError as exc:
        print(f"coordcut: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CoordCutError as exc:
        print(f"coordcut: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"coordcut: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
