# Semigame - Command Line Interface
# Solve, query, simulate and analyze semi-restricted digraph games from the terminal

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .algebra import punish_gap, spectral_report
from .config import Config
from .distribution import Distribution
from .exceptions import InputError, InternalConsistencyError
from .graph import (
    Digraph,
    count_eulerian_tournaments,
    cycle3,
    enumerate_eulerian_tournaments,
    enumerate_tournaments,
    parse_graph_spec,
    save_digraph,
)
from .oblivious import ObliviousOnBox, decide_oblivious_on_box, find_certificate, argmax_consistency_check, oblivious_rate
from .play_session import PlaySession, default_rei_strategy
from .restricted import (
    ALICE,
    BOB,
    RestrictionPair,
    check_uniform_optimality,
    parse_game_spec,
    play_restricted,
    restricted_value,
    uniform_rule,
)
from .simulate import (
    ExperimentConfig,
    depletion_stats,
    exact_geometric_tail,
    geometric_tail,
    monte_carlo,
    scaling_fit,
    scaling_table,
    uniform_upper_bound_experiment,
)
from .solver import (
    BACKENDS,
    EXACT,
    FLOAT,
    GREEDY_EXACT,
    RestrictionVector,
    check_switch_lemma,
    greedy_rps_diagonal,
    load_or_solve,
    lower_bound,
    optimal_face,
    state_witness,
)
from .strategies import OPTIMAL_FROM_TABLE, StrategySpec, trimmed_proportional
from .utilities import clear_cache, format_rational, list_cache_files, write_json, write_table

# Set up logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INTERNAL_ERROR = 2

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"


# ------------------------------------------------------------------ parsing


def parse_ns(text: str) -> List[int]:
    """
    Parse "10..100" (step 10 when both ends are multiples of 10, else 1),
    "10..100:5" or "10,20,40"
    """
    try:
        if ".." in text:
            span, _, step_text = text.partition(":")
            low_text, high_text = span.split("..")
            low, high = int(low_text), int(high_text)
            if step_text:
                step = int(step_text)
            else:
                step = 10 if low % 10 == 0 and high % 10 == 0 and low > 0 else 1
            if step < 1 or low > high:
                raise ValueError(f"empty range {text}")
            return list(range(low, high + 1, step))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise InputError(f"Malformed size list '{text}': {e}") from e


def build_rei(name: str, D: Digraph, r0: RestrictionVector, cache_dir: Optional[str], use_cache: bool) -> StrategySpec:
    """greedy | uniform | trimmed | optimal | priority:<v1,v2,..>"""
    kind, _, arg = name.partition(":")
    if kind == "greedy":
        return StrategySpec.greedy()
    if kind == "uniform":
        return StrategySpec.uniform()
    if kind == "trimmed":
        return trimmed_proportional(D, r0)
    if kind == "optimal":
        return StrategySpec.optimal(load_or_solve(D, r0, EXACT, cache_dir, use_cache))
    if kind == "priority":
        try:
            order = [int(v) for v in arg.split(",") if v.strip()]
        except ValueError as e:
            raise InputError(f"Malformed priority order '{arg}'") from e
        return StrategySpec.priority(order)
    raise InputError(f"Unknown Rei strategy '{name}' (greedy, uniform, trimmed, optimal, priority:<order>)")


def build_norman(name: str) -> StrategySpec:
    """best-response | fixed:<v>"""
    kind, _, arg = name.partition(":")
    if kind in ("best-response", "best_response"):
        return StrategySpec.best_response()
    if kind == "fixed":
        try:
            return StrategySpec.fixed_vertex(int(arg))
        except ValueError as e:
            raise InputError(f"Malformed fixed vertex '{arg}'") from e
    raise InputError(f"Unknown Norman strategy '{name}' (best-response, fixed:<v>)")


def _use_cache(args: argparse.Namespace) -> bool:
    return not getattr(args, "no_cache", False)


# ----------------------------------------------------------------- commands


def cmd_graph(args: argparse.Namespace) -> Any:
    if args.enumerate is not None:
        k = args.enumerate
        if args.count:
            if args.eulerian:
                count = count_eulerian_tournaments(k, cap=args.cap, allow_large=args.allow_large)
            else:
                count = sum(1 for _ in enumerate_tournaments(k, cap=args.cap, allow_large=args.allow_large))
            return {"k": k, "eulerian": args.eulerian, "count": count}
        stream = (enumerate_eulerian_tournaments if args.eulerian else enumerate_tournaments)(
            k, cap=args.cap, allow_large=args.allow_large
        )
        return [D.to_dict() for D in stream]

    if not args.graph:
        raise InputError("graph needs --graph or --enumerate")
    D = parse_graph_spec(args.graph)
    if args.save:
        save_digraph(D, args.save)
    return {
        "graph": D.to_dict(),
        "fingerprint": D.fingerprint(),
        "is_tournament": D.is_tournament(),
        "is_eulerian": D.is_eulerian(),
        "out_degrees": [D.out_degree(v) for v in D.vertices],
        "in_degrees": [D.in_degree(v) for v in D.vertices],
    }


def cmd_solve(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    box = RestrictionVector.parse(args.box)
    table = load_or_solve(D, box, args.backend, args.cache_dir, _use_cache(args))
    result = {
        "fingerprint": D.fingerprint(),
        "backend": table.backend,
        "box": list(box.counts),
        "states": len(table),
        "value": _format_value(table.get(box)),
    }
    if args.check_switch:
        result["switch_inequality"] = check_switch_lemma(D, box, table).to_dict()
    return result


def cmd_query(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    state = RestrictionVector.parse(args.state)
    table = load_or_solve(D, state, args.backend, args.cache_dir, _use_cache(args))
    result = {
        "state": list(state.counts),
        "value": _format_value(table.get(state)),
        "lower_bound": lower_bound(D, state),
    }
    if table.backend == EXACT and not state.is_zero():
        result["witness"] = state_witness(D, state, table).to_list()
    return result


def cmd_face(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    state = RestrictionVector.parse(args.state)
    table = load_or_solve(D, state, EXACT, args.cache_dir, _use_cache(args))
    return optimal_face(D, state, table).to_dict()


def cmd_scaling(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    ns = parse_ns(args.ns)
    if not ns or min(ns) < 1:
        raise InputError("scaling needs sizes n >= 1")
    if args.backend == GREEDY_EXACT:
        if D != cycle3():
            raise InputError("greedy-exact scaling needs --graph cycle3")
        values: Dict[int, Any] = greedy_rps_diagonal(ns)
    else:
        top = RestrictionVector.uniform(D.k, max(ns))
        table = load_or_solve(D, top, args.backend, args.cache_dir, _use_cache(args))
        values = {n: table.get(RestrictionVector.uniform(D.k, n)) for n in ns}

    frame = scaling_table(values)
    if args.csv:
        return frame
    result: Dict[str, Any] = {"rows": frame.to_dict(orient="records")}
    if len(ns) >= 3:
        fit = scaling_fit(values.items())
        result["fit"] = fit.to_dict()
        logger.info(f"📊 Scaling slope {fit.slope:.4f}, c_hat {fit.c_hat:.4f}")
    return result


def cmd_simulate(args: argparse.Namespace) -> Any:
    seed = Config.DEFAULT_SEED if args.seed is None else args.seed

    if args.mode == "depletion":
        return depletion_stats(args.k, args.n, args.reps, seed).to_dict()

    if args.mode == "tail":
        estimate = geometric_tail(args.p, args.n, args.reps, seed).to_dict()
        if args.exact:
            estimate["exact"] = format_rational(exact_geometric_tail(args.p, args.n))
        return estimate

    if args.mode == "upper-bound":
        D = parse_graph_spec(args.graph)
        return uniform_upper_bound_experiment(D, parse_ns(args.ns), args.reps, seed)

    if args.experiment:
        experiment = ExperimentConfig.from_dict(_read_json(args.experiment))
        D = experiment.digraph()
        r0 = RestrictionVector(tuple(experiment.r0))
        table = None
        if experiment.rei.get("variant") == OPTIMAL_FROM_TABLE:
            backend = experiment.rei.get("params", {}).get("backend", EXACT)
            table = load_or_solve(D, r0, backend, args.cache_dir, _use_cache(args))
        rei = StrategySpec.from_dict(experiment.rei, table=table)
        norman = StrategySpec.from_dict(experiment.norman)
        reps, seed = experiment.reps, experiment.seed
    else:
        if not args.r0:
            raise InputError("simulate needs --r0 or --experiment")
        D = parse_graph_spec(args.graph)
        r0 = RestrictionVector.parse(args.r0)
        rei = build_rei(args.rei, D, r0, args.cache_dir, _use_cache(args))
        norman = build_norman(args.norman)
        reps = args.reps
    summary = monte_carlo(D, r0, rei, norman, reps, seed, workers=args.workers)
    return {
        "r0": list(r0.counts),
        "rei": rei.to_dict(),
        "norman": norman.to_dict(),
        "seed": seed,
        "summary": summary.to_dict(),
    }


def cmd_spectral(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    report = spectral_report(D)
    result: Dict[str, Any] = report.to_dict()
    if args.punish:
        p = Distribution.from_list([x for x in args.punish.split(",") if x.strip()])
        lhs, rhs = punish_gap(D, p, alpha=report.alpha)
        result["punish_gap"] = {"lhs": format_rational(lhs), "rhs_bound": rhs}
    return result


def cmd_oblivious(args: argparse.Namespace) -> Any:
    seed = Config.DEFAULT_SEED if args.seed is None else args.seed
    if args.rate is not None:
        return {"k": args.rate, "samples": args.samples, "rate": oblivious_rate(args.rate, args.samples, seed)}

    D = parse_graph_spec(args.graph)
    if args.certificate:
        certificate = find_certificate(D, seed=seed)
        return {"certificate": certificate.to_dict() if certificate else None}
    if not args.box:
        raise InputError("oblivious needs --box, --certificate or --rate")
    box = RestrictionVector.parse(args.box)
    table = load_or_solve(D, box, EXACT, args.cache_dir, _use_cache(args))
    verdict = decide_oblivious_on_box(D, box, table)
    result = verdict.to_dict()
    if isinstance(verdict, ObliviousOnBox):
        result["argmax_check"] = argmax_consistency_check(D, box, verdict).to_dict()
    return result


def cmd_restricted(args: argparse.Namespace) -> Any:
    G = parse_game_spec(args.game)
    result: Dict[str, Any] = {"game": G.to_dict()}
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise InputError("restricted needs both --a and --b")
        pair = RestrictionPair.parse(args.a, args.b)
        result["value"] = format_rational(restricted_value(G, pair))
        if args.reps:
            seed = Config.DEFAULT_SEED if args.seed is None else args.seed
            summary = play_restricted(G, pair, uniform_rule(ALICE), uniform_rule(BOB), args.reps, seed)
            result["uniform_play"] = summary.to_dict()
    if args.check is not None:
        result["uniform_optimality"] = check_uniform_optimality(G, args.check).to_dict()
    return result


def cmd_play(args: argparse.Namespace) -> Any:
    D = parse_graph_spec(args.graph)
    r0 = RestrictionVector.parse(args.r0)
    seed = Config.DEFAULT_SEED if args.seed is None else args.seed
    if args.rei:
        rei = build_rei(args.rei, D, r0, args.cache_dir, _use_cache(args))
    else:
        rei = default_rei_strategy(D, r0, args.max_states, args.cache_dir, _use_cache(args))
    lines = None
    if args.script:
        script = Path(args.script)
        if not script.exists():
            raise InputError(f"Move script not found: {script}")
        lines = script.read_text(encoding="utf-8").splitlines()
    transcript = PlaySession(D, r0, rei, seed, input_stream=lines).run()
    return transcript if args.out else None


def cmd_cache(args: argparse.Namespace) -> Any:
    cache_dir = args.cache_dir or Config.CACHE_DIR
    if args.action == "list":
        return list_cache_files(cache_dir)
    success, message = clear_cache(cache_dir, confirm=args.yes)
    if not success:
        raise InputError(message)
    return {"cleared": cache_dir, "message": message}


# ------------------------------------------------------------------ helpers


def _format_value(x: Any) -> Any:
    return x if isinstance(x, float) else format_rational(x)


def _read_json(path: str) -> Dict[str, Any]:
    target = Path(path)
    if not target.exists():
        raise InputError(f"File not found: {target}")
    try:
        return json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed JSON in {target} at line {e.lineno} column {e.colno}: {e.msg}") from e


def _emit(result: Any, out: Optional[str]) -> None:
    if result is None:
        return
    if hasattr(result, "to_csv"):
        write_table(result, out=out)
    else:
        write_json(result, out=out)


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semigame",
        description="Exact solver and experiments for semi-restricted digraph games",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default SEMIGAME_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")
    subparsers.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, default=None, help="Write output to this path instead of stdout")
    common.add_argument("--cache-dir", type=str, default=None, help="Value-table cache directory (default SEMIGAME_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="Neither read nor write the value-table cache")
    common.add_argument("--seed", type=int, default=None, help="Master seed (default SEMIGAME_SEED)")

    graph_parser = subparsers.add_parser("graph", parents=[common], help="Describe, save or enumerate digraphs")
    graph_parser.add_argument("--graph", type=str, help="Graph specifier or JSON file")
    graph_parser.add_argument("--save", type=str, help="Save the digraph as JSON")
    graph_parser.add_argument("--enumerate", type=int, metavar="K", help="Enumerate tournaments on K vertices")
    graph_parser.add_argument("--eulerian", action="store_true", help="Eulerian tournaments only")
    graph_parser.add_argument("--count", action="store_true", help="Only count the enumerated digraphs")
    graph_parser.add_argument("--cap", type=int, default=None, help="Enumeration cap (default SEMIGAME_ENUMERATION_CAP)")
    graph_parser.add_argument("--allow-large", action="store_true", help="Enumerate beyond the cap")
    graph_parser.set_defaults(handler=cmd_graph)

    solve_parser = subparsers.add_parser("solve", parents=[common], help="Solve every state in a box")
    solve_parser.add_argument("--graph", required=True, type=str)
    solve_parser.add_argument("--box", required=True, type=str, help="Largest restriction vector, e.g. 5,5,5")
    solve_parser.add_argument("--backend", choices=BACKENDS, default=EXACT)
    solve_parser.add_argument("--check-switch", action="store_true", help="Also check the switch inequality")
    solve_parser.set_defaults(handler=cmd_solve)

    query_parser = subparsers.add_parser("query", parents=[common], help="Value and optimal mixture at one state")
    query_parser.add_argument("--graph", required=True, type=str)
    query_parser.add_argument("--state", required=True, type=str)
    query_parser.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    query_parser.set_defaults(handler=cmd_query)

    face_parser = subparsers.add_parser("face", parents=[common], help="Range of every optimal mixture coordinate")
    face_parser.add_argument("--graph", required=True, type=str)
    face_parser.add_argument("--state", required=True, type=str)
    face_parser.set_defaults(handler=cmd_face)

    scaling_parser = subparsers.add_parser("scaling", parents=[common], help="S(n*1) against n")
    scaling_parser.add_argument("--graph", default="cycle3", type=str)
    scaling_parser.add_argument("--ns", default="10..100", type=str, help="Sizes: a..b[:step] or a,b,c")
    scaling_parser.add_argument("--backend", choices=BACKENDS, default=GREEDY_EXACT)
    scaling_parser.add_argument("--csv", action="store_true", help="Write the table as CSV without the fit")
    scaling_parser.set_defaults(handler=cmd_scaling)

    simulate_parser = subparsers.add_parser("simulate", parents=[common], help="Monte Carlo experiments")
    simulate_parser.add_argument("--mode", choices=("game", "upper-bound", "depletion", "tail"), default="game")
    simulate_parser.add_argument("--graph", default="cycle3", type=str)
    simulate_parser.add_argument("--r0", type=str, help="Starting restriction vector")
    simulate_parser.add_argument("--rei", default="greedy", type=str)
    simulate_parser.add_argument("--norman", default="best-response", type=str)
    simulate_parser.add_argument("--experiment", type=str, help="Experiment JSON file")
    simulate_parser.add_argument("--reps", type=int, default=1000)
    simulate_parser.add_argument("--workers", type=int, default=1)
    simulate_parser.add_argument("--ns", default="10,20,40,80", type=str, help="Sizes for upper-bound mode")
    simulate_parser.add_argument("--k", type=int, default=3, help="Symbols for depletion mode")
    simulate_parser.add_argument("--n", type=int, default=10, help="n for depletion / N for tail mode")
    simulate_parser.add_argument("--p", type=str, default="1/2", help="Geometric parameter for tail mode")
    simulate_parser.add_argument("--exact", action="store_true", help="Also sum the tail exactly")
    simulate_parser.set_defaults(handler=cmd_simulate)

    spectral_parser = subparsers.add_parser("spectral", parents=[common], help="Skew adjacency spectrum report")
    spectral_parser.add_argument("--graph", required=True, type=str)
    spectral_parser.add_argument("--punish", type=str, help="Mixture p as comma-separated rationals")
    spectral_parser.set_defaults(handler=cmd_spectral)

    oblivious_parser = subparsers.add_parser("oblivious", parents=[common], help="Oblivious strategy analysis")
    oblivious_parser.add_argument("--graph", default="cycle3", type=str)
    oblivious_parser.add_argument("--box", type=str)
    oblivious_parser.add_argument("--certificate", action="store_true", help="Search for a certificate")
    oblivious_parser.add_argument("--rate", type=int, metavar="K", help="Certificate rate over random tournaments")
    oblivious_parser.add_argument("--samples", type=int, default=200)
    oblivious_parser.set_defaults(handler=cmd_oblivious)

    restricted_parser = subparsers.add_parser("restricted", parents=[common], help="Games with both players restricted")
    restricted_parser.add_argument("--game", default="rps", type=str, help="rps, matching or a game JSON file")
    restricted_parser.add_argument("--a", type=str, help="Alice's counts")
    restricted_parser.add_argument("--b", type=str, help="Bob's counts")
    restricted_parser.add_argument("--check", type=int, metavar="N", help="Check uniform optimality up to total N")
    restricted_parser.add_argument("--reps", type=int, default=0, help="Also play uniform against uniform")
    restricted_parser.set_defaults(handler=cmd_restricted)

    play_parser = subparsers.add_parser("play", parents=[common], help="Play Norman against the computer")
    play_parser.add_argument("--graph", default="cycle3", type=str)
    play_parser.add_argument("--r0", default="3,3,3", type=str)
    play_parser.add_argument("--rei", type=str, help="Override the computer's strategy")
    play_parser.add_argument("--script", type=str, help="File of moves, one per line")
    play_parser.add_argument("--max-states", type=int, default=None)
    play_parser.set_defaults(handler=cmd_play)

    cache_parser = subparsers.add_parser("cache", parents=[common], help="List or clear cached value tables")
    cache_parser.add_argument("action", choices=("list", "clear"))
    cache_parser.add_argument("--yes", action="store_true", help="Confirm clearing")
    cache_parser.set_defaults(handler=cmd_cache)

    return parser


def setup_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, dispatch the subcommand and write its output

    Returns:
        int: 0 on success, 1 on input or usage errors, 2 on internal consistency failures
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

    setup_logging(args.log_level)
    if not Config.validate_config():
        return EXIT_INPUT_ERROR
    handler: Callable[[argparse.Namespace], Any] = args.handler
    try:
        _emit(handler(args), args.out)
    except InputError as e:
        logger.error(f"❌ {e}")
        return EXIT_INPUT_ERROR
    except InternalConsistencyError as e:
        logger.error(f"❌ Internal consistency failure: {e}")
        return EXIT_INTERNAL_ERROR
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
