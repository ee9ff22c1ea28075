"""
Command-line entry point:  spt-teleport  /  python -m spt_teleport

Usage:
    spt-teleport teleport --graph diamond --path p1 --path p2 --error zz:3,5,0.3 \\
                          --input polar:1.2,0.4 --shots 10000 --seed 42 --out results.csv
    spt-teleport spectrum --graph diamond --cut 4,5,6
    spt-teleport sop --hamiltonian hy --alpha-sweep 0:1.5:0.05 --L 6,10,14 --out sop.csv
    spt-teleport gslab --family hz_lower --n 2,4 --alpha 0:1.5:0.1 --inputs 25 --shots 100 --seed 7
    spt-teleport calibrate --graph hourglass:n=2 --error x1q:4,X,0.6 --seed 3
    spt-teleport graph --graph hourglass:n=2 --format latex
    spt-teleport run fig3_diamond --out results/
    spt-teleport list [--show NAME]

Sweep commands write CSV to --out, or to stdout when it is omitted; logs
go to stderr (-v for progress, -vv for debug).  Exit status is 2 for
config errors and refused sizes, 1 for other failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .calibration import DEFAULT_SHOTS as CALIBRATION_SHOTS
from .calibration import calibrate_path, majority_vote_teleport
from .config import (
    DEFAULT_SHOTS,
    ExperimentResult,
    load_config,
    parse_input,
    parse_int_list,
    parse_range,
    run_experiment,
    write_csv,
)
from .errors import ConfigError, SizeLimitError, SptError
from .format import FORMATS
from .graphs import GraphSpec, compile_preparation, parse_graph
from .noise import parse_error
from .printer import print_calibration, print_graph, print_majority, print_spectrum, print_table
from .registry import EXPERIMENTS, builtin_config, print_registry, show_config
from .settings import Settings
from .sim import prepare, set_debug
from .spt import entanglement_spectrum

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════
# Helpers
# ═══════════════════════════════════════════════════════════════════

def _emit(result: ExperimentResult, out: str | None) -> None:
    if out is None:
        write_csv(sys.stdout, result.columns, result.rows)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        write_csv(f, result.columns, result.rows)
    logger.info("wrote %d rows to %s", len(result.rows), path)


def _shots(text: str) -> int | None:
    if text == "exact":
        return None
    try:
        shots = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shots must be a positive integer or 'exact', got {text!r}") from None
    if shots < 1:
        raise argparse.ArgumentTypeError(f"shots must be ≥ 1, got {shots}")
    return shots


def _graph_and_errors(args: argparse.Namespace) -> tuple[GraphSpec, list]:
    return parse_graph(args.graph), [parse_error(e) for e in args.error]


def _input_block(args: argparse.Namespace) -> dict[str, Any]:
    if args.inputs is not None:
        return {"inputs": {"count": args.inputs, "distribution": args.distribution}}
    return {"input": args.input}


# ═══════════════════════════════════════════════════════════════════
# Commands
# ═══════════════════════════════════════════════════════════════════

def cmd_teleport(args: argparse.Namespace) -> int:
    g = parse_graph(args.graph)
    doc = {
        "name": "teleport",
        "protocol": "teleport_exact" if args.shots is None else "teleport",
        "graph": args.graph,
        "paths": args.path or sorted(g.paths),
        "errors": args.error,
        "seed": args.seed,
        **_input_block(args),
    }
    if args.shots is not None:
        doc["shots"] = args.shots
    _emit(run_experiment(doc, settings=args.settings), args.out)
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    g, errors = _graph_and_errors(args)
    state = prepare(compile_preparation(g, errors))
    cut = [g.vid(v) for v in args.cut.split(",") if v.strip()]
    print_spectrum(g, entanglement_spectrum(state, cut, args.tol))
    return 0


def cmd_sop(args: argparse.Namespace) -> int:
    doc = {
        "name": "sop",
        "protocol": "sop",
        "family": args.hamiltonian,
        "L": parse_int_list(args.L),
        "alpha": parse_range(args.alpha_sweep),
        "path": args.path,
    }
    _emit(run_experiment(doc, settings=args.settings), args.out)
    return 0


def cmd_gslab(args: argparse.Namespace) -> int:
    doc = {
        "name": "gslab",
        "protocol": "gslab",
        "family": args.family,
        "n": parse_int_list(args.n),
        "alpha": parse_range(args.alpha),
        "paths": args.path or ["upper", "lower"],
        "inputs": {"count": args.inputs, "distribution": args.distribution},
        "shots": args.shots,
        "seed": args.seed,
    }
    _emit(run_experiment(doc, settings=args.settings), args.out)
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    g, errors = _graph_and_errors(args)
    if args.majority:
        vote = majority_vote_teleport(g, errors, parse_input(args.input), args.seed)
        print_majority(vote)
        return 0
    result = calibrate_path(g, errors, shots=args.shots, seed=args.seed, paths=args.path or None)
    print_calibration(g, result)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    print_graph(parse_graph(args.graph), FORMATS[args.format])
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    target = args.target
    doc = builtin_config(target) if target in EXPERIMENTS else load_config(target)
    result = run_experiment(doc, out_dir=args.out, settings=args.settings)
    print(f"{result.name}: {len(result.rows)} rows in {result.wall_time:.2f}s")
    print(f"  csv      : {result.csv_path}")
    print(f"  manifest : {result.manifest_path}")
    if args.table:
        print()
        print_table(result.rows, result.columns)
    return 0


def cmd_list(args: argparse.Namespace) -> int:
    if args.show:
        show_config(args.show)
    else:
        print_registry()
    return 0


# ═══════════════════════════════════════════════════════════════════
# Parser
# ═══════════════════════════════════════════════════════════════════

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spt-teleport",
                                description="String-symmetry protected teleportation on graph states.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v progress, -vv debug")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--graph", required=True,
                        help="chain:N, diamond, hourglass:n=2,rows=2 or a JSON graph file")
        sp.add_argument("--error", action="append", default=[], metavar="SPEC",
                        help="zz:a,b,eps | x1q:v,AXIS,theta | depol2q:p (repeatable)")

    sp = sub.add_parser("teleport", help="teleport along one or more paths")
    graph_args(sp)
    sp.add_argument("--path", action="append", default=[], help="path id (repeatable; default all named)")
    sp.add_argument("--input", default="plus", help="zero|one|plus|minus|polar:θ,φ|azimuth:φ")
    sp.add_argument("--inputs", type=int, default=None, metavar="N", help="N random inputs instead of --input")
    sp.add_argument("--distribution", choices=["bloch", "xy"], default="bloch")
    sp.add_argument("--shots", type=_shots, default=DEFAULT_SHOTS, help="shots per input, or 'exact'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, help="CSV file (default stdout)")
    sp.set_defaults(func=cmd_teleport)

    sp = sub.add_parser("spectrum", help="entanglement spectrum of the resource state")
    graph_args(sp)
    sp.add_argument("--cut", required=True, help="region A as vertex ids or labels, e.g. 4,5,6")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("sop", help="ground-state string order parameter sweep")
    sp.add_argument("--hamiltonian", default="hy", help="hy | hz | hz_lower")
    sp.add_argument("--alpha-sweep", required=True, help="start:stop:step or a comma list")
    sp.add_argument("--L", required=True, help="system sizes, e.g. 6,10,14")
    sp.add_argument("--path", default="upper")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sop)

    sp = sub.add_parser("gslab", help="teleportation through perturbed ground states")
    sp.add_argument("--family", default="hy", help="hy | hz | hz_lower")
    sp.add_argument("--n", required=True, help="hourglass lengths, e.g. 2,4")
    sp.add_argument("--alpha", required=True, help="start:stop:step or a comma list")
    sp.add_argument("--path", action="append", default=[])
    sp.add_argument("--inputs", type=int, default=25)
    sp.add_argument("--distribution", choices=["bloch", "xy"], default="xy")
    sp.add_argument("--shots", type=_shots, default=100, help="shots per input, or 'exact'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gslab)

    sp = sub.add_parser("calibrate", help="find the uncorrupted path")
    graph_args(sp)
    sp.add_argument("--path", action="append", default=[])
    sp.add_argument("--shots", type=_shots, default=CALIBRATION_SHOTS, help="shots per state, or 'exact'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--majority", action="store_true", help="single-shot vote on a rows=3 hourglass")
    sp.add_argument("--input", default="zero", help="input for --majority")
    sp.set_defaults(func=cmd_calibrate)

    sp = sub.add_parser("graph", help="print a graph, its path strings and byproducts")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--format", choices=sorted(FORMATS), default="text")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("run", help="run a built-in experiment or a config file")
    sp.add_argument("target", help="built-in name (see `list`) or path to a JSON config")
    sp.add_argument("--out", default="results", help="output directory")
    sp.add_argument("--table", action="store_true", help="also print the rows as an aligned table")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("list", help="list built-in experiments")
    sp.add_argument("--show", metavar="NAME", default=None, help="print one config as JSON")
    sp.set_defaults(func=cmd_list)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    args.settings = Settings.from_env()
    set_debug(args.settings.debug)
    try:
        return args.func(args)
    except SizeLimitError as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SptError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
