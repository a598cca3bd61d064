"""Command-line front end.

Examples:
  cp-verify check net.json --interfaces a.json --properties p.json --jobs 8
  cp-verify check net.json --mode monolithic --properties p.json
  cp-verify strawperson net.json --interfaces a.json
  cp-verify simulate net.json --delay 1 --seed 7
  cp-verify validate net.json --interfaces a.json --merge-samples 500
  cp-verify bench --name reach --k 4 --all-prefix
  cp-verify bench --name running-example --fixture temporal-bad --report json
"""

import argparse
import logging
import shlex
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from cp_verifier import settings
from cp_verifier.benchmarks import BENCHMARK_NAMES
from cp_verifier.config import RunConfig
from cp_verifier.nodes.report.schemas import ExitStatus
from cp_verifier.runner import run


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", help="Solver command or path [default: $CPV_SOLVER or z3]")
    p.add_argument("--solver-args", help="Solver arguments as one shell-quoted string [default: $CPV_SOLVER_ARGS]")
    p.add_argument("--timeout", type=float, help="Seconds per solver query [default: $CPV_TIMEOUT or 30]")
    p.add_argument("--jobs", type=int, help="Worker threads [default: $CPV_JOBS or the number of cores]")
    p.add_argument("--dump-smt", help="Write every solver script to this directory")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--report", choices=["text", "json"], default="text", help="Output format [default: text]")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for solver traffic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cp-verify",
        description="Modular control-plane verification with temporal interfaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n\n", 1)[1] if __doc__ else None,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    check = verbs.add_parser("check", help="Check interfaces and properties")
    check.add_argument("network", help="Network JSON file")
    check.add_argument("--interfaces", help="Interface annotation file")
    check.add_argument("--properties", help="Property annotation file")
    check.add_argument("--mode", choices=["modular", "monolithic"], default="modular")
    check.add_argument("--delay", type=int, default=0, help="Message delay bound [default: 0]")
    _add_solver_flags(check)
    _add_common(check)

    straw = verbs.add_parser("strawperson", help="Time-free check (unsound, for comparison)")
    straw.add_argument("network", help="Network JSON file")
    straw.add_argument("--interfaces", required=True, help="Interface annotation file (Globally only)")
    _add_solver_flags(straw)
    _add_common(straw)

    sim = verbs.add_parser("simulate", help="Simulate a closed network")
    sim.add_argument("network", help="Network JSON file")
    sim.add_argument("--max-steps", type=int, help="Step bound [default: $CPV_MAX_STEPS or 2|V|(delay+1)]")
    sim.add_argument("--delay", type=int, default=0)
    sim.add_argument("--seed", type=int, default=0, help="Schedule seed for delayed runs")
    _add_common(sim)

    val = verbs.add_parser("validate", help="Check well-formedness only")
    val.add_argument("network", help="Network JSON file")
    val.add_argument("--interfaces")
    val.add_argument("--properties")
    val.add_argument("--merge-samples", type=int, default=0, help="Sample the merge laws this many times")
    val.add_argument("--seed", type=int, default=0)
    _add_common(val)

    bench = verbs.add_parser("bench", help="Run a built-in benchmark")
    bench.add_argument("--name", required=True, choices=BENCHMARK_NAMES)
    bench.add_argument("--k", type=int, default=4, help="Fattree arity [default: 4]")
    bench.add_argument("--all-prefix", action="store_true", help="Symbolic destination")
    bench.add_argument("--fixture", help="Running-example fixture id")
    bench.add_argument("--broken", action="store_true", help="Failing WAN variant")
    bench.add_argument(
        "--mode", choices=["modular", "monolithic", "strawperson", "simulate"], default="modular"
    )
    bench.add_argument("--delay", type=int, help="Override the fixture's delay")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--max-steps", type=int)
    bench.add_argument("--dump", help="Write the fixture's input files to this directory")
    _add_solver_flags(bench)
    _add_common(bench)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Turn parsed arguments into a validated run configuration.

    Raises:
        ValidationError: If the combination of flags is invalid
    """

    def get(name: str, default: Any = None) -> Any:
        return getattr(args, name, default)

    values: Dict[str, Any] = {
        "report_format": args.report,
        "seed": get("seed", 0),
        "max_steps": get("max_steps"),
        "merge_samples": get("merge_samples", 0),
        "solver": get("solver"),
        "timeout": get("timeout"),
        "dump_smt": get("dump_smt"),
        "jobs": get("jobs") or settings.default_jobs(),
    }
    if get("solver_args") is not None:
        values["solver_args"] = shlex.split(args.solver_args)
    if args.verb == "bench":
        values["bench"] = {
            "name": args.name, "k": args.k, "all_prefix": args.all_prefix,
            "fixture": args.fixture, "broken": args.broken,
        }
        values["mode"] = args.mode
        values["dump_fixture"] = args.dump
        values["delay"] = args.delay
    else:
        values["network"] = args.network
        values["interfaces"] = get("interfaces")
        values["properties"] = get("properties")
        values["delay"] = get("delay", 0)
        values["mode"] = {"check": get("mode"), "strawperson": "strawperson"}.get(args.verb, args.verb)
    return RunConfig.model_validate(values)


def configure_logging(verbose: int) -> None:
    level = {0: settings.log_level(), 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except (ValidationError, ValueError, KeyError) as e:
        print(f"❌ invalid arguments: {e}", file=sys.stderr)
        return int(ExitStatus.INPUT_ERROR)
    result = run(config)
    if result["output"]:
        print(result["output"])
    return int(result["exit_status"])


if __name__ == "__main__":
    sys.exit(main())
