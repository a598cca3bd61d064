#!/usr/bin/env python3
"""
Local runner for built-in benchmarks.

Features:
- Runs one benchmark through the verification graph
- Dumps the final run data to local_runs/
- Prints a summary with timing statistics
"""

import argparse
import json
import sys
import time
from datetime import datetime
from pathlib import Path

from dotenv import load_dotenv

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cp_verifier.benchmarks import BENCHMARK_NAMES  # noqa: E402
from cp_verifier.config import RunConfig  # noqa: E402
from cp_verifier.runner import run  # noqa: E402


def save_result(result: dict, name: str, output_dir: Path) -> Path:
    """
    Save the run result to a JSON file.

    Args:
        result: Runner result
        name: Benchmark label used in the file name
        output_dir: Directory to save the file

    Returns:
        Path to the saved file
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    filepath = output_dir / f"run_{name}_{timestamp}.json"
    with open(filepath, "w") as f:
        json.dump(result, f, indent=2, default=str)
    return filepath


def print_summary(result: dict, elapsed_time: float, output_file: Path):
    """Print a clean summary of the run."""
    print(f"\n{'='*80}")
    print("📊 RUN SUMMARY")
    print("=" * 80)
    load = result.get("load") or {}
    report = result.get("report") or {}
    print(f"⏱️  Execution Time: {elapsed_time:.2f}s")
    print(f"🌐 Network: {load.get('network', '?')} ({load.get('nodes', '?')} nodes, {load.get('edges', '?')} edges)")
    if report:
        print(f"📊 Overall: {report['overall']}")
        print(f"⏱️  Total {report['total_wall']:.3f}s, median {report['median_node_time']:.3f}s, p99 {report['p99_node_time']:.3f}s")
        failing = [v["node"] for v in report["per_node"] if any(c["status"] != "valid" for c in v["conditions"])]
        if failing:
            print(f"❌ Failing nodes: {', '.join(failing)}")
    if result.get("error"):
        print(f"❌ Error ({result.get('error_kind')}): {result['error']}")
    for warning in result.get("warnings") or []:
        print(f"⚠️  {warning}")
    print("=" * 80)
    print(f"🎯 Exit status: {result['exit_status']}")
    print(f"💾 Full result saved to: {output_file}")
    print("=" * 80 + "\n")


def main():
    """Main function to run a benchmark locally."""
    parser = argparse.ArgumentParser(
        description="Run a built-in benchmark locally",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Single-destination reachability on a 4-fattree
  python scripts/run_local.py reach

  # All destinations, larger fattree
  python scripts/run_local.py hijack --k 8 --all-prefix

  # Stable-state baseline
  python scripts/run_local.py length --mode monolithic
        """,
    )
    parser.add_argument("name", choices=BENCHMARK_NAMES, help="Benchmark to run")
    parser.add_argument("--k", type=int, default=4, help="Fattree arity [default: 4]")
    parser.add_argument("--all-prefix", action="store_true", help="Symbolic destination")
    parser.add_argument("--fixture", help="Running-example fixture id")
    parser.add_argument("--mode", default="modular", choices=["modular", "monolithic", "strawperson", "simulate"])
    parser.add_argument("--jobs", type=int, default=4, help="Worker threads [default: 4]")
    parser.add_argument("--output-dir", type=Path, default=Path("local_runs"), help="Directory for results")
    args = parser.parse_args()

    load_dotenv()
    args.output_dir.mkdir(exist_ok=True)

    config = RunConfig(
        mode=args.mode,
        bench={"name": args.name, "k": args.k, "all_prefix": args.all_prefix, "fixture": args.fixture},
        jobs=args.jobs,
    )
    print(f"🚀 Running {args.name} (k={args.k}, mode={args.mode})")
    start_time = time.time()
    result = run(config)
    elapsed_time = time.time() - start_time

    print(result["output"])
    output_file = save_result(result, f"{args.name}_k{args.k}", args.output_dir)
    print_summary(result, elapsed_time, output_file)
    sys.exit(result["exit_status"])


if __name__ == "__main__":
    main()
