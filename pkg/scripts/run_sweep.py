#!/usr/bin/env python3
"""
Fattree sweep comparing the modular check with the stable-state baseline.

Features:
- One run per (benchmark, k, mode), benchmarks in parallel
- Per-run JSON dumps
- CSV summary of total, median and p99 node times
"""

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from datetime import datetime
from pathlib import Path

from dotenv import load_dotenv

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cp_verifier.config import RunConfig  # noqa: E402
from cp_verifier.runner import run  # noqa: E402

CSV_FIELDS = ["benchmark", "k", "mode", "exit_status", "overall", "total_wall", "median_node_time", "p99_node_time", "error"]


def run_one(name: str, k: int, mode: str, jobs: int, timeout: float, output_dir: Path) -> dict:
    """
    Run one benchmark configuration and dump its result.

    Args:
        name: Benchmark name
        k: Fattree arity
        mode: modular or monolithic
        jobs: Worker threads for the modular check
        timeout: Seconds per solver query
        output_dir: Directory to save result files

    Returns:
        Dictionary with the CSV fields
    """
    label = f"{name}_k{k}_{mode}"
    print(f"🚀 Processing: {label}")
    start_time = time.time()
    try:
        config = RunConfig(mode=mode, bench={"name": name, "k": k}, jobs=jobs, timeout=timeout)
        result = run(config)
    except Exception as e:
        print(f"❌ Failed: {label} - {e}")
        return {"benchmark": name, "k": k, "mode": mode, "exit_status": 3, "error": str(e)}

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    with open(output_dir / f"sweep_{label}_{timestamp}.json", "w") as f:
        json.dump(result, f, indent=2, default=str)
    report = result.get("report") or {}
    print(f"✅ Completed: {label} ({time.time() - start_time:.2f}s)")
    return {
        "benchmark": name,
        "k": k,
        "mode": mode,
        "exit_status": result["exit_status"],
        "overall": report.get("overall", ""),
        "total_wall": report.get("total_wall", ""),
        "median_node_time": report.get("median_node_time", ""),
        "p99_node_time": report.get("p99_node_time", ""),
        "error": result.get("error") or "",
    }


def main():
    """Main function to run the sweep."""
    parser = argparse.ArgumentParser(description="Sweep fattree sizes in both checking modes")
    parser.add_argument("--benchmarks", nargs="+", default=["reach", "length", "vf", "hijack"])
    parser.add_argument("--ks", nargs="+", type=int, default=[4, 8])
    parser.add_argument("--modes", nargs="+", default=["modular", "monolithic"])
    parser.add_argument("--jobs", type=int, default=4, help="Worker threads per modular check")
    parser.add_argument("--workers", type=int, default=1, help="Benchmarks run at once")
    parser.add_argument("--timeout", type=float, default=600.0, help="Seconds per solver query")
    parser.add_argument("--output-dir", type=Path, default=Path("local_runs"))
    args = parser.parse_args()

    load_dotenv()
    args.output_dir.mkdir(exist_ok=True)
    runs = [(name, k, mode) for name in args.benchmarks for k in args.ks for mode in args.modes]

    print("\n" + "=" * 80)
    print("🚀 FATTREE SWEEP")
    print("=" * 80)
    print(f"📋 Runs: {len(runs)}")
    print(f"👥 Workers: {args.workers} (jobs per check: {args.jobs})")
    print(f"📁 Output: {args.output_dir.absolute()}")
    print("=" * 80 + "\n")

    start_time = time.time()
    rows = []
    with ThreadPoolExecutor(max_workers=args.workers) as executor:
        futures = {
            executor.submit(run_one, name, k, mode, args.jobs, args.timeout, args.output_dir): (name, k, mode)
            for name, k, mode in runs
        }
        for future in as_completed(futures):
            rows.append(future.result())

    rows.sort(key=lambda r: (r["benchmark"], r["k"], r["mode"]))
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    csv_file = args.output_dir / f"sweep_{timestamp}.csv"
    with open(csv_file, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)

    print("\n" + "=" * 80)
    print("📊 SWEEP SUMMARY")
    print("=" * 80)
    print(f"⏱️  Total Time: {time.time() - start_time:.2f}s")
    print(f"✅ Passed: {sum(1 for r in rows if r['exit_status'] == 0)}")
    print(f"❌ Other: {sum(1 for r in rows if r['exit_status'] != 0)}")
    print(f"💾 CSV saved to: {csv_file}")
    print("=" * 80 + "\n")


if __name__ == "__main__":
    main()
