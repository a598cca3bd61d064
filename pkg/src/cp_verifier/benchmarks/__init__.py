"""Built-in benchmark networks with their interfaces and properties."""

from typing import List, Optional

from cp_verifier.benchmarks.datacenter import BUILDERS, build_hijack, build_length, build_reach, build_vf
from cp_verifier.benchmarks.fattree import FattreeLayout, Role, adjacent, bfs_distances, distance, fattree
from cp_verifier.benchmarks.fixtures import FAIL, PASS, BenchmarkFixture, ExpectedFailure, dump_fixture
from cp_verifier.benchmarks.random_networks import has_filters, random_hop_network, reachability_interface
from cp_verifier.benchmarks.running_example import running_example_fixture, running_example_fixtures
from cp_verifier.benchmarks.wan import build_wan_bte

WAN = "wan-bte"
RUNNING_EXAMPLE = "running-example"
BENCHMARK_NAMES = tuple(BUILDERS) + (WAN, RUNNING_EXAMPLE)


def build_fixture(
    name: str,
    k: int = 4,
    all_prefix: bool = False,
    fixture: Optional[str] = None,
    broken: bool = False,
) -> BenchmarkFixture:
    """Build a benchmark by name.

    Args:
        name: One of ``reach``, ``length``, ``vf``, ``hijack``, ``wan-bte``
            or ``running-example``.
        k: Fattree arity for the data center benchmarks.
        all_prefix: Use a symbolic destination instead of the first edge node.
        fixture: Fixture id for the running example (defaults to ``reach``).
        broken: Build the failing variant of the WAN benchmark.

    Returns:
        The fixture.

    Raises:
        KeyError: For an unknown benchmark or fixture name.
    """
    if name in BUILDERS:
        return BUILDERS[name](k, all_prefix=all_prefix)
    if name == WAN:
        return build_wan_bte(broken=broken)
    if name == RUNNING_EXAMPLE:
        return running_example_fixture(fixture or "reach")
    raise KeyError(f"unknown benchmark {name!r}; choose from {list(BENCHMARK_NAMES)}")


def fixture_names(name: str) -> List[str]:
    if name == RUNNING_EXAMPLE:
        return [f.name for f in running_example_fixtures()]
    return [name]


__all__ = [
    "BENCHMARK_NAMES",
    "FAIL",
    "PASS",
    "BenchmarkFixture",
    "ExpectedFailure",
    "FattreeLayout",
    "Role",
    "adjacent",
    "bfs_distances",
    "build_fixture",
    "build_hijack",
    "build_length",
    "build_reach",
    "build_vf",
    "build_wan_bte",
    "distance",
    "dump_fixture",
    "fattree",
    "fixture_names",
    "has_filters",
    "random_hop_network",
    "reachability_interface",
    "running_example_fixture",
    "running_example_fixtures",
]
