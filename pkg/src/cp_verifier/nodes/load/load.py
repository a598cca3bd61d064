"""
Load node: builds the network and annotations from files or a benchmark.
"""

import logging
from typing import Any, Dict

from cp_verifier.benchmarks import build_fixture, dump_fixture
from cp_verifier.config import RunConfig
from cp_verifier.model.errors import VerifierError
from cp_verifier.model.serialization import load_network
from cp_verifier.temporal.serialization import load_annotation

from .schemas import LoadData

logger = logging.getLogger(__name__)


def load_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Load the inputs named by the run configuration.

    Args:
        state: Current state containing the run configuration

    Returns:
        Updated state with network, interfaces, properties and load data
    """
    config = RunConfig.model_validate(state["config"])
    try:
        if config.bench is not None:
            spec = config.bench
            logger.info("🔍 Building benchmark %s (k=%d)", spec.name, spec.k)
            fixture = build_fixture(spec.name, spec.k, spec.all_prefix, spec.fixture, spec.broken)
            network, interfaces, properties = fixture.network, fixture.interfaces, fixture.properties
            delay = fixture.delay if config.delay is None else config.delay
            dumped = dump_fixture(fixture, config.dump_fixture) if config.dump_fixture else {}
            data = LoadData(
                source="bench",
                network=network.name,
                nodes=len(network.nodes),
                edges=len(network.topology.edges),
                symbolics=[sym.name for sym in network.symbolics],
                closed=network.is_closed(),
                fixture=fixture.name,
                expected=fixture.expected,
                dumped=dumped,
            )
        else:
            assert config.network is not None
            logger.info("🔍 Loading network from %s", config.network)
            network = load_network(config.network)
            interfaces = load_annotation(config.interfaces) if config.interfaces else None
            properties = load_annotation(config.properties) if config.properties else None
            delay = config.delay or 0
            data = LoadData(
                source="files",
                network=network.name,
                nodes=len(network.nodes),
                edges=len(network.topology.edges),
                symbolics=[sym.name for sym in network.symbolics],
                closed=network.is_closed(),
            )
    except (VerifierError, KeyError, ValueError, OSError) as e:
        logger.error("❌ Failed to load inputs: %s", e)
        state["error"] = f"{type(e).__name__}: {e}"
        state["error_kind"] = "input"
        return state

    state["network"] = network
    state["interfaces"] = interfaces
    state["properties"] = properties
    state["expected"] = data.expected
    state["delay"] = delay
    state["load"] = data.model_dump()
    logger.info("✅ Loaded %s: %d nodes, %d edges", data.network, data.nodes, data.edges)
    return state
