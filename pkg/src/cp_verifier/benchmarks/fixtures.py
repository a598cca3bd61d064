"""Benchmark fixtures and their file export."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from cp_verifier.model.serialization import dump_json, network_to_json
from cp_verifier.model.network import NetworkInstance
from cp_verifier.temporal.ops import Annotation
from cp_verifier.temporal.serialization import annotation_to_json

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class ExpectedFailure:
    """A condition a fixture is built to fail, with its minimal time if timed."""

    node: str
    condition: str
    time: Optional[int] = None


@dataclass(frozen=True)
class BenchmarkFixture:
    """A network with interfaces, properties and the outcome it is built for."""

    name: str
    network: NetworkInstance
    interfaces: Annotation
    properties: Annotation
    expected: str = PASS
    delay: int = 0
    expected_failures: Tuple[ExpectedFailure, ...] = ()
    expected_strawperson: Optional[str] = None
    notes: str = ""


def dump_fixture(fixture: BenchmarkFixture, directory: Union[str, Path]) -> Dict[str, str]:
    """Write ``network.json``, ``interfaces.json`` and ``properties.json``."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    paths = {
        "network": target / "network.json",
        "interfaces": target / "interfaces.json",
        "properties": target / "properties.json",
    }
    dump_json(network_to_json(fixture.network), paths["network"])
    dump_json(annotation_to_json(fixture.interfaces), paths["interfaces"])
    dump_json(annotation_to_json(fixture.properties), paths["properties"])
    logger.info("📝 fixture %s written to %s", fixture.name, target)
    return {k: str(p) for k, p in paths.items()}
