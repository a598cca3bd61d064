import os
import shutil

import pytest

from cp_verifier.smt.factory import create_solver_client


def _solver_available() -> bool:
    return shutil.which(os.getenv("CPV_SOLVER", "z3")) is not None


def pytest_collection_modifyitems(config, items):
    skip_solver = pytest.mark.skip(reason="no SMT solver on PATH (set CPV_SOLVER)")
    skip_slow = pytest.mark.skip(reason="set CPV_RUN_SLOW=1 to run")
    have_solver = _solver_available()
    run_slow = os.getenv("CPV_RUN_SLOW") == "1"
    for item in items:
        if "solver" in item.keywords and not have_solver:
            item.add_marker(skip_solver)
        if "slow" in item.keywords and not run_slow:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def client():
    """A solver client configured from the environment."""
    return create_solver_client(timeout=60.0)
