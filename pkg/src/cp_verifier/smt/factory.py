"""Factory for creating solver clients."""

import os
import shlex
import shutil
from pathlib import Path
from typing import Optional, Sequence, Union

from cp_verifier import settings
from cp_verifier.smt.client import SolverClient


def create_solver_client(
    solver: Optional[str] = None,
    args: Optional[Sequence[str]] = None,
    timeout: Optional[float] = None,
    dump_dir: Optional[Union[str, Path]] = None,
) -> SolverClient:
    """
    Create a solver client with configuration from environment variables.

    Args:
        solver: Solver command or path (defaults to CPV_SOLVER)
        args: Solver arguments (defaults to CPV_SOLVER_ARGS)
        timeout: Per-query limit in seconds (defaults to CPV_TIMEOUT)
        dump_dir: Script dump directory (defaults to CPV_DUMP_SMT)

    Returns:
        Configured SolverClient instance

    Raises:
        ValueError: If the solver executable cannot be found
    """
    solver = solver or os.getenv("CPV_SOLVER", settings.DEFAULT_SOLVER)
    if args is None:
        args = shlex.split(os.getenv("CPV_SOLVER_ARGS", settings.DEFAULT_SOLVER_ARGS))
    timeout = timeout if timeout is not None else settings.env_float("CPV_TIMEOUT", settings.DEFAULT_TIMEOUT)
    if dump_dir is None:
        dump_dir = os.getenv("CPV_DUMP_SMT") or None

    resolved = shutil.which(solver)
    if resolved is None:
        raise ValueError(f"Solver executable {solver!r} not found; set CPV_SOLVER or pass --solver")
    return SolverClient(executable=resolved, args=args, timeout=timeout, dump_dir=dump_dir)
