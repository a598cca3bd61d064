"""Driver for an external SMT-LIB v2 solver process."""

import logging
import os
import subprocess
import time
from pathlib import Path
from typing import Optional, Sequence, Union

from cp_verifier.model.errors import MalformedModel, SolverFailure
from cp_verifier.smt.encoder import SmtEncoder, SolverTerm
from cp_verifier.smt.model import decode_assignment, parse_response
from cp_verifier.smt.schemas import SolverVerdict, VerdictKind
from cp_verifier.utils.debug import dump_script

logger = logging.getLogger(__name__)

# Seconds granted past the solver's own limit before the process is killed.
KILL_GRACE = 5.0


class SolverClient:
    """Runs one fresh solver process per query over stdin/stdout."""

    def __init__(
        self,
        executable: str,
        args: Sequence[str] = ("-in",),
        timeout: float = 30.0,
        dump_dir: Optional[Union[str, Path]] = None,
    ):
        """
        Initialize the solver client.

        Args:
            executable: Solver command or path
            args: Arguments making the solver read a script from stdin
            timeout: Per-query limit in seconds
            dump_dir: Directory receiving every emitted script, if set
        """
        self.executable = executable
        self.args = tuple(args)
        self.timeout = timeout
        self.dump_dir = dump_dir

    @property
    def z3_like(self) -> bool:
        """Whether the solver understands ``(set-option :timeout ms)``."""
        return os.path.basename(self.executable).lower().startswith("z3")

    def check_validity(self, encoder: SmtEncoder, goal: SolverTerm, label: str = "query") -> SolverVerdict:
        """
        Check that ``goal`` holds under the encoder's assumptions.

        The negation is asserted: unsat means valid and a model is a
        counterexample. Solver problems never raise; they come back as
        ``unknown`` or ``failure`` verdicts.

        Args:
            encoder: Encoding context holding declarations and assumptions
            goal: Bool-sorted term to prove
            label: Label used for dumps and logs

        Returns:
            SolverVerdict
        """
        timeout_ms = int(self.timeout * 1000) if self.z3_like else None
        script = encoder.script(goal, timeout_ms)
        dump_script(script, label, self.dump_dir)
        start = time.perf_counter()
        try:
            proc = subprocess.run(
                [self.executable, *self.args],
                input=script,
                capture_output=True,
                text=True,
                timeout=self.timeout + KILL_GRACE,
            )
        except subprocess.TimeoutExpired:
            elapsed = time.perf_counter() - start
            logger.warning("⚠️  %s: solver killed after %.1fs", label, elapsed)
            return SolverVerdict(kind=VerdictKind.UNKNOWN, label=label, reason="timeout", timed_out=True, elapsed=elapsed)
        except OSError as e:
            logger.error("❌ %s: could not start solver %s: %s", label, self.executable, e)
            return SolverVerdict(kind=VerdictKind.FAILURE, label=label, detail=f"could not start {self.executable}: {e}")
        elapsed = time.perf_counter() - start
        verdict = self._interpret(proc, encoder, label)
        verdict.elapsed = elapsed
        logger.debug("%s: %s in %.3fs", label, verdict.kind.value, elapsed)
        return verdict

    def _interpret(self, proc: "subprocess.CompletedProcess[str]", encoder: SmtEncoder, label: str) -> SolverVerdict:
        try:
            response = parse_response(proc.stdout)
        except SolverFailure as e:
            stderr = proc.stderr.strip()
            detail = f"{e} (exit {proc.returncode}{': ' + stderr[:200] if stderr else ''})"
            logger.error("❌ %s: %s", label, detail)
            return SolverVerdict(kind=VerdictKind.FAILURE, label=label, detail=detail)
        if response.verdict == "unsat":
            return SolverVerdict(kind=VerdictKind.VALID, label=label)
        if response.verdict == "sat":
            try:
                assignment = decode_assignment(response.values, encoder)
            except MalformedModel as e:
                logger.error("❌ %s: %s", label, e)
                return SolverVerdict(kind=VerdictKind.FAILURE, label=label, detail=str(e))
            return SolverVerdict(kind=VerdictKind.COUNTEREXAMPLE, label=label, assignment=assignment)
        reason = response.reason or response.verdict
        timed_out = response.verdict == "timeout" or any(w in reason for w in ("timeout", "canceled"))
        logger.warning("⚠️  %s: solver returned unknown (%s)", label, reason)
        return SolverVerdict(kind=VerdictKind.UNKNOWN, label=label, reason=reason, timed_out=timed_out)
