"""Validated run configuration shared by the CLI, the runner and the graph."""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from cp_verifier.benchmarks import BENCHMARK_NAMES
from cp_verifier.smt.client import SolverClient
from cp_verifier.smt.factory import create_solver_client

Mode = Literal["modular", "monolithic", "strawperson", "simulate", "validate"]
ReportFormat = Literal["text", "json"]


class BenchSpec(BaseModel):
    """A built-in benchmark to run instead of input files."""

    name: str = Field(..., description="reach, length, vf, hijack, wan-bte or running-example")
    k: int = Field(4, description="Fattree arity")
    all_prefix: bool = Field(False, description="Symbolic destination")
    fixture: Optional[str] = Field(None, description="Running-example fixture id")
    broken: bool = Field(False, description="Failing WAN variant")

    @field_validator("name")
    @classmethod
    def _known(cls, value: str) -> str:
        if value not in BENCHMARK_NAMES:
            raise ValueError(f"unknown benchmark {value!r}; choose from {list(BENCHMARK_NAMES)}")
        return value

    @field_validator("k")
    @classmethod
    def _even(cls, value: int) -> int:
        if value < 2 or value % 2:
            raise ValueError(f"k must be even and at least 2, got {value}")
        return value


class RunConfig(BaseModel):
    mode: Mode = "modular"
    network: Optional[str] = Field(None, description="Network JSON file")
    interfaces: Optional[str] = Field(None, description="Interface annotation JSON file")
    properties: Optional[str] = Field(None, description="Property annotation JSON file")
    bench: Optional[BenchSpec] = None
    delay: Optional[int] = Field(None, ge=0, description="Message delay bound; benchmarks default to their own")
    jobs: int = Field(1, ge=1)
    timeout: Optional[float] = Field(None, gt=0, description="Seconds per solver query")
    solver: Optional[str] = None
    solver_args: Optional[List[str]] = None
    report_format: ReportFormat = "text"
    dump_smt: Optional[str] = None
    dump_fixture: Optional[str] = Field(None, description="Write the benchmark's input files here")
    seed: int = 0
    max_steps: Optional[int] = Field(None, ge=1)
    merge_samples: int = Field(0, ge=0, description="Random merge-law samples during validation")

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        if (self.bench is None) == (self.network is None):
            raise ValueError("give either a network file or a benchmark")
        if self.delay and self.mode not in ("modular", "simulate"):
            raise ValueError(f"delay applies to modular checks and simulation, not {self.mode}")
        if self.bench is None:
            if self.mode in ("modular", "strawperson") and not self.interfaces:
                raise ValueError(f"{self.mode} checks need an interfaces file")
            if self.mode in ("modular", "monolithic") and not self.properties:
                raise ValueError(f"{self.mode} checks need a properties file")
        return self


def solver_from_config(config: RunConfig) -> SolverClient:
    """Create the solver client for a run; flags win over the environment.

    Raises:
        ValueError: If the solver executable cannot be found
    """
    return create_solver_client(
        solver=config.solver,
        args=config.solver_args,
        timeout=config.timeout,
        dump_dir=config.dump_smt,
    )
