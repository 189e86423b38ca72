"""Run configuration: solver command, budgets and seed."""

from __future__ import annotations

import json
import os
import shutil
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

ENV_SOLVER = "GEOTHICK_SOLVER"
ENV_TIMEOUT = "GEOTHICK_SOLVER_TIMEOUT"


@dataclass(frozen=True)
class RunConfig:
    solver: str | None = None
    solver_timeout: float = 60.0
    max_coloring_edges: int = 64
    enumeration_budget: int = 10**6
    placement_budget: int = 300
    seed: int = 0
    output_dir: str = "."

    def __post_init__(self):
        for name in ("max_coloring_edges", "enumeration_budget", "placement_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.solver_timeout < 0:
            raise ValueError("solver_timeout must be non-negative")

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def default_solver() -> str | None:
    """The z3 binary on PATH, if any."""
    return shutil.which("z3")


def load_config(path: str | os.PathLike | None = None, env: dict | None = None) -> RunConfig:
    """Defaults, then the JSON file at ``path``, then environment overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text())
        known = {f.name for f in fields(RunConfig)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        values.update(raw)
    if env.get(ENV_SOLVER):
        values["solver"] = env[ENV_SOLVER]
    if env.get(ENV_TIMEOUT):
        values["solver_timeout"] = float(env[ENV_TIMEOUT])
    if "solver" not in values:
        values["solver"] = default_solver()
    return RunConfig(**values)
