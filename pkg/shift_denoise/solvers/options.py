from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from typing import TYPE_CHECKING

import numpy as np
from django.conf import settings

from shift_denoise.global_data.exceptions import ConfigurationError

if TYPE_CHECKING:
    from numpy.typing import NDArray


@dataclass(frozen=True)
class SolverOptions:
    """Stopping and step-size knobs shared by both solvers."""

    max_iters: int = 5000
    tol: float = 1e-9
    step_safety: float = 0.1
    power_iters: int = 50

    def __post_init__(self):
        if self.max_iters < 1:
            msg = f"max_iters must be at least 1, got {self.max_iters}"
            raise ConfigurationError(msg)
        if not self.tol > 0:
            msg = f"tol must be positive, got {self.tol}"
            raise ConfigurationError(msg)
        if not 0 < self.step_safety <= 1:
            msg = f"step_safety must lie in (0, 1], got {self.step_safety}"
            raise ConfigurationError(msg)
        if self.power_iters < 1:
            msg = f"power_iters must be at least 1, got {self.power_iters}"
            raise ConfigurationError(msg)

    @classmethod
    def from_settings(cls, **overrides) -> SolverOptions:
        conf = getattr(settings, "SHIFTDENOISE_SOLVER", {})
        base = cls(
            max_iters=conf.get("MAX_ITERS", cls.max_iters),
            tol=conf.get("TOL", cls.tol),
            step_safety=conf.get("STEP_SAFETY", cls.step_safety),
            power_iters=conf.get("POWER_ITERS", cls.power_iters),
        )
        return replace(base, **overrides) if overrides else base


@dataclass(frozen=True, eq=False)
class SolverResult:
    solution: NDArray[np.complex128]
    objective: float
    certificate: float
    iterations: int
    converged: bool
    lipschitz: float = field(default=0.0)
    restarts: int = field(default=0)

    def as_metadata(self) -> dict:
        return {
            "objective": float(self.objective),
            "certificate": float(self.certificate),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }
