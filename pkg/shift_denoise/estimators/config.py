from __future__ import annotations

import math
from dataclasses import dataclass
from dataclasses import field

from shift_denoise.global_data.enm import EstimatorMode
from shift_denoise.global_data.enm import Side
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.solvers.options import SolverOptions


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Geometry and mode of one adaptive fit.

    ``h is None`` selects the bilateral (interpolation) problem on D_n with a
    filter on D_m; an integer ``h`` selects the predictive problem on
    {-n, ..., 0} with a filter on {h, ..., h+m}.
    """

    m: int
    n: int
    mode: EstimatorMode = EstimatorMode.CONSTRAINED
    rho_bar: float | None = None
    lam: float | None = None
    sigma: float | None = None
    h: int | None = None
    solver: SolverOptions = field(default_factory=SolverOptions.from_settings)

    def __post_init__(self):
        object.__setattr__(self, "mode", EstimatorMode(self.mode))
        if self.m < 1:
            msg = f"m must be at least 1, got {self.m}"
            raise ConfigurationError(msg)
        if self.n < 0:
            msg = f"n must be non-negative, got {self.n}"
            raise ConfigurationError(msg)
        if self.h is not None and self.h < 0:
            msg = f"h must be non-negative, got {self.h}"
            raise ConfigurationError(msg)
        if self.mode == EstimatorMode.CONSTRAINED:
            if self.rho_bar is None or not self.rho_bar >= 1:
                msg = f"constrained mode needs rho_bar >= 1, got {self.rho_bar}"
                raise ConfigurationError(msg)
        else:
            if self.sigma is None or not self.sigma >= 0:
                msg = f"penalized mode needs sigma >= 0, got {self.sigma}"
                raise ConfigurationError(msg)
            if self.lam is not None and not self.lam > 0:
                msg = f"lambda must be positive, got {self.lam}"
                raise ConfigurationError(msg)

    @property
    def is_predictive(self) -> bool:
        return self.h is not None

    @property
    def side(self) -> Side:
        return Side.UNILATERAL if self.is_predictive else Side.BILATERAL

    @property
    def width(self) -> int:
        """Number of filter taps: 2m+1 bilateral, m+1 predictive."""
        return self.m + 1 if self.is_predictive else 2 * self.m + 1

    @property
    def radius(self) -> float:
        """ℓ1-ball radius in Fourier coefficients, ρ̄/√(width)."""
        if self.rho_bar is None:
            msg = "radius is only defined in constrained mode"
            raise ConfigurationError(msg)
        return self.rho_bar / math.sqrt(self.width)

    def estimation_domain(self) -> Domain:
        return Domain.past(self.n) if self.is_predictive else Domain.symmetric(self.n)

    def observation_domains(self) -> list[Domain]:
        """
        Index ranges the fit reads: D_{m+n} for the bilateral problem; for the
        predictive one, the regressors on [-m-n-h, -h] and the targets on [-n, 0].
        """
        if not self.is_predictive:
            return [Domain.symmetric(self.m + self.n)]
        h = self.h or 0
        return [
            Domain.interval(-self.m - self.n - h, -h),
            Domain.past(self.n),
        ]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "h": self.h,
            "mode": str(self.mode),
            "rho_bar": self.rho_bar,
            "lambda": self.lam,
            "sigma": self.sigma,
            "solver": {"max_iters": self.solver.max_iters, "tol": self.solver.tol},
        }
