"""
Full recovery of a signal on D_N from observations on D_N only.

The centre D_M is estimated with a bilateral filter; the two edges, where a
bilateral window would leave the observation domain, are estimated with
one-sided filters, the left edge by time reversal.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from shift_denoise.estimators.config import EstimatorConfig
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import fit_constrained
from shift_denoise.estimators.fitting import fit_predictive
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal
from shift_denoise.signal_core.sequences import reversed_signal
from shift_denoise.signal_core.sequences import shift
from shift_denoise.solvers.options import SolverOptions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompositeKnobs:
    c_ratio: float = 1.0
    rho_bar_edge_scale: float = 2.0

    def __post_init__(self):
        if not self.c_ratio > 0 or not self.rho_bar_edge_scale > 0:
            msg = "composite knobs must be positive"
            raise ConfigurationError(msg)

    @classmethod
    def from_settings(cls) -> CompositeKnobs:
        conf = getattr(settings, "SHIFTDENOISE_COMPOSITE", {})
        return cls(
            c_ratio=conf.get("C_RATIO", cls.c_ratio),
            rho_bar_edge_scale=conf.get("RHO_BAR_EDGE_SCALE", cls.rho_bar_edge_scale),
        )


def choose_split(big_n: int, s: int, c_ratio: float = 1.0) -> int:
    """M in [⌈N/2⌉, N-1] with (M+1)/(N-M+1) closest to c_ratio·s·log(N+1)."""
    lo = math.ceil(big_n / 2)
    hi = big_n - 1
    if big_n < 2 or lo > hi:
        msg = f"composite recovery needs N >= 2, got N={big_n}"
        raise ConfigurationError(msg)
    target = c_ratio * s * math.log(big_n + 1)
    candidates = np.arange(lo, hi + 1)
    gaps = np.abs((candidates + 1) / (big_n - candidates + 1) - target)
    return int(candidates[np.argmin(gaps)])


def edge_rho_bar(big_n: int, s: int, scale: float) -> float:
    return max(1.0, scale * s * s * math.log((2 * big_n + 1) * s + 1))


def _right_edge(y: Signal, big_n: int, split: int, rho_bar: float, solver: SolverOptions) -> np.ndarray:
    """Estimates on [M, N] from a one-sided fit on data shifted so N sits at 0."""
    cfg = EstimatorConfig(
        m=big_n + split,
        n=big_n - split,
        h=0,
        rho_bar=rho_bar,
        solver=solver,
    )
    data = shift(y, -big_n)
    phi = fit_predictive(data, cfg)
    return estimate(phi, data, cfg.estimation_domain()).values


def denoise_full_composite(
    y: Signal,
    big_n: int,
    s: int,
    knobs: CompositeKnobs | None = None,
    solver: SolverOptions | None = None,
) -> Signal:
    """
    Estimate x on D_N from y on D_N.

    Args:
        y: observations covering D_N.
        big_n: the half-width N.
        s: dimension of the shift-invariant model.
        knobs: the split ratio and edge-level constants.
        solver: options passed to every fit.

    Returns:
        Signal: the stitched estimate on D_N.
    """
    if s < 1:
        msg = f"s must be at least 1, got {s}"
        raise ConfigurationError(msg)
    knobs = knobs or CompositeKnobs.from_settings()
    solver = solver or SolverOptions.from_settings()
    y.require(Domain.symmetric(big_n), "observations")
    y = y.restrict(Domain.symmetric(big_n))

    split = choose_split(big_n, s, knobs.c_ratio)
    edge_level = edge_rho_bar(big_n, s, knobs.rho_bar_edge_scale)
    logger.info(
        "composite recovery N=%d s=%d: centre D_%d, edges %d samples, edge rho_bar=%.3g",
        big_n,
        s,
        split,
        big_n - split,
        edge_level,
    )

    centre_cfg = EstimatorConfig(m=big_n - split, n=split, rho_bar=4.0 * s, solver=solver)
    centre = estimate(fit_constrained(y, centre_cfg), y, Domain.symmetric(split)).values

    right = _right_edge(y, big_n, split, edge_level, solver)
    left = _right_edge(reversed_signal(y), big_n, split, edge_level, solver)

    values = np.empty(2 * big_n + 1, dtype=np.complex128)
    # index t sits at t + N; the boundary point M belongs to the centre
    values[big_n - split : big_n + split + 1] = centre
    values[big_n + split + 1 :] = right[1:]
    values[: big_n - split] = left[1:][::-1]
    return Signal(-big_n, values)
