"""
Adaptive filter fitting.

Every fit works in Fourier coordinates ``f = F[φ]`` so that the Fourier ℓ1
norm of the filter becomes the plain ℓ1 norm of ``f``; the least-squares
operator is then ``T(y) ∘ F^H``, applied matrix-free.
"""

from __future__ import annotations

import logging
import warnings
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import replace
from typing import TYPE_CHECKING

import numpy as np
from scipy import fft
from scipy.sparse.linalg import LinearOperator

from shift_denoise.conv_operators.operators import ToeplitzOp
from shift_denoise.estimators.filters import Filter
from shift_denoise.estimators.remainders import default_lambda
from shift_denoise.global_data.enm import EstimatorMode
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import ConvergenceWarning
from shift_denoise.signal_core.fourier import centered_dft
from shift_denoise.signal_core.fourier import centered_idft
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal
from shift_denoise.signal_core.sequences import shift
from shift_denoise.solvers.fista import solve_constrained
from shift_denoise.solvers.fista import solve_penalized

if TYPE_CHECKING:
    from collections.abc import Iterator

    from shift_denoise.estimators.config import EstimatorConfig

logger = logging.getLogger(__name__)

# per thread: worker threads start from an empty context
_convergence_logged: ContextVar[bool] = ContextVar("convergence_logged", default=False)


@contextmanager
def log_convergence() -> Iterator[None]:
    """
    Report solver trouble of fits in the current thread through the logger.

    Inside the block a fit that stops early, or a penalized fit with σ = 0,
    logs an INFO record instead of issuing :class:`ConvergenceWarning`.
    The warning filters are left alone, so other threads are unaffected;
    callers read :attr:`Filter.converged` instead.
    """
    token = _convergence_logged.set(True)
    try:
        yield
    finally:
        _convergence_logged.reset(token)


def _convergence_warning(message: str) -> None:
    if _convergence_logged.get():
        logger.info(message)
    else:
        warnings.warn(message, ConvergenceWarning, stacklevel=4)


def _fourier_operator(op: ToeplitzOp, *, bilateral: bool) -> LinearOperator:
    if bilateral:
        to_time, to_freq = centered_idft, centered_dft
    else:

        def to_time(f):
            return fft.ifft(f, norm="ortho")

        def to_freq(v):
            return fft.fft(v, norm="ortho")

    return LinearOperator(
        op.shape,
        matvec=lambda f: op.apply(to_time(np.ravel(f))),
        rmatvec=lambda r: to_freq(op.adjoint(np.ravel(r))),
        dtype=np.complex128,
    )


def _penalty_weight(cfg: EstimatorConfig) -> float:
    sigma = cfg.sigma or 0.0
    if sigma == 0:
        _convergence_warning("sigma = 0 in penalized mode; using machine epsilon for the penalty scale")
        sigma = float(np.finfo(np.float64).eps)
    lam = cfg.lam if cfg.lam is not None else default_lambda(cfg.m, cfg.n, cfg.side)
    return sigma**2 * lam**2 * cfg.width


def _fit(y: Signal, cfg: EstimatorConfig, radius: float | None) -> Filter:
    if cfg.is_predictive:
        op = ToeplitzOp.predictive(y, cfg.m, cfg.n, cfg.h or 0)
    else:
        op = ToeplitzOp.bilateral(y, cfg.m, cfg.n)
    domain = cfg.estimation_domain()
    y.require(domain, "observations")
    target = y.on(domain)
    operator = _fourier_operator(op, bilateral=not cfg.is_predictive)

    if cfg.mode == EstimatorMode.CONSTRAINED:
        level = cfg.radius if radius is None else radius
        result = solve_constrained(operator, target, level, cfg.solver)
    else:
        level = _penalty_weight(cfg)
        result = solve_penalized(operator, target, level, cfg.solver)

    if cfg.is_predictive:
        taps = fft.ifft(result.solution, norm="ortho")
        fitted = Filter.shifted(taps, cfg.m, cfg.h or 0, **result.as_metadata())
    else:
        fitted = Filter.bilateral(centered_idft(result.solution), cfg.m, **result.as_metadata())

    logger.debug(
        "fitted %s filter m=%d n=%d h=%s %s=%.4g: objective=%.4g iterations=%d converged=%s",
        fitted.filter_class,
        cfg.m,
        cfg.n,
        cfg.h,
        "radius" if cfg.mode == EstimatorMode.CONSTRAINED else "penalty",
        level,
        result.objective,
        result.iterations,
        result.converged,
    )
    if not result.converged:
        _convergence_warning(
            f"filter fit stopped after {result.iterations} iterations (certificate {result.certificate:.3e})",
        )
    return fitted


def _expect(cfg: EstimatorConfig, mode: EstimatorMode, *, predictive: bool) -> None:
    if cfg.mode != mode or cfg.is_predictive != predictive:
        kind = "predictive" if cfg.is_predictive else "bilateral"
        msg = f"configuration describes a {kind} {cfg.mode} fit"
        raise ConfigurationError(msg)


def fit_constrained(y: Signal, cfg: EstimatorConfig, radius: float | None = None) -> Filter:
    """
    Least-squares filter on D_m with ‖φ‖^F_{m,1} ≤ ρ̄/√(2m+1).

    ``radius`` overrides the Fourier ℓ1 level directly and bypasses the
    ρ̄ ≥ 1 check of the configuration.
    """
    _expect(cfg, EstimatorMode.CONSTRAINED, predictive=False)
    return _fit(y, cfg, radius)


def fit_penalized(y: Signal, cfg: EstimatorConfig) -> Filter:
    """Filter on D_m minimizing the residual plus σ²λ²(2m+1)(‖φ‖^F_{m,1})²."""
    _expect(cfg, EstimatorMode.PENALIZED, predictive=False)
    return _fit(y, cfg, None)


def fit_predictive(y: Signal, cfg: EstimatorConfig, radius: float | None = None) -> Filter:
    """Constrained or penalized filter on {h, ..., h+m} fitted on {-n, ..., 0}."""
    if not cfg.is_predictive:
        msg = "predictive fits need a horizon h"
        raise ConfigurationError(msg)
    return _fit(y, cfg, radius)


def fit(y: Signal, cfg: EstimatorConfig) -> Filter:
    if cfg.is_predictive:
        return fit_predictive(y, cfg)
    if cfg.mode == EstimatorMode.CONSTRAINED:
        return fit_constrained(y, cfg)
    return fit_penalized(y, cfg)


def estimate(phi: Filter, y: Signal, domain: Domain) -> Signal:
    """x̂_t = [φ * y]_t for t in ``domain``."""
    op = ToeplitzOp(y, phi.support, domain)
    return Signal(domain.start, op.apply(phi.coefficients))


def residual_objective(phi: Filter, y: Signal, cfg: EstimatorConfig) -> float:
    """‖y − φ*y‖² over the configuration's estimation domain."""
    domain = cfg.estimation_domain()
    y.require(domain, "observations")
    residual = y.on(domain) - estimate(phi, y, domain).values
    return float(np.vdot(residual, residual).real)


def extrapolate(y: Signal, cfg: EstimatorConfig, h0: int) -> complex:
    """
    Predict x at ``h0`` steps past the last observation of ``y``.

    The data are shifted so the last observation sits at index 0, a
    predictive filter with horizon 2·h0 is fitted on {-n, ..., 0}, and the
    estimate is read at index h0.
    """
    if h0 < 1:
        msg = f"extrapolation horizon must be at least 1, got {h0}"
        raise ConfigurationError(msg)
    anchor = y.stop
    shifted = shift(y, -anchor)
    predictive = replace(cfg, h=2 * h0)
    phi = fit_predictive(shifted, predictive)
    return complex(estimate(phi, shifted, Domain(h0, 1)).values[0])

