from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from shift_denoise.estimators.filters import Filter
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.remainders import kappa
from shift_denoise.global_data.enm import Side
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.oracles.subspace import SubspaceSpec
from shift_denoise.oracles.subspace import project_onto_subspace
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal


@dataclass(frozen=True)
class SimplicityCertificate:
    rho: float
    theta: float
    m: int
    n: int
    h: int | None = None


def _require_sigma(sigma: float) -> None:
    if not sigma > 0:
        msg = f"sigma must be positive, got {sigma}"
        raise ConfigurationError(msg)


def bias_domain(m: int, n: int, h: int | None = None) -> Domain:
    """Indices on which the oracle bias is measured: D_{m+n}, or [-m-n-h, 2h] when predicting."""
    if h is None:
        return Domain.symmetric(m + n)
    return Domain.interval(-m - n - h, 2 * h)


def simplicity_certificate(
    phi: Filter,
    x: Signal,
    sigma: float,
    n: int,
    h: int | None = None,
) -> SimplicityCertificate:
    """
    ρ and θ of ``phi`` on ``x``.

    ρ = ‖φ‖_2·√w and θ = max |x_t - [φ*x]_t| · √w / (σρ), with w = 2m+1 for
    bilateral filters and m+1 for one-sided ones.
    """
    _require_sigma(sigma)
    width = 2 * phi.m + 1 if phi.is_bilateral else phi.m + 1
    rho = phi.l2_norm() * math.sqrt(width)
    domain = bias_domain(phi.m, n, h)
    bias = float(np.max(np.abs(x.on(domain) - estimate(phi, x, domain).values)))
    if bias == 0:
        theta = 0.0
    elif rho == 0:
        theta = math.inf
    else:
        theta = bias * math.sqrt(width) / (sigma * rho)
    return SimplicityCertificate(rho=rho, theta=theta, m=phi.m, n=n, h=h)


def shift_invariance_residual(  # noqa: PLR0913
    x: Signal,
    spec: SubspaceSpec,
    m: int,
    n: int,
    sigma: float,
    h: int | None = None,
) -> float:
    """
    ϰ = max over shifts of the windowed norm of ε = x - Π_S x, divided by σ.

    Bilateral: windows D_n shifted by τ in D_m, so ε is read on D_{m+n}.
    Predictive: windows {-n, ..., 0} shifted back by 0 ≤ τ ≤ h+m, so ε is
    read on [-n-h-m, 0]. The projection is one least-squares fit over the
    union of the windows, not one fit per window, so every shift reads the
    same ε.
    """
    _require_sigma(sigma)
    if h is None:
        union = Domain.symmetric(m + n)
    else:
        union = Domain.interval(-n - h - m, 0)
    residual = x.on(union) - project_onto_subspace(x, spec, union).values
    energy = np.concatenate(([0.0], np.cumsum(np.abs(residual) ** 2)))
    width = n + 1 if h is not None else 2 * n + 1
    windows = energy[width:] - energy[:-width]
    return float(np.sqrt(max(np.max(windows), 0.0)) / sigma)


def theta_inflation(theta: float, varkappa: float, m: int, n: int, side: Side | str = Side.BILATERAL) -> float:
    """θ + 2ϰ/κ (bilateral) or θ + 2√2·ϰ/κ (one-sided)."""
    if theta < 0 or varkappa < 0:
        msg = "theta and varkappa must be non-negative"
        raise ConfigurationError(msg)
    side = Side(side)
    factor = 2.0 if side == Side.BILATERAL else 2.0 * math.sqrt(2.0)
    return theta + factor * varkappa / kappa(m, n, side)
