"""
Oracle filters that reproduce every element of a known shift-invariant subspace.

None of these constructions look at a particular signal: they depend on the
subspace (and the geometry) only.
"""

from __future__ import annotations

import logging
import math
import warnings
from typing import TYPE_CHECKING

import numpy as np
from django.conf import settings
from numpy.polynomial import polynomial as npoly
from scipy import linalg
from scipy import signal as sps

from shift_denoise.estimators.filters import Filter
from shift_denoise.global_data.enm import FilterClass
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import SeparationWarning
from shift_denoise.oracles.subspace import SubspaceSpec
from shift_denoise.oracles.subspace import basis_matrix
from shift_denoise.oracles.subspace import min_separation
from shift_denoise.signal_core.sequences import convolve

if TYPE_CHECKING:
    from numpy.typing import ArrayLike
    from numpy.typing import NDArray

    from shift_denoise.estimators.config import EstimatorConfig

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10
ROW_TIE_TOL = 1e-9


def _scaled_basis(spec: SubspaceSpec, m: int) -> NDArray[np.complex128]:
    """Basis on {0, ..., m}; column scaling leaves the span unchanged."""
    matrix = basis_matrix(spec, np.arange(m + 1))
    return matrix / np.linalg.norm(matrix, axis=0)


def _projector(matrix: NDArray[np.complex128]) -> NDArray[np.complex128]:
    q, r, _ = linalg.qr(matrix, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > RANK_TOL * diag[0]))
    if rank < matrix.shape[1]:
        logger.debug("basis is numerically rank %d of %d", rank, matrix.shape[1])
    q = q[:, :rank]
    return q @ q.conj().T


def _check_dimension(spec: SubspaceSpec, m: int) -> None:
    if spec.s > m + 1:
        msg = f"a subspace of dimension {spec.s} needs m >= {spec.s - 1}, got m={m}"
        raise ConfigurationError(msg)


def interpolating_filter(spec: SubspaceSpec, m: int) -> Filter:
    """
    Bilateral filter on D_m reproducing the subspace.

    The projector onto the subspace sampled on {0, ..., m} is formed and its
    row of least norm (ties broken towards the middle) becomes the filter,
    with the selected index placed at the origin.
    """
    _check_dimension(spec, m)
    projector = _projector(_scaled_basis(spec, m))
    norms = np.linalg.norm(projector, axis=1)
    candidates = np.flatnonzero(norms <= norms.min() * (1 + ROW_TIE_TOL))
    j = int(candidates[np.argmin(np.abs(candidates - m / 2))])
    taps = np.zeros(2 * m + 1, dtype=np.complex128)
    # φ_{j-i} = P[j, i], stored at offset (j - i) + m
    taps[j - np.arange(m + 1) + m] = projector[j]
    return Filter.bilateral(taps, m, oracle="interp", row=j)


def extrapolating_filter(spec: SubspaceSpec, m: int, h: int = 0) -> Filter:
    """
    Least-norm filter on {h, ..., h+m} with x_t = Σ φ_τ x_{t-τ} on the subspace.

    The row w solves Bᵀ w = b(m+h) with least norm, where B samples the basis
    on {0, ..., m}; then φ_{m+h-i} = w_i.
    """
    _check_dimension(spec, m)
    if h < 0:
        msg = f"horizon must be non-negative, got {h}"
        raise ConfigurationError(msg)
    raw = basis_matrix(spec, np.arange(m + 1))
    scale = np.linalg.norm(raw, axis=0)
    target = basis_matrix(spec, np.array([m + h]))[0] / scale
    row, *_ = linalg.lstsq((raw / scale).T, target, cond=RANK_TOL)
    return Filter.shifted(row[::-1], m, h, oracle="extrapolate")


def predictive_filter_separated(omegas: ArrayLike, m: int) -> Filter:
    """One-sided filter on {0, ..., m} for distinct frequencies ``omegas``."""
    omegas = np.asarray(omegas, dtype=np.float64).reshape(-1)
    delta = min_separation(omegas)
    if omegas.size > 1 and delta <= 1e-12:
        msg = "frequencies must be distinct"
        raise ConfigurationError(msg)
    nu = delta * (m + 1) / (2 * np.pi)
    if nu <= 1:
        warnings.warn(
            f"minimal separation {delta:.4g} is below 2π/(m+1); the norm bound is not guaranteed",
            SeparationWarning,
            stacklevel=2,
        )
    phi = extrapolating_filter(SubspaceSpec.from_frequencies(omegas), m, 0)
    return phi.with_metadata(oracle="separated", nu=float(nu))


def separated_norm_bound(s: int, m: int, nu: float) -> float:
    """√(Qs/(m+1)) with Q = (ν+1)/(ν-1)."""
    q = (nu + 1) / (nu - 1)
    return math.sqrt(q * s / (m + 1))


def unit_roots_threshold(s: int, c: float | None = None) -> float:
    """Smallest admissible m: c·s²·log(s+1) + s."""
    if c is None:
        c = getattr(settings, "SHIFTDENOISE_UNIT_ROOTS_C", 8.0)
    return c * s * s * math.log(s + 1) + s


def unit_roots_norm_bound(s: int, m: int) -> float:
    """Bound on ‖q‖²_2: 40 s (s+2) log(8 s (m-s)) / (m-s)."""
    ell = m - s
    return 40 * s * (s + 2) * math.log(8 * s * ell) / ell


def predictive_filter_unit_roots(spec: SubspaceSpec, m: int, c: float | None = None) -> Filter:
    """
    One-sided filter q on {0, ..., m}, q_0 = 0, with 1 - q(z) divisible by p(z).

    With θ_i the (unit-modulus) roots of p and ℓ = m - s, the taps come from
    Q = p̃ · r, where p̃ = ∏(z - θ_i) and r is the degree-ℓ Taylor expansion of
    1 / ∏(δz - θ_i), δ = 1 - α/(2ℓs), α = 4s(s+2)·log(8ℓs).
    """
    if not spec.is_unit_modulus:
        msg = "the unit-roots construction needs every exponential on the unit circle"
        raise ConfigurationError(msg)
    s = spec.s
    threshold = unit_roots_threshold(s, c)
    if m < threshold:
        msg = f"the unit-roots construction needs m >= {threshold:.1f} for s={s}, got m={m}"
        raise ConfigurationError(msg)
    ell = m - s
    alpha = 4 * s * (s + 2) * math.log(8 * ell * s)
    eps = alpha / (2 * ell * s)
    if not eps < 1:
        msg = f"m={m} is too small for the unit-roots construction (epsilon={eps:.3g})"
        raise ConfigurationError(msg)
    delta = 1 - eps

    thetas = spec.roots
    series = np.zeros(ell + 1, dtype=np.complex128)
    series[0] = 1
    # divide by (δz - θ): -θ g_j + δ g_{j-1} = f_j
    for theta in thetas:
        series = sps.lfilter([1.0], [-theta, delta], series)
    q_poly = np.convolve(npoly.polyfromroots(thetas), series)
    q_poly /= q_poly[0]
    taps = -q_poly
    taps[0] = 0
    logger.debug("unit-roots filter s=%d m=%d: delta=%.4f, |q|=%.4g", s, m, delta, np.linalg.norm(taps))
    return Filter.shifted(taps, m, 0, oracle="unitroots", delta=float(delta))


def compose_filters(a: Filter, b: Filter) -> Filter:
    """a * b; bandwidths and shifts add."""
    if a.filter_class != b.filter_class:
        msg = "only filters of the same class can be composed"
        raise ConfigurationError(msg)
    product = convolve(a.as_signal(), b.as_signal())
    return Filter.from_signal(product, a.filter_class, a.m + b.m, a.h + b.h, oracle="composed")


def square_oracle(phi: Filter) -> Filter:
    """φ * φ for a bilateral φ on D_m, a filter on D_{2m}."""
    if not phi.is_bilateral:
        msg = "the square oracle is defined for bilateral filters"
        raise ConfigurationError(msg)
    return compose_filters(phi, phi).with_metadata(oracle="square")


def feasible_oracle(spec: SubspaceSpec, cfg: EstimatorConfig) -> Filter:
    """
    Composition oracle matching the geometry of ``cfg``.

    Bilateral: interpolating filters on D_{⌊m/2⌋} and D_{m-⌊m/2⌋}.
    Predictive: extrapolating filters with the bandwidth and horizon split the
    same way.
    """
    m1 = cfg.m // 2
    m2 = cfg.m - m1
    if cfg.is_predictive:
        h = cfg.h or 0
        h1 = h // 2
        first = extrapolating_filter(spec, m1, h1)
        second = extrapolating_filter(spec, m2, h - h1)
    else:
        first = interpolating_filter(spec, m1)
        second = interpolating_filter(spec, m2)
    return compose_filters(first, second).with_metadata(oracle="feasible")


def required_rho_bar(phi: Filter) -> float:
    """Smallest ρ̄ for which ``phi`` satisfies the Fourier ℓ1 constraint."""
    width = 2 * phi.m + 1 if phi.filter_class == FilterClass.BILATERAL else phi.m + 1
    return phi.fourier_l1() * math.sqrt(width)
