"""Noise and shift-invariant test signals."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.oracles.subspace import SubspaceSpec
from shift_denoise.oracles.subspace import basis_matrix
from shift_denoise.oracles.subspace import min_separation as separation_of
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

    from shift_denoise.signal_core.sequences import Domain

logger = logging.getLogger(__name__)

MAX_DRAWS = 10_000


@dataclass(frozen=True)
class NoiseModel:
    """
    σ·ζ with ζ_t = ξ₁ + iξ₂, ξ₁, ξ₂ independent N(0, 1).

    The real and imaginary parts each have unit variance, so E|ζ_t|² = 2.
    """

    sigma: float
    seed: int

    def __post_init__(self):
        if not self.sigma >= 0:
            msg = f"sigma must be non-negative, got {self.sigma}"
            raise ConfigurationError(msg)


def gen_noise(domain: Domain, model: NoiseModel) -> Signal:
    rng = np.random.default_rng(model.seed)
    size = len(domain)
    draws = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Signal(domain.start, model.sigma * draws)


def _draw_frequencies(rng: np.random.Generator, s: int, separation: float) -> np.ndarray:
    if separation * s >= 2 * np.pi:
        msg = f"{s} frequencies cannot be {separation} apart on the circle"
        raise ConfigurationError(msg)
    for _ in range(MAX_DRAWS):
        omegas = rng.uniform(0, 2 * np.pi, s)
        if s == 1 or separation_of(omegas) >= separation:
            return omegas
    msg = f"no draw of {s} frequencies reached separation {separation} after {MAX_DRAWS} attempts"
    raise ConfigurationError(msg)


def gen_harmonic(  # noqa: PLR0913
    s: int,
    domain: Domain,
    seed: int,
    frequencies: ArrayLike | None = None,
    amplitudes: ArrayLike | None = None,
    min_separation: float = 0.0,
) -> tuple[Signal, SubspaceSpec]:
    """
    x_t = Σ_k C_k e^{iω_k t} with random frequencies and unit-modulus amplitudes.

    ``frequencies`` and ``amplitudes`` replace the random draws when given;
    ``min_separation`` rejects frequency draws closer than that on the circle.
    """
    if s < 1:
        msg = f"s must be at least 1, got {s}"
        raise ConfigurationError(msg)
    rng = np.random.default_rng(seed)
    if frequencies is None:
        omegas = _draw_frequencies(rng, s, min_separation)
    else:
        omegas = np.mod(np.asarray(frequencies, dtype=np.float64).reshape(-1), 2 * np.pi)
    if amplitudes is None:
        coefficients = np.exp(2j * np.pi * rng.uniform(size=s))
    else:
        coefficients = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if omegas.size != s or coefficients.size != s:
        msg = f"expected {s} frequencies and amplitudes, got {omegas.size} and {coefficients.size}"
        raise ConfigurationError(msg)
    spec = SubspaceSpec.from_frequencies(omegas)
    t = domain.indices.astype(np.float64)
    values = np.exp(1j * np.outer(t, omegas)) @ coefficients
    logger.debug("harmonic signal s=%d on %s, frequencies %s", s, domain, np.round(omegas, 4))
    return Signal(domain.start, values), spec


def gen_generalized_harmonic(spec: SubspaceSpec, coeffs: Sequence[ArrayLike], domain: Domain) -> Signal:
    """
    x_t = Σ_k q_k(t) λ_k^t, where ``coeffs[k]`` lists q_k in ascending powers.

    Each q_k may have at most as many coefficients as the multiplicity of mode k.
    """
    if len(coeffs) != len(spec.multiplicities):
        msg = f"expected polynomial coefficients for {len(spec.multiplicities)} modes, got {len(coeffs)}"
        raise ConfigurationError(msg)
    weights = []
    for k, (poly, mult) in enumerate(zip(coeffs, spec.multiplicities, strict=True)):
        poly = np.asarray(poly, dtype=np.complex128).reshape(-1)
        if poly.size > mult:
            msg = f"mode {k} has multiplicity {mult} but its polynomial has degree {poly.size - 1}"
            raise ConfigurationError(msg)
        weights.append(np.pad(poly, (0, mult - poly.size)))
    return Signal(domain.start, basis_matrix(spec, domain.indices) @ np.concatenate(weights))
