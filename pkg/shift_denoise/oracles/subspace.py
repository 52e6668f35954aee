"""
Shift-invariant subspaces given by a difference equation p(Δ)x = 0.

A subspace is stored through the exponentials λ_k (so that λ_k^t solves the
equation) and their multiplicities; p(z) = ∏ (1 - λ_k z)^{m_k} with p(0) = 1.
For unit-modulus exponentials λ_k = e^{iω_k}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import linalg
from scipy import signal as sps

from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import ArrayLike
    from numpy.typing import NDArray

ROOT_CLUSTER_TOL = 1e-7
UNIT_MODULUS_TOL = 1e-9


@dataclass(frozen=True)
class SubspaceSpec:
    exponentials: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(complex(v) for v in self.exponentials)
        mults = tuple(int(v) for v in self.multiplicities)
        if not exps:
            msg = "a subspace needs at least one mode"
            raise ConfigurationError(msg)
        if len(exps) != len(mults):
            msg = "exponentials and multiplicities differ in length"
            raise ConfigurationError(msg)
        if any(k < 1 for k in mults):
            msg = "multiplicities must be at least 1"
            raise ConfigurationError(msg)
        if any(v == 0 for v in exps):
            msg = "exponentials must be non-zero"
            raise ConfigurationError(msg)
        for i, a in enumerate(exps):
            if any(abs(a - b) <= ROOT_CLUSTER_TOL for b in exps[i + 1 :]):
                msg = f"mode {a} is listed twice; merge it into one multiplicity"
                raise ConfigurationError(msg)
        object.__setattr__(self, "exponentials", exps)
        object.__setattr__(self, "multiplicities", mults)

    @classmethod
    def from_modes(cls, modes: Iterable[tuple[float, int]]) -> SubspaceSpec:
        """``modes`` are ``(omega, multiplicity)`` pairs with omega in radians."""
        modes = list(modes)
        return cls(
            tuple(np.exp(1j * float(omega)) for omega, _ in modes),
            tuple(int(mult) for _, mult in modes),
        )

    @classmethod
    def from_frequencies(cls, omegas: Iterable[float]) -> SubspaceSpec:
        return cls.from_modes((omega, 1) for omega in omegas)

    @classmethod
    def from_poly(cls, coefficients: ArrayLike, tol: float = ROOT_CLUSTER_TOL) -> SubspaceSpec:
        """
        Read p = (1, p_1, ..., p_s) in ascending powers.

        Roots come from the companion matrix and are merged into one mode
        when closer than ``tol``.
        """
        p = np.trim_zeros(np.asarray(coefficients, dtype=np.complex128), "b")
        if p.size < 2:
            msg = "p(z) must have degree at least 1"
            raise ConfigurationError(msg)
        if abs(p[0] - 1) > 1e-12:
            msg = f"p(0) must equal 1, got {p[0]}"
            raise ConfigurationError(msg)
        clusters: list[list[complex]] = []
        for z in npoly.polyroots(p):
            for cluster in clusters:
                if abs(np.mean(cluster) - z) <= tol:
                    cluster.append(z)
                    break
            else:
                clusters.append([z])
        return cls(
            tuple(1 / complex(np.mean(c)) for c in clusters),
            tuple(len(c) for c in clusters),
        )

    @property
    def s(self) -> int:
        return sum(self.multiplicities)

    @property
    def poly(self) -> NDArray[np.complex128]:
        """Ascending coefficients of p(z) = ∏ (1 - λ_k z)^{m_k}."""
        return poly_from_modes(zip(self.exponentials, self.multiplicities, strict=True))

    @property
    def roots(self) -> NDArray[np.complex128]:
        """Roots 1/λ_k of p, repeated by multiplicity."""
        return np.repeat(1 / np.asarray(self.exponentials), self.multiplicities)

    @property
    def frequencies(self) -> NDArray[np.float64]:
        return np.mod(np.angle(np.asarray(self.exponentials)), 2 * np.pi)

    @property
    def is_unit_modulus(self) -> bool:
        return bool(np.all(np.abs(np.abs(np.asarray(self.exponentials)) - 1) <= UNIT_MODULUS_TOL))

    def modes(self) -> list[tuple[float, int]]:
        return [(float(w), k) for w, k in zip(self.frequencies, self.multiplicities, strict=True)]


def poly_from_modes(modes: Iterable[tuple[complex, int]]) -> NDArray[np.complex128]:
    """∏ (1 - λ z)^k over ``(λ, k)`` pairs, ascending coefficients."""
    p = np.ones(1, dtype=np.complex128)
    for lam, mult in modes:
        for _ in range(mult):
            p = npoly.polymul(p, [1, -lam])
    return p


def basis_matrix(spec: SubspaceSpec, indices: NDArray) -> NDArray[np.complex128]:
    """Columns t^j λ_k^t, j < m_k, sampled at ``indices``."""
    t = np.asarray(indices, dtype=np.float64)
    columns = []
    for lam, mult in zip(spec.exponentials, spec.multiplicities, strict=True):
        wave = np.exp(t * np.log(lam))
        columns.extend(t**j * wave for j in range(mult))
    return np.column_stack(columns)


def basis_from_spec(spec: SubspaceSpec, domain: Domain) -> list[Signal]:
    if len(domain) < spec.s:
        msg = f"a basis of dimension {spec.s} needs a domain of at least {spec.s} points, got {len(domain)}"
        raise DataError(msg)
    matrix = basis_matrix(spec, domain.indices)
    return [Signal(domain.start, matrix[:, j]) for j in range(matrix.shape[1])]


def check_difference_equation(spec: SubspaceSpec, x: Signal, domain: Domain) -> float:
    """max over ``domain`` of |Σ_τ p_τ x_{t-τ}|."""
    p = spec.poly
    x.require(domain.dilate(-(p.size - 1), 0), "signal")
    window = x.window(domain.start - p.size + 1, domain.stop)
    return float(np.max(np.abs(sps.convolve(window, p, mode="valid"))))


def project_onto_subspace(x: Signal, spec: SubspaceSpec, domain: Domain) -> Signal:
    """Least-squares projection of x onto the subspace, both read on ``domain``."""
    x.require(domain, "signal")
    matrix = basis_matrix(spec, domain.indices)
    coefficients, *_ = linalg.lstsq(matrix, x.on(domain))
    return Signal(domain.start, matrix @ coefficients)


def min_separation(omegas: ArrayLike) -> float:
    """Smallest wrap-around distance between frequencies on the circle."""
    w = np.sort(np.mod(np.asarray(omegas, dtype=np.float64).reshape(-1), 2 * np.pi))
    if w.size < 2:
        return 2 * math.pi
    gaps = np.diff(np.concatenate((w, [w[0] + 2 * np.pi])))
    return float(np.min(gaps))
