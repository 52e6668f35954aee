"""
Matrix-free convolution operators.

* :class:`ToeplitzOp` -- T(y): filter coefficients to the convolution slice.
* :class:`BandedOp` -- M(phi): observations on D_{m+n} to [phi * y] on D_n.
* :class:`CirculantOp` -- C(phi): circular convolution on D_{m+n}, diagonal
  in the Fourier basis.

Each operator exposes ``apply``/``adjoint`` and an ``as_linear_operator`` view
for scipy-based consumers. Dense matrices are never formed here.
"""

from __future__ import annotations

import logging
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
from scipy import signal as sps
from scipy.sparse.linalg import LinearOperator

from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.fourier import centered_dft
from shift_denoise.signal_core.fourier import centered_idft
from shift_denoise.signal_core.norms import norm
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

POWER_ITERS = 50
POWER_TOL = 1e-8


def _check_length(v: NDArray, expected: int, what: str) -> NDArray[np.complex128]:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.size != expected:
        msg = f"{what}: expected a vector of length {expected}, got {v.size}"
        raise DataError(msg)
    return v


def power_iteration(
    op: LinearOperator,
    iters: int = POWER_ITERS,
    tol: float = POWER_TOL,
    seed: int = 0,
) -> tuple[float, bool]:
    """
    Estimate the largest singular value of ``op`` by power iteration on AᴴA.

    Returns:
        tuple: ``(estimate, converged)``; converged means two successive
        estimates differed by less than ``tol`` relative.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(op.shape[1]) + 1j * rng.standard_normal(op.shape[1])
    x /= np.linalg.norm(x)
    estimate = 0.0
    for k in range(max(iters, 1)):
        z = op.rmatvec(op.matvec(x))
        size = float(np.linalg.norm(z))
        if size == 0.0:
            return 0.0, True
        previous, estimate = estimate, np.sqrt(size)
        x = z / size
        if k > 0 and abs(estimate - previous) <= tol * estimate:
            return float(estimate), True
    return float(estimate), False


class ToeplitzOp:
    """
    T(y) restricted to a filter domain and an output domain.

    ``apply(phi)[t] = sum_{tau in filter_domain} phi_tau y_{t - tau}`` for t in
    the output domain. The bilateral form uses D_m and D_n; the predictive
    form uses {h, ..., h+m} and {-n, ..., 0}.
    """

    def __init__(self, y: Signal, filter_domain: Domain, out_domain: Domain):
        self.filter_domain = filter_domain
        self.out_domain = out_domain
        self.data_domain = Domain.interval(
            out_domain.start - filter_domain.stop,
            out_domain.stop - filter_domain.start,
        )
        y.require(self.data_domain, "observations")
        self._u = y.on(self.data_domain)
        self._u.flags.writeable = False

    @classmethod
    def bilateral(cls, y: Signal, m: int, n: int) -> ToeplitzOp:
        return cls(y, Domain.symmetric(m), Domain.symmetric(n))

    @classmethod
    def predictive(cls, y: Signal, m: int, n: int, h: int) -> ToeplitzOp:
        return cls(y, Domain.one_sided(m, h), Domain.past(n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.out_domain.length, self.filter_domain.length)

    def apply(self, phi: NDArray) -> NDArray[np.complex128]:
        phi = _check_length(phi, self.filter_domain.length, "T(y) apply")
        return sps.fftconvolve(self._u, phi, mode="valid")

    def adjoint(self, r: NDArray) -> NDArray[np.complex128]:
        r = _check_length(r, self.out_domain.length, "T(y) adjoint")
        return np.conj(sps.correlate(self._u, r, mode="valid"))[::-1]

    def frobenius_norm(self) -> float:
        """sqrt(sum over tau of ||Δ^τ y||² on the output domain)."""
        energy = np.concatenate(([0.0], np.cumsum(np.abs(self._u) ** 2)))
        lo = self.out_domain.length
        windows = energy[lo:] - energy[:-lo]
        return float(np.sqrt(np.sum(windows)))

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(
            self.shape,
            matvec=self.apply,
            rmatvec=self.adjoint,
            dtype=np.complex128,
        )

    def operator_norm(self, iters: int = POWER_ITERS) -> float:
        """Largest singular value; the Frobenius bound when power iteration stalls."""
        estimate, converged = power_iteration(self.as_linear_operator(), iters)
        if converged:
            return estimate
        logger.debug("power iteration did not settle in %d steps, using Frobenius bound", iters)
        return self.frobenius_norm()


class BandedOp:
    """M(phi): the (2n+1) x (2m+2n+1) map y_{-m-n..m+n} -> [phi * y]_{-n..n}."""

    def __init__(self, phi: Signal, m: int, n: int):
        self.m = m
        self.n = n
        self._phi = phi.window(-m, m)
        self._phi.flags.writeable = False

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.n + 1, 2 * self.m + 2 * self.n + 1)

    def apply(self, y: NDArray) -> NDArray[np.complex128]:
        y = _check_length(y, self.shape[1], "M(phi) apply")
        return sps.fftconvolve(y, self._phi, mode="valid")

    def adjoint(self, r: NDArray) -> NDArray[np.complex128]:
        r = _check_length(r, self.shape[0], "M(phi) adjoint")
        return sps.convolve(r, np.conj(self._phi[::-1]), mode="full")

    def frobenius_norm(self) -> float:
        return float(np.sqrt(self.shape[0]) * np.linalg.norm(self._phi))

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(self.shape, matvec=self.apply, rmatvec=self.adjoint, dtype=np.complex128)


class CirculantOp:
    """C(phi): circular convolution with the zero-padded filter on D_{m+n}."""

    def __init__(self, phi: Signal, m: int, n: int):
        self.m = m
        self.n = n
        self.size = 2 * (m + n) + 1
        self._padded = phi.restrict(Domain.symmetric(m)).window(-m - n, m + n)

    @cached_property
    def eigenvalues(self) -> NDArray[np.complex128]:
        return np.sqrt(self.size) * centered_dft(self._padded)

    def apply(self, v: NDArray) -> NDArray[np.complex128]:
        v = _check_length(v, self.size, "C(phi) apply")
        return centered_idft(self.eigenvalues * centered_dft(v))

    def adjoint(self, v: NDArray) -> NDArray[np.complex128]:
        v = _check_length(v, self.size, "C(phi) adjoint")
        return centered_idft(np.conj(self.eigenvalues) * centered_dft(v))

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(
            (self.size, self.size),
            matvec=self.apply,
            rmatvec=self.adjoint,
            dtype=np.complex128,
        )


def toeplitz_apply(op: ToeplitzOp, phi: NDArray) -> NDArray[np.complex128]:
    return op.apply(phi)


def toeplitz_adjoint_apply(op: ToeplitzOp, r: NDArray) -> NDArray[np.complex128]:
    return op.adjoint(r)


def operator_norm(op: ToeplitzOp, iters: int = POWER_ITERS) -> float:
    return op.operator_norm(iters)


def circulant_eigenvalues(phi: Signal, m: int, n: int) -> NDArray[np.complex128]:
    """sqrt(2m+2n+1) * F_{m+n}[phi zero-padded to D_{m+n}]."""
    return CirculantOp(phi, m, n).eigenvalues


def zero_pad_fourier_l1(u: Signal, m: int, n: int) -> float:
    """‖u‖^F_{m+n,1} for ``u`` truncated to D_m and zero-padded to D_{m+n}."""
    return norm(u.restrict(Domain.symmetric(m)), Domain.symmetric(m + n), 1, "fourier")


def zero_pad_bound(u: Signal, m: int, n: int) -> float:
    """Right-hand side ‖u‖^F_{m,1} sqrt(1 + κ²_{m,n}) (log(m+n+1) + 3)."""
    kappa_sq = (2 * n + 1) / (2 * m + 1)
    base = norm(u, Domain.symmetric(m), 1, "fourier")
    return base * np.sqrt(1 + kappa_sq) * (np.log(m + n + 1) + 3)
