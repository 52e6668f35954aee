"""
Finitely supported two-sided complex sequences and the shift/convolution algebra.

A :class:`Signal` stores a dense complex array together with the integer index
of its first entry. Reads outside the stored window return zero, so every
signal behaves like an element of the space of all two-sided sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import signal as sps

from shift_denoise.global_data.exceptions import DataError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike
    from numpy.typing import NDArray

# Output length above which convolution switches from the direct sum to FFT.
DIRECT_CONVOLUTION_MAX = 64


@dataclass(frozen=True)
class Domain:
    """A contiguous index set ``{start, ..., start + length - 1}``."""

    start: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            msg = f"Domain must be non-empty, got length {self.length}"
            raise DataError(msg)

    @classmethod
    def symmetric(cls, n: int) -> Domain:
        """D_n = {-n, ..., n}."""
        if n < 0:
            msg = f"Symmetric domain needs n >= 0, got {n}"
            raise DataError(msg)
        return cls(-n, 2 * n + 1)

    @classmethod
    def one_sided(cls, m: int, h: int = 0) -> Domain:
        """D_m^h = {h, ..., h + m}; ``h = 0`` gives D_m^+."""
        if m < 0:
            msg = f"One-sided domain needs m >= 0, got {m}"
            raise DataError(msg)
        return cls(h, m + 1)

    @classmethod
    def past(cls, n: int) -> Domain:
        """{-n, ..., 0}, the estimation window of predictive problems."""
        return cls.one_sided(n, -n)

    @classmethod
    def interval(cls, first: int, last: int) -> Domain:
        return cls(first, last - first + 1)

    @property
    def stop(self) -> int:
        """Last index (inclusive)."""
        return self.start + self.length - 1

    @property
    def indices(self) -> NDArray[np.int64]:
        return np.arange(self.start, self.start + self.length, dtype=np.int64)

    def dilate(self, lo: int, hi: int) -> Domain:
        """Minkowski sum with the interval [lo, hi]."""
        return Domain.interval(self.start + lo, self.stop + hi)

    def contains(self, other: Domain) -> bool:
        return self.start <= other.start and other.stop <= self.stop

    def __contains__(self, t: object) -> bool:
        return isinstance(t, (int, np.integer)) and self.start <= t <= self.stop

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return f"[{self.start}, {self.stop}]"


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex sequence with finite support starting at ``start``."""

    start: int
    values: NDArray[np.complex128]

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.size == 0:
            msg = "A signal needs at least one stored value"
            raise DataError(msg)
        values.flags.writeable = False
        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values: ArrayLike, start: int = 0) -> Signal:
        return cls(start, np.asarray(values))

    @classmethod
    def zeros(cls, domain: Domain) -> Signal:
        return cls(domain.start, np.zeros(domain.length, dtype=np.complex128))

    @classmethod
    def delta(cls, t: int = 0) -> Signal:
        """Unit mass at index ``t``."""
        return cls(t, np.ones(1, dtype=np.complex128))

    @classmethod
    def from_function(cls, func, domain: Domain) -> Signal:
        """Sample ``func(t)`` (vectorized over an index array) on ``domain``."""
        return cls(domain.start, func(domain.indices.astype(np.float64)))

    @property
    def domain(self) -> Domain:
        return Domain(self.start, self.values.size)

    @property
    def stop(self) -> int:
        return self.start + self.values.size - 1

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, t: int) -> complex:
        k = t - self.start
        if 0 <= k < self.values.size:
            return complex(self.values[k])
        return 0j

    def covers(self, domain: Domain) -> bool:
        return self.domain.contains(domain)

    def require(self, domain: Domain, what: str = "signal") -> None:
        """Raise :class:`DataError` unless the stored window contains ``domain``."""
        if not self.covers(domain):
            msg = (
                f"{what} must be observed on {domain}, "
                f"but its support is {self.domain}"
            )
            raise DataError(msg)

    def window(self, first: int, last: int) -> NDArray[np.complex128]:
        """Values on ``first..last`` as a fresh array, zero off-support."""
        out = np.zeros(max(last - first + 1, 0), dtype=np.complex128)
        lo = max(first, self.start)
        hi = min(last, self.stop)
        if lo <= hi:
            out[lo - first : hi - first + 1] = self.values[lo - self.start : hi - self.start + 1]
        return out

    def on(self, domain: Domain) -> NDArray[np.complex128]:
        return self.window(domain.start, domain.stop)

    def restrict(self, domain: Domain) -> Signal:
        return Signal(domain.start, self.on(domain))

    def scaled(self, c: complex) -> Signal:
        return Signal(self.start, c * self.values)

    def _combine(self, other: Signal, sign: float) -> Signal:
        first = min(self.start, other.start)
        last = max(self.stop, other.stop)
        return Signal(first, self.window(first, last) + sign * other.window(first, last))

    def __add__(self, other: Signal) -> Signal:
        return self._combine(other, 1.0)

    def __sub__(self, other: Signal) -> Signal:
        return self._combine(other, -1.0)

    def __neg__(self) -> Signal:
        return self.scaled(-1.0)

    def __repr__(self) -> str:
        return f"Signal(start={self.start}, len={self.values.size})"


def shift(x: Signal, tau: int) -> Signal:
    """Apply Δ^τ: the result reads ``x[t - tau]`` at index ``t``."""
    return Signal(x.start + tau, x.values)


def reversed_signal(x: Signal) -> Signal:
    """Time reversal, the result reads ``x[-t]`` at index ``t``."""
    return Signal(-x.stop, x.values[::-1])


def restrict(x: Signal, domain: Domain) -> Signal:
    return x.restrict(domain)


def convolve(phi: Signal, psi: Signal) -> Signal:
    """Exact discrete convolution ``[phi * psi]_t = sum_tau phi_tau psi_{t - tau}``."""
    out_len = phi.values.size + psi.values.size - 1
    if out_len > DIRECT_CONVOLUTION_MAX:
        values = sps.fftconvolve(phi.values, psi.values, mode="full")
    else:
        values = np.convolve(phi.values, psi.values, mode="full")
    return Signal(phi.start + psi.start, values)


def bandwidth(phi: Signal, tol: float = 0.0) -> int:
    """Smallest m with the nonzero taps of ``phi`` inside D_m."""
    nz = np.flatnonzero(np.abs(phi.values) > tol)
    if nz.size == 0:
        return 0
    first = phi.start + int(nz[0])
    last = phi.start + int(nz[-1])
    return max(abs(first), abs(last))
