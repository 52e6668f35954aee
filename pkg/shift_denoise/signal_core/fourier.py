"""
Unitary bilateral and unilateral DFTs.

Sign convention: forward transforms use the negative exponent,
``F_n[x]_k = (2n+1)^{-1/2} sum_{tau in D_n} exp(-2 pi i k tau / (2n+1)) x_tau``
with bins ordered ``k = -n, ..., n``. The unilateral transform runs over
``D_n^+ = {0, ..., n}`` with normalization ``(n+1)^{-1/2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import fft

from shift_denoise.global_data.enm import Side
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from numpy.typing import NDArray

DFT_SIGN = -1


@dataclass(frozen=True, eq=False)
class Spectrum:
    coefficients: NDArray[np.complex128]
    side: Side = Side.BILATERAL

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        size = coefficients.size
        if size == 0 or (self.side == Side.BILATERAL and size % 2 == 0):
            msg = f"A {self.side} spectrum cannot have {size} bins"
            raise DataError(msg)
        coefficients.flags.writeable = False
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def n(self) -> int:
        size = self.coefficients.size
        return (size - 1) // 2 if self.side == Side.BILATERAL else size - 1

    @property
    def bins(self) -> NDArray[np.int64]:
        if self.side == Side.BILATERAL:
            return Domain.symmetric(self.n).indices
        return Domain.one_sided(self.n).indices


def centered_dft(v: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Unitary DFT of a vector indexed by D_n (odd length, centre at the middle)."""
    return fft.fftshift(fft.fft(fft.ifftshift(v), norm="ortho"))


def centered_idft(f: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return fft.fftshift(fft.ifft(fft.ifftshift(f), norm="ortho"))


def dft(x: Signal, n: int) -> Spectrum:
    """Bilateral DFT F_n of the slice of ``x`` on D_n."""
    if n < 0:
        msg = f"DFT size needs n >= 0, got {n}"
        raise DataError(msg)
    return Spectrum(centered_dft(x.window(-n, n)), Side.BILATERAL)


def idft(spectrum: Spectrum) -> Signal:
    if spectrum.side != Side.BILATERAL:
        return idft_unilateral(spectrum)
    n = spectrum.n
    return Signal(-n, centered_idft(spectrum.coefficients))


def dft_unilateral(x: Signal, n: int) -> Spectrum:
    """Unilateral DFT F_n^+ of the slice of ``x`` on {0, ..., n}."""
    if n < 0:
        msg = f"DFT size needs n >= 0, got {n}"
        raise DataError(msg)
    return Spectrum(fft.fft(x.window(0, n), norm="ortho"), Side.UNILATERAL)


def idft_unilateral(spectrum: Spectrum) -> Signal:
    return Signal(0, fft.ifft(spectrum.coefficients, norm="ortho"))
