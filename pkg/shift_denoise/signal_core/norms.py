from __future__ import annotations

import numpy as np
from scipy import fft

from shift_denoise.global_data.enm import NormSpace
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal


def norm(
    x: Signal,
    domain: Domain,
    p: float = 2,
    space: NormSpace | str = NormSpace.TIME,
) -> float:
    """
    p-seminorm of ``x`` restricted to ``domain``.

    In Fourier space the norm is taken on the unitary DFT of the slice. The
    modulus of a DFT does not depend on where the slice starts, so the same
    rule covers D_n (bilateral) and {h, ..., h+m} (unilateral after Δ^{-h}).

    Args:
        x: the sequence.
        domain: index window of the slice.
        p: exponent, ``p >= 1`` or ``numpy.inf``.
        space: ``"time"`` or ``"fourier"``.

    Returns:
        float: the seminorm.
    """
    if not p >= 1:
        msg = f"Norm exponent must be >= 1, got {p}"
        raise ConfigurationError(msg)
    v = x.on(domain)
    if NormSpace(space) == NormSpace.FOURIER:
        v = fft.fft(v, norm="ortho")
    return float(np.linalg.norm(v, ord=p))


def inner(x: Signal, y: Signal, domain: Domain) -> complex:
    """``<x, y>`` on ``domain``, conjugate-linear in ``x``."""
    return complex(np.vdot(x.on(domain), y.on(domain)))
