"""
Proximal maps for complex vectors under the magnitude-wise ℓ1 geometry.

Complex entries are thresholded on their modulus and keep their phase, so
the ℓ1 norm here is the group norm over (re, im) pairs.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from shift_denoise.global_data.exceptions import ConfigurationError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike
    from numpy.typing import NDArray


def soft_threshold(f: ArrayLike, theta: float) -> NDArray[np.complex128]:
    """Shrink every modulus by ``theta``, clipping at zero."""
    f = np.asarray(f, dtype=np.complex128)
    return np.maximum(np.abs(f) - theta, 0.0) * np.exp(1j * np.angle(f))


def _last_active(mask: NDArray[np.bool_]) -> int:
    # rounding can clear every entry when r or 1/γ is far below the largest modulus
    hits = np.nonzero(mask)[0]
    return int(hits[-1]) if hits.size else 0


def project_l1_ball(f: ArrayLike, r: float) -> NDArray[np.complex128]:
    """
    Euclidean projection of ``f`` onto {g : Σ|g_k| ≤ r}.

    The threshold level is found exactly from the sorted magnitudes rather
    than by searching for it.
    """
    if r < 0:
        msg = f"radius must be non-negative, got {r}"
        raise ConfigurationError(msg)
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    a = np.abs(f)
    if a.sum() <= r:
        return f.copy()
    if r == 0:
        return np.zeros_like(f)
    u = np.sort(a)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, u.size + 1)
    active = _last_active(u - (css - r) / k > 0)
    theta = (css[active] - r) / (active + 1)
    return soft_threshold(f, theta)


def prox_squared_l1(f: ArrayLike, gamma: float) -> NDArray[np.complex128]:
    """argmin_g ½‖g − f‖² + γ (Σ|g_k|)²."""
    if gamma < 0:
        msg = f"gamma must be non-negative, got {gamma}"
        raise ConfigurationError(msg)
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if gamma == 0:
        return f.copy()
    u = np.sort(np.abs(f))[::-1]
    if u[0] == 0:
        return np.zeros_like(f)
    k = np.arange(1, u.size + 1)
    # on the active set of size K every kept modulus drops by 2γ‖g‖_1
    thetas = 2 * gamma * np.cumsum(u) / (1 + 2 * gamma * k)
    active = _last_active(u > thetas)
    return soft_threshold(f, thetas[active])
