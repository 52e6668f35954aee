from __future__ import annotations

import logging
from dataclasses import replace

import numpy as np

from shift_denoise.estimators.config import EstimatorConfig
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import fit
from shift_denoise.global_data.enm import EstimatorMode
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal
from shift_denoise.signal_core.sequences import shift

logger = logging.getLogger(__name__)


def block_centres(first: int, last: int, m: int, n: int) -> list[int]:
    """
    Centres of the fitting blocks for observations on [first, last].

    Each block reads c + D_{m+n}; consecutive centres are 2(n - m//2) + 1
    apart so the interiors c + D_{n - m//2} tile the line, and the last
    admissible centre is always included.
    """
    lo = first + m + n
    hi = last - m - n
    if lo > hi:
        return []
    stride = 2 * max(n - m // 2, 0) + 1
    centres = list(range(lo, hi + 1, stride))
    if centres[-1] != hi:
        centres.append(hi)
    return centres


def blockwise_denoise(
    y: Signal,
    cfg: EstimatorConfig | None = None,
    *,
    m: int | None = None,
    n: int | None = None,
    mode: EstimatorMode | str = EstimatorMode.CONSTRAINED,
    **settings,
) -> Signal:
    """
    Denoise every index of [a+m, b-m], where y is observed on [a, b].

    One bilateral filter is fitted per block and applied to the indices
    nearest to its centre; indices past the outer centres use the outermost
    filters. When y is shorter than a full block a single fit with a reduced
    estimation radius is used.

    The geometry comes either from ``cfg`` or from ``m``, ``n`` and ``mode``
    (with ``rho_bar``, ``lam``, ``sigma`` or ``solver`` passed through to
    :class:`EstimatorConfig`), e.g. ``blockwise_denoise(y, m=4, n=8, rho_bar=2.0)``.
    """
    if cfg is None:
        if m is None or n is None:
            msg = "blockwise denoising needs a configuration or both m and n"
            raise ConfigurationError(msg)
        cfg = EstimatorConfig(m=m, n=n, mode=mode, **settings)
    elif m is not None or n is not None or settings:
        msg = "pass either a configuration or m, n and mode, not both"
        raise ConfigurationError(msg)
    if cfg.is_predictive:
        msg = "blockwise denoising uses bilateral filters"
        raise ConfigurationError(msg)
    m = cfg.m
    first, last = y.start, y.stop
    target = Domain.interval(first + m, last - m) if last - first >= 2 * m else None
    if target is None:
        msg = f"blockwise denoising needs at least {2 * m + 1} observations, got {len(y)}"
        raise DataError(msg)

    centres = block_centres(first, last, m, cfg.n)
    if not centres:
        n_local = (last - first) // 2 - m
        centres = [first + m + n_local]
        cfg = replace(cfg, n=n_local)
        logger.debug("signal shorter than one block, single fit with n=%d", n_local)

    filters = []
    for c in centres:
        local = shift(y, -c)
        filters.append(fit(local, cfg))

    indices = target.indices
    nearest = np.argmin(np.abs(indices[:, None] - np.asarray(centres)[None, :]), axis=1)
    values = np.empty(len(target), dtype=np.complex128)
    for k, phi in enumerate(filters):
        chosen = np.flatnonzero(nearest == k)
        if chosen.size == 0:
            continue
        part = Domain(int(indices[chosen[0]]), chosen.size)
        values[chosen] = estimate(phi, y, part).values
    logger.debug("blockwise denoising used %d blocks over %s", len(filters), target)
    return Signal(target.start, values)
