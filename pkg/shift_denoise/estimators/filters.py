"""Finite filters with a declared support class."""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from typing import TYPE_CHECKING
from typing import Any

import numpy as np

from shift_denoise.global_data.enm import FilterClass
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.norms import norm
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal

if TYPE_CHECKING:
    from numpy.typing import ArrayLike
    from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class Filter:
    """
    Coefficients of a bilateral filter on D_m or a shifted filter on {h, ..., h+m}.

    ``metadata`` carries solver provenance (objective, certificate, iterations,
    converged) for fitted filters and construction notes for oracles.
    """

    filter_class: FilterClass
    m: int
    coefficients: NDArray[np.complex128]
    h: int = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        cls = FilterClass(self.filter_class)
        if self.m < 0:
            msg = f"Filter bandwidth must be non-negative, got {self.m}"
            raise DataError(msg)
        if cls == FilterClass.BILATERAL and self.h != 0:
            msg = "A bilateral filter has no shift"
            raise DataError(msg)
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        expected = self.support_for(cls, self.m, self.h).length
        if coefficients.size != expected:
            msg = f"A {cls} filter with m={self.m} needs {expected} coefficients, got {coefficients.size}"
            raise DataError(msg)
        coefficients.flags.writeable = False
        object.__setattr__(self, "filter_class", cls)
        object.__setattr__(self, "coefficients", coefficients)

    @staticmethod
    def support_for(filter_class: FilterClass, m: int, h: int = 0) -> Domain:
        if filter_class == FilterClass.BILATERAL:
            return Domain.symmetric(m)
        return Domain.one_sided(m, h)

    @classmethod
    def bilateral(cls, coefficients: ArrayLike, m: int, **metadata) -> Filter:
        return cls(FilterClass.BILATERAL, m, np.asarray(coefficients), 0, metadata)

    @classmethod
    def shifted(cls, coefficients: ArrayLike, m: int, h: int = 0, **metadata) -> Filter:
        return cls(FilterClass.SHIFTED, m, np.asarray(coefficients), h, metadata)

    @classmethod
    def from_signal(cls, phi: Signal, filter_class: FilterClass, m: int, h: int = 0, **metadata) -> Filter:
        """Read ``phi`` on the support of the requested class; taps outside are dropped."""
        support = cls.support_for(FilterClass(filter_class), m, h)
        return cls(filter_class, m, phi.on(support), h, metadata)

    @classmethod
    def identity(cls, m: int = 0) -> Filter:
        return cls.from_signal(Signal.delta(), FilterClass.BILATERAL, m)

    @property
    def support(self) -> Domain:
        return self.support_for(self.filter_class, self.m, self.h)

    @property
    def is_bilateral(self) -> bool:
        return self.filter_class == FilterClass.BILATERAL

    @property
    def converged(self) -> bool:
        return bool(self.metadata.get("converged", True))

    def as_signal(self) -> Signal:
        return Signal(self.support.start, self.coefficients)

    def fourier_l1(self) -> float:
        """‖φ‖^F_{m,1} for bilateral filters, ‖Δ^{-h}[φ]‖^{F+}_{m,1} for shifted ones."""
        return norm(self.as_signal(), self.support, 1, "fourier")

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def with_metadata(self, **metadata) -> Filter:
        return replace(self, metadata={**self.metadata, **metadata})

    def __repr__(self) -> str:
        return f"Filter({self.filter_class}, m={self.m}, h={self.h})"
