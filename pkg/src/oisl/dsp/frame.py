"""Dual-polarization complex baseband frame."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class ComplexFrame:
    """Samples of both polarizations, shape ``(2, n)``."""

    samples: np.ndarray
    sample_rate_Hz: float
    samples_per_symbol: int = 2

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2 or s.shape[0] != 2:
            raise ValueError(f"expected shape (2, n), got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("frame contains non-finite samples")
        object.__setattr__(self, "samples", s.astype(complex, copy=False))

    def __len__(self) -> int:
        return self.samples.shape[1]

    @property
    def symbol_rate_Hz(self) -> float:
        return self.sample_rate_Hz / self.samples_per_symbol

    @property
    def sample_period(self) -> float:
        return 1.0 / self.sample_rate_Hz

    def power(self) -> np.ndarray:
        """Mean power per polarization."""
        return np.mean(np.abs(self.samples) ** 2, axis=1)

    def with_samples(self, samples: np.ndarray) -> "ComplexFrame":
        return replace(self, samples=samples)
