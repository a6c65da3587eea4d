"""Blind phase search carrier recovery."""

from __future__ import annotations

import numpy as np
from scipy.ndimage import uniform_filter1d

from .signals import DspFormat, decide


def bps_phase(y: np.ndarray, fmt: DspFormat, test_phases: int = 40,
              window: int = 30) -> np.ndarray:
    """Unwrapped carrier phase estimate per symbol for a 1-D symbol stream.

    Test phases cover one symmetry period, ``[0, pi/2)`` or ``[0, pi)`` for
    BPSK. Squared decision distances are summed over a centered window of
    ``window`` symbols and the best phase is unwrapped with the symmetry
    period so the trajectory stays continuous.
    """
    fmt = DspFormat.parse(fmt)
    period = fmt.symmetry
    phases = np.arange(test_phases) * (period / test_phases)
    rot = y[:, None] * np.exp(-1j * phases)[None, :]
    dist = np.abs(rot - decide(rot, fmt)) ** 2
    dist = uniform_filter1d(dist, size=window, axis=0, mode="nearest")
    best = phases[np.argmin(dist, axis=1)]
    scale = 2 * np.pi / period
    return np.unwrap(best * scale) / scale


def bps(symbols: np.ndarray, fmt: DspFormat, test_phases: int = 40,
        window: int = 30) -> tuple[np.ndarray, np.ndarray]:
    """Phase-recovered symbols and the phase trajectory, per polarization."""
    y = np.atleast_2d(symbols)
    phi = np.stack([bps_phase(row, fmt, test_phases, window) for row in y])
    return y * np.exp(-1j * phi), phi
