"""
Carrier frequency estimation.

The coarse estimator reads the spectral imbalance of a window,
``f = alpha * log10(P+ / P-)``, where ``P+`` and ``P-`` are the powers in
the positive and negative frequency bins summed over both polarizations.
The fine estimator raises symbols to the power ``M`` to strip the
modulation and takes the FFT peak divided by ``M``; it is unambiguous only
for offsets below ``Rs / (2M)``.
"""

from __future__ import annotations

import math

import numpy as np

from .frame import ComplexFrame

DEFAULT_ALPHA_HZ = 17e9


class DegenerateWindowError(ValueError):
    """A window has no power on one side of the spectrum."""


def _windows(x: np.ndarray, window: int) -> np.ndarray:
    """``(pols, n_windows, window)`` view dropping the final partial window."""
    x = np.atleast_2d(x)
    nw = x.shape[1] // window
    if nw == 0:
        raise ValueError(f"need at least {window} samples, got {x.shape[1]}")
    return x[:, : nw * window].reshape(x.shape[0], nw, window)


def spectral_log_ratio(x: np.ndarray, window: int = 1024) -> np.ndarray:
    """``log10(P+ / P-)`` per window; the coarse estimate is ``alpha`` times this."""
    spec = np.abs(np.fft.fft(_windows(x, window), axis=2)) ** 2
    f = np.fft.fftfreq(window)
    p_pos = spec[:, :, f > 0].sum(axis=(0, 2))
    p_neg = spec[:, :, f < 0].sum(axis=(0, 2))
    if np.any(p_pos == 0) or np.any(p_neg == 0):
        bad = np.flatnonzero((p_pos == 0) | (p_neg == 0))
        raise DegenerateWindowError(f"window(s) {bad.tolist()} have an empty spectral half")
    return np.log10(p_pos / p_neg)


def coarse_cfe(frame: ComplexFrame, alpha_Hz: float = DEFAULT_ALPHA_HZ,
               window: int = 1024) -> np.ndarray:
    """Per-window coarse offset estimates in Hz."""
    return alpha_Hz * spectral_log_ratio(frame.samples, window)


def compensate_array(x: np.ndarray, f_est: np.ndarray, window: int,
                     sample_period: float) -> np.ndarray:
    """Remove per-window frequencies with a phase-continuous rotation.

    Samples past the last full window keep the last estimate.
    """
    x = np.atleast_2d(x)
    f_est = np.atleast_1d(np.asarray(f_est, dtype=float))
    n = x.shape[1]
    idx = np.minimum(np.arange(n) // window, len(f_est) - 1)
    phi = 2 * math.pi * sample_period * np.cumsum(f_est[idx])
    return x * np.exp(-1j * phi)[None, :]


def compensate(frame: ComplexFrame, f_est: np.ndarray, window: int = 1024) -> ComplexFrame:
    """Apply :func:`compensate_array` at the frame's sample rate."""
    return frame.with_samples(compensate_array(frame.samples, f_est, window,
                                               frame.sample_period))


def fine_cfe_mth_power(symbols: np.ndarray, M: int, symbol_rate_Hz: float,
                       window: int = 512) -> np.ndarray:
    """Per-window offset estimates from the peak of ``|FFT(y**M)|``.

    Spectra of both polarizations are added before the peak search.
    Offsets beyond ``symbol_rate_Hz / (2M)`` alias.
    """
    spec = np.abs(np.fft.fft(_windows(symbols, window) ** M, axis=2)) ** 2
    spec = spec.sum(axis=0)
    f = np.fft.fftfreq(window, 1 / symbol_rate_Hz)
    return f[np.argmax(spec, axis=1)] / M


def fine_limit(symbol_rate_Hz: float, M: int) -> float:
    """Largest offset the Mth-power estimator resolves without aliasing."""
    return symbol_rate_Hz / (2 * M)
