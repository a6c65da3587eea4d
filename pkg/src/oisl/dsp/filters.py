"""Digital low-pass filter for the noise-limiting receiver stage."""

from __future__ import annotations

import numpy as np
from scipy.signal import firwin, freqz, lfilter

from .frame import ComplexFrame


def lowpass_taps(taps: int, cutoff_Hz: float, sample_rate_Hz: float) -> np.ndarray:
    """Linear-phase windowed sinc (rectangular window), unit DC gain."""
    if not 0 < cutoff_Hz < sample_rate_Hz / 2:
        raise ValueError("cutoff must lie inside (0, fs/2)")
    return firwin(taps, cutoff_Hz, window="boxcar", fs=sample_rate_Hz, scale=True)


def lowpass_response(h: np.ndarray, f_Hz: np.ndarray, sample_rate_Hz: float) -> np.ndarray:
    _, resp = freqz(h, worN=np.atleast_1d(f_Hz), fs=sample_rate_Hz)
    return resp


def lowpass_fir(frame: ComplexFrame, taps: int = 40, bandwidth_Hz: float = 19.4e9) -> ComplexFrame:
    """Filter with one-sided cutoff ``bandwidth_Hz``.

    The integer part of the group delay ``(taps-1)/2`` is removed so the
    output stays aligned with the input; an even tap count leaves half a
    sample for the fractionally spaced equalizer.
    """
    h = lowpass_taps(taps, bandwidth_Hz, frame.sample_rate_Hz)
    d = (taps - 1) // 2
    x = np.concatenate([frame.samples, np.zeros((2, d), complex)], axis=1)
    y = lfilter(h, 1.0, x, axis=1)[:, d:]
    return frame.with_samples(y)
