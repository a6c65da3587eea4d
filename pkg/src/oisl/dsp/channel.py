"""Channel impairments: Doppler, laser phase noise, AWGN and receiver bandwidth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frame import ComplexFrame


@dataclass(frozen=True)
class ChannelConfig:
    """Impairments applied between transmitter and receiver.

    ``linewidth_Hz`` is per laser; transmitter and receiver lasers add up.
    ``rx_bandwidth_Hz`` is the one-sided cutoff of the super-Gaussian
    front end (``None`` leaves the band unlimited) and ``snr_db`` the
    per-polarization SNR referenced to the symbol rate (``None`` is noiseless).
    """

    delta_f0_Hz: float = 0.0
    slope_Hz_per_s: float = 0.0
    linewidth_Hz: float = 0.0
    snr_db: float | None = None
    rx_bandwidth_Hz: float | None = None
    rx_filter_order: int = 10

    def __post_init__(self):
        if self.linewidth_Hz < 0:
            raise ValueError("linewidth must be >= 0")
        if self.rx_bandwidth_Hz is not None and self.rx_bandwidth_Hz <= 0:
            raise ValueError("receiver bandwidth must be positive")


def apply_doppler(frame: ComplexFrame, delta_f0_Hz: float,
                  slope_Hz_per_s: float = 0.0) -> ComplexFrame:
    """Rotate by the integrated instantaneous frequency ``f0 + slope * n * Ts``."""
    if delta_f0_Hz == 0 and slope_Hz_per_s == 0:
        return frame
    ts = frame.sample_period
    n = np.arange(len(frame))
    inst = delta_f0_Hz + slope_Hz_per_s * n * ts
    phi = 2 * math.pi * ts * np.cumsum(inst)
    return frame.with_samples(frame.samples * np.exp(1j * phi)[None, :])


def phase_noise_walk(n: int, linewidth_Hz: float, sample_period: float,
                     rng: np.random.Generator) -> np.ndarray:
    """Wiener phase with increment variance ``2 pi * linewidth * Ts``."""
    if linewidth_Hz == 0:
        return np.zeros(n)
    steps = rng.normal(0.0, math.sqrt(2 * math.pi * linewidth_Hz * sample_period), n)
    return np.cumsum(steps)


def apply_phase_noise(frame: ComplexFrame, linewidth_Hz: float,
                      seed: int | np.random.Generator | None = None) -> ComplexFrame:
    """Common phase walk on both polarizations; ``linewidth_Hz`` is the combined value."""
    if linewidth_Hz < 0:
        raise ValueError("linewidth must be >= 0")
    if linewidth_Hz == 0:
        return frame
    rng = np.random.default_rng(seed)
    phi = phase_noise_walk(len(frame), linewidth_Hz, frame.sample_period, rng)
    return frame.with_samples(frame.samples * np.exp(1j * phi)[None, :])


def add_awgn(frame: ComplexFrame, snr_db: float | None,
             seed: int | np.random.Generator | None = None,
             signal_power: float = 1.0) -> ComplexFrame:
    """White Gaussian noise for a per-polarization SNR ``Es/N0``.

    With ``signal_power`` per sample, ``N0 = signal_power / (Rs * SNR)`` and
    the per-sample variance is ``N0 * fs``.
    """
    if snr_db is None or math.isinf(snr_db):
        return frame
    rng = np.random.default_rng(seed)
    var = signal_power * frame.samples_per_symbol / 10 ** (snr_db / 10)
    noise = rng.normal(0.0, math.sqrt(var / 2), (2, 2, len(frame)))
    return frame.with_samples(frame.samples + noise[0] + 1j * noise[1])


def super_gaussian_response(f: np.ndarray, bandwidth_Hz: float, order: int = 10) -> np.ndarray:
    """``exp(-(f/B)**(2 order) / 2)``: -4.34 dB at ``|f| = B``."""
    return np.exp(-0.5 * np.abs(f / bandwidth_Hz) ** (2 * order))


def bandlimit(frame: ComplexFrame, bandwidth_Hz: float | None, order: int = 10) -> ComplexFrame:
    """Zero-phase super-Gaussian filter with one-sided cutoff ``bandwidth_Hz``."""
    if bandwidth_Hz is None:
        return frame
    if bandwidth_Hz <= 0:
        raise ValueError("bandwidth must be positive")
    f = np.fft.fftfreq(len(frame), frame.sample_period)
    h = super_gaussian_response(f, bandwidth_Hz, order)
    return frame.with_samples(np.fft.ifft(np.fft.fft(frame.samples, axis=1) * h, axis=1))


def apply_channel(frame: ComplexFrame, cfg: ChannelConfig,
                  rng: np.random.Generator) -> ComplexFrame:
    """Doppler, phase noise, noise, then the receiver front-end filter."""
    out = apply_doppler(frame, cfg.delta_f0_Hz, cfg.slope_Hz_per_s)
    out = apply_phase_noise(out, 2 * cfg.linewidth_Hz, rng)
    out = add_awgn(out, cfg.snr_db, rng)
    return bandlimit(out, cfg.rx_bandwidth_Hz, cfg.rx_filter_order)
