"""Sequential search for the coarse-estimator scale ``alpha``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cfe import fine_limit, spectral_log_ratio
from .channel import ChannelConfig, apply_channel
from .receiver import DEFAULT_SYMBOL_RATE, transmit
from .signals import DspFormat


class CalibrationError(RuntimeError):
    """No alpha keeps every estimate inside the fine-stage range."""


@dataclass(frozen=True)
class AlphaScenario:
    fmt: DspFormat = DspFormat.QPSK
    symbol_rate_Hz: float = DEFAULT_SYMBOL_RATE
    snr_db: float | None = 15.0
    rx_bandwidth_Hz: float | None = 28e9
    linewidth_Hz: float = 100e3
    slope_Hz_per_s: float = 1e12
    n_symbols: int = 2**16
    window: int = 1024
    alphas_Hz: tuple = tuple(np.arange(15, 26) * 1e9)
    shifts_Hz: tuple = tuple(np.arange(0, 11) * 1e9)
    selection_shift_Hz: float = 10e9
    seed: int = 0


@dataclass
class AlphaCalibration:
    alphas_Hz: np.ndarray
    shifts_Hz: np.ndarray
    minimum: np.ndarray  # (n_alpha, n_shift) Hz
    maximum: np.ndarray
    mean: np.ndarray
    limit_Hz: float
    admissible: list = field(default_factory=list)
    selected_Hz: float | None = None

    def rows(self) -> list[dict]:
        out = []
        for i, a in enumerate(self.alphas_Hz):
            for j, s in enumerate(self.shifts_Hz):
                out.append({"alpha_GHz": a / 1e9, "shift_GHz": s / 1e9,
                            "min_GHz": self.minimum[i, j] / 1e9,
                            "max_GHz": self.maximum[i, j] / 1e9,
                            "mean_GHz": self.mean[i, j] / 1e9,
                            "admissible": bool(a in self.admissible)})
        return out


def log_ratios(scenario: AlphaScenario, shift_Hz: float, seed: int | None = None) -> np.ndarray:
    """Per-window ``log10(P+/P-)`` for one simulated block at ``shift_Hz``."""
    fmt = DspFormat.parse(scenario.fmt)
    rng = np.random.default_rng(scenario.seed if seed is None else seed)
    _, frame = transmit(fmt, scenario.n_symbols, rng, scenario.symbol_rate_Hz)
    ch = ChannelConfig(shift_Hz, scenario.slope_Hz_per_s, scenario.linewidth_Hz,
                       scenario.snr_db, scenario.rx_bandwidth_Hz)
    return spectral_log_ratio(apply_channel(frame, ch, rng).samples, scenario.window)


def calibrate_alpha(scenario: AlphaScenario | None = None) -> AlphaCalibration:
    """Min, max and mean coarse estimates per ``alpha`` and shift, plus the pick.

    An ``alpha`` is admissible when every window estimate lies within
    ``Rs/(2M)`` of the applied shift at every shift; the selected one has the
    smallest mean error at ``selection_shift_Hz``. The estimate is linear in
    ``alpha``, so each shift is simulated once and rescaled.
    """
    sc = scenario or AlphaScenario()
    fmt = DspFormat.parse(sc.fmt)
    alphas = np.asarray(sc.alphas_Hz, dtype=float)
    shifts = np.asarray(sc.shifts_Hz, dtype=float)
    limit = fine_limit(sc.symbol_rate_Hz, fmt.fine_power)
    shape = (len(alphas), len(shifts))
    lo, hi, mean = np.empty(shape), np.empty(shape), np.empty(shape)
    ok = np.ones(len(alphas), bool)
    for j, s in enumerate(shifts):
        est = alphas[:, None] * log_ratios(sc, s, sc.seed + j)[None, :]
        lo[:, j], hi[:, j], mean[:, j] = est.min(1), est.max(1), est.mean(1)
        ok &= np.all(np.abs(est - s) < limit, axis=1)
    adm = [float(a) for a in alphas[ok]]
    if not adm:
        raise CalibrationError("no alpha keeps all estimates within the fine-stage range")
    j = int(np.argmin(np.abs(shifts - sc.selection_shift_Hz)))
    err = np.abs(mean[:, j] - shifts[j])
    err[~ok] = np.inf
    return AlphaCalibration(alphas, shifts, lo, hi, mean, limit, adm,
                            float(alphas[int(np.argmin(err))]))
