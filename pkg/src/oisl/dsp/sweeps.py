"""SNR sweeps, penalty extraction and the bandwidth / shift penalty curves."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .channel import ChannelConfig
from .metrics import REFERENCE_BER, CurveError, snr_at_ber, theoretical_snr_db
from .receiver import ReceiverConfig, run_pipeline
from .signals import DspFormat

DEFAULT_OFFSETS_DB = tuple(np.arange(0.0, 3.01, 0.5))


@dataclass
class PenaltyCurve:
    fmt: DspFormat
    snr_db: np.ndarray
    ber: np.ndarray
    baseline_snr_db: float
    penalty_dB: float | None

    def rows(self) -> list[dict]:
        return [{"snr_db": float(s), "ber": float(b)} for s, b in zip(self.snr_db, self.ber)]


def _one(args) -> float:
    fmt, channel, rx, n_symbols, seed = args
    return run_pipeline(fmt, channel, rx, n_symbols, seed).ber


def _map(jobs, workers):
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_one, jobs))
    return [_one(j) for j in jobs]


def ber_curve(fmt, channel: ChannelConfig, rx: ReceiverConfig, snr_db: Sequence[float],
              n_symbols: int = 2**16, seed: int = 0, workers: int | None = 1) -> np.ndarray:
    """Counted BER at each SNR; every point reuses ``seed``."""
    fmt = DspFormat.parse(fmt)
    jobs = [(fmt, replace(channel, snr_db=float(s)), rx, n_symbols, seed) for s in snr_db]
    return np.asarray(_map(jobs, workers))


def measure_penalty(fmt, channel: ChannelConfig, rx: ReceiverConfig | None = None,
                    offsets_db: Sequence[float] = DEFAULT_OFFSETS_DB, n_symbols: int = 2**16,
                    seed: int = 0, reference_ber: float = REFERENCE_BER,
                    workers: int | None = 1, max_extend: int = 4) -> PenaltyCurve:
    """Penalty over theory at ``reference_ber``.

    SNRs are placed at ``offsets_db`` above the theoretical requirement; the
    grid is extended upward in 1 dB steps (at most ``max_extend`` times)
    until the curve crosses the reference.
    """
    fmt = DspFormat.parse(fmt)
    rx = rx or ReceiverConfig()
    base = theoretical_snr_db(fmt, reference_ber)
    snrs = list(base + np.asarray(offsets_db, dtype=float))
    bers = list(ber_curve(fmt, channel, rx, snrs, n_symbols, seed, workers))
    for _ in range(max_extend):
        if min(bers) <= reference_ber:
            break
        nxt = snrs[-1] + 1.0
        snrs.append(nxt)
        bers.extend(ber_curve(fmt, channel, rx, [nxt], n_symbols, seed, 1))
    try:
        pen = snr_at_ber(snrs, bers, reference_ber) - base
    except CurveError:
        pen = None
    return PenaltyCurve(fmt, np.asarray(snrs), np.asarray(bers), base, pen)


def penalty_vs(param: str, values: Sequence[float], fmt, channel: ChannelConfig,
               rx: ReceiverConfig | None = None, **kw) -> list[dict]:
    """Penalty with one ``ChannelConfig`` field swept (e.g. ``rx_bandwidth_Hz``)."""
    out = []
    for v in values:
        c = measure_penalty(fmt, replace(channel, **{param: float(v)}), rx, **kw)
        out.append({param: float(v), "penalty_dB": c.penalty_dB})
    return out
