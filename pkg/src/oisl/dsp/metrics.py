"""BER theory for the simulated formats and penalty extraction."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import erfc

from ..linkfeas.ber import ber_square_qam
from .signals import DspFormat

REFERENCE_BER = 4e-3


def theoretical_ber(fmt: DspFormat, snr_linear):
    """Coherent, non-differential Gray-coded BER at per-polarization ``Es/N0``."""
    fmt = DspFormat.parse(fmt)
    if fmt is DspFormat.BPSK:
        return 0.5 * erfc(np.sqrt(np.asarray(snr_linear, dtype=float)))
    return ber_square_qam(snr_linear, fmt.bits)


def theoretical_snr_db(fmt: DspFormat, target_ber: float = REFERENCE_BER) -> float:
    fmt = DspFormat.parse(fmt)
    g = lambda x: (math.log(max(float(theoretical_ber(fmt, 10 ** (x / 10))), 1e-300))
                   - math.log(target_ber))
    return brentq(g, -20.0, 40.0, xtol=1e-10)


class CurveError(ValueError):
    """BER curve does not cross the reference BER."""


def snr_at_ber(snr_db: Sequence[float], ber: Sequence[float],
               reference_ber: float = REFERENCE_BER) -> float:
    """SNR where the curve crosses ``reference_ber``, linear in ``log10(BER)``."""
    s = np.asarray(snr_db, dtype=float)
    b = np.asarray(ber, dtype=float)
    order = np.argsort(s)
    s, b = s[order], b[order]
    lb = np.log10(np.maximum(b, 1e-300))
    target = math.log10(reference_ber)
    for j in range(len(s) - 1):
        lo, hi = lb[j], lb[j + 1]
        if (lo - target) * (hi - target) <= 0 and lo != hi:
            return float(s[j] + (target - lo) * (s[j + 1] - s[j]) / (hi - lo))
    raise CurveError(f"curve does not cross BER {reference_ber:g} "
                     f"(range {b.min():.3g}..{b.max():.3g})")


def penalty_at_ber(snr_db: Sequence[float], ber: Sequence[float], baseline_snr_db: float,
                   reference_ber: float = REFERENCE_BER) -> float:
    """SNR penalty in dB of a measured curve over a baseline SNR at the reference BER."""
    return snr_at_ber(snr_db, ber, reference_ber) - baseline_snr_db
