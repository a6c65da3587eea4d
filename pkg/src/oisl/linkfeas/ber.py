"""Analytic pre-FEC BER of the coherent formats and their inverses."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import erfc

#: Bracket for SNR root searches (linear SNR).
SNR_BRACKET = (1e-4, 1e8)


class Format(enum.Enum):
    QPSK = "QPSK"
    STAR8QAM = "8-QAM"
    SQUARE16QAM = "16-QAM"

    @property
    def bits(self) -> int:
        return {Format.QPSK: 2, Format.STAR8QAM: 3, Format.SQUARE16QAM: 4}[self]

    @property
    def square(self) -> bool:
        return self is not Format.STAR8QAM


@dataclass(frozen=True)
class ModulationScheme:
    label: str
    format: Format
    symbol_rate: float  # Baud

    @property
    def bits_per_symbol(self) -> int:
        return self.format.bits

    @property
    def order(self) -> int:
        return 2 ** self.format.bits


#: Data-rate setups and their symbol rates.
SCHEMES = (
    ModulationScheme("100G-QPSK", Format.QPSK, 28e9),
    ModulationScheme("200G-QPSK", Format.QPSK, 60e9),
    ModulationScheme("300G-8QAM", Format.STAR8QAM, 60e9),
    ModulationScheme("400G-16QAM", Format.SQUARE16QAM, 60e9),
    ModulationScheme("800G-16QAM", Format.SQUARE16QAM, 120e9),
)


def scheme(label: str) -> ModulationScheme:
    for s in SCHEMES:
        if s.label.lower() == label.lower():
            return s
    raise KeyError(f"unknown scheme {label!r}; choose from {[s.label for s in SCHEMES]}")


def qfunc(x):
    return 0.5 * erfc(np.asarray(x) / math.sqrt(2))


def ber_square_qam(snr, bits: int):
    """BER of Gray-mapped square M-QAM (``M = 2**bits``) at per-polarization SNR.

    Evaluated as ``(1/b) * 2 (1 - 1/sqrt(M)) erfc(sqrt(3 SNR / (2 (M-1))))``.
    """
    if bits % 2:
        raise ValueError("square QAM needs an even number of bits per symbol")
    m = 2 ** bits
    snr = np.asarray(snr, dtype=float)
    return (2 * (1 - 1 / math.sqrt(m)) / bits) * erfc(np.sqrt(3 * snr / (2 * (m - 1))))


def ber_star8(snr, bits: int = 3):
    """Star 8-QAM BER, ``(5/4) Q(sqrt(6 SNR / (b (3 + sqrt 3))))``."""
    snr = np.asarray(snr, dtype=float)
    return 1.25 * qfunc(np.sqrt(6 * snr / (bits * (3 + math.sqrt(3)))))


def ber(fmt: Format, snr):
    if fmt is Format.STAR8QAM:
        return ber_star8(snr)
    return ber_square_qam(snr, fmt.bits)


def required_snr(fmt: Format, target_ber: float, bracket=SNR_BRACKET) -> float:
    """Linear SNR at which ``ber(fmt, snr) == target_ber``."""
    lo, hi = bracket
    ceiling = float(ber(fmt, 0.0))
    if not 0 < target_ber < ceiling:
        raise ValueError(f"target BER {target_ber} outside (0, {ceiling:.4g})")
    # BER underflows to 0 near the top of the bracket
    g = lambda x: math.log(max(float(ber(fmt, math.exp(x))), 1e-300)) - math.log(target_ber)
    if g(math.log(lo)) < 0 or g(math.log(hi)) > 0:
        raise ValueError(f"target BER {target_ber} not bracketed by SNR {bracket}")
    x = brentq(g, math.log(lo), math.log(hi), xtol=1e-14, rtol=1e-15, maxiter=500)
    return math.exp(x)
