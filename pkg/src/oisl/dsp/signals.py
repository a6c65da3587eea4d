"""Constellations, symbol generation and root-raised-cosine pulse shaping."""

from __future__ import annotations

import enum
import math

import numpy as np
from scipy.signal import fftconvolve

from .frame import ComplexFrame


class DspFormat(enum.Enum):
    BPSK = "BPSK"
    QPSK = "QPSK"
    QAM16 = "16-QAM"

    @property
    def bits(self) -> int:
        return {DspFormat.BPSK: 1, DspFormat.QPSK: 2, DspFormat.QAM16: 4}[self]

    @property
    def fine_power(self) -> int:
        """Exponent that strips the modulation for the Mth-power estimator."""
        return 2 if self is DspFormat.BPSK else 4

    @property
    def symmetry(self) -> float:
        """Smallest rotation mapping the constellation onto itself."""
        return math.pi if self is DspFormat.BPSK else math.pi / 2

    @classmethod
    def parse(cls, text) -> "DspFormat":
        if isinstance(text, DspFormat):
            return text
        key = str(text).strip().upper().replace("_", "-")
        for m in cls:
            if key in (m.value.upper(), m.name):
                return m
        if key in ("16QAM", "QAM-16", "SQUARE16QAM"):
            return cls.QAM16
        raise ValueError(f"unsupported simulator format {text!r} (BPSK, QPSK, 16-QAM)")


_PAM4 = np.array([-3.0, -1.0, 3.0, 1.0])  # index = 2 bits, Gray order


def constellation(fmt: DspFormat) -> np.ndarray:
    """Unit-energy constellation points."""
    if fmt is DspFormat.BPSK:
        return np.array([1.0 + 0j, -1.0 + 0j])
    if fmt is DspFormat.QPSK:
        return np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / math.sqrt(2)
    lv = _PAM4 / math.sqrt(10)
    return (lv[:, None] + 1j * lv[None, :]).ravel()


def map_bits(bits: np.ndarray, fmt: DspFormat) -> np.ndarray:
    """Gray mapping of a bit array (multiple of ``fmt.bits`` long)."""
    b = np.asarray(bits, dtype=np.int64).reshape(-1, fmt.bits)
    if fmt is DspFormat.BPSK:
        return (1 - 2 * b[:, 0]).astype(complex)
    if fmt is DspFormat.QPSK:
        return ((1 - 2 * b[:, 0]) + 1j * (1 - 2 * b[:, 1])) / math.sqrt(2)
    i = _PAM4[2 * b[:, 0] + b[:, 1]]
    q = _PAM4[2 * b[:, 2] + b[:, 3]]
    return (i + 1j * q) / math.sqrt(10)


def generate_symbols(fmt: DspFormat, n: int, seed: int | np.random.Generator | None = None,
                     pols: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Random bits and their Gray-mapped symbols, shapes ``(pols, n*b)`` and ``(pols, n)``."""
    if n <= 0:
        raise ValueError("n must be positive")
    fmt = DspFormat.parse(fmt)
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(pols, n * fmt.bits), dtype=np.int8)
    return bits, np.stack([map_bits(b, fmt) for b in bits])


def decide(y: np.ndarray, fmt: DspFormat) -> np.ndarray:
    """Nearest constellation point, elementwise."""
    if fmt is DspFormat.BPSK:
        return np.where(y.real >= 0, 1.0 + 0j, -1.0 + 0j)
    if fmt is DspFormat.QPSK:
        return (np.sign(y.real) + 1j * np.sign(y.imag)) / math.sqrt(2)
    s = math.sqrt(10)
    lv = lambda v: np.clip(2 * np.floor(v * s / 2) + 1, -3, 3)
    return (lv(y.real) + 1j * lv(y.imag)) / s


def rrc_taps(roll_off: float, sps: int, span: int = 64) -> np.ndarray:
    """Unit-energy root-raised-cosine taps over ``+-span`` symbols."""
    if not 0 < roll_off <= 1:
        raise ValueError("roll-off must lie in (0, 1]")
    b = roll_off
    t = np.arange(-span * sps, span * sps + 1) / sps
    h = np.empty_like(t)
    sing = np.isclose(np.abs(t), 1 / (4 * b))
    zero = t == 0
    reg = ~(sing | zero)
    x = t[reg]
    h[reg] = (np.sin(np.pi * x * (1 - b)) + 4 * b * x * np.cos(np.pi * x * (1 + b))) / (
        np.pi * x * (1 - (4 * b * x) ** 2))
    h[zero] = 1 - b + 4 * b / np.pi
    h[sing] = b / math.sqrt(2) * ((1 + 2 / np.pi) * math.sin(np.pi / (4 * b))
                                  + (1 - 2 / np.pi) * math.cos(np.pi / (4 * b)))
    return h / np.linalg.norm(h)


def pulse_shape_rrc(symbols: np.ndarray, symbol_rate_Hz: float, roll_off: float = 0.1,
                    sps: int = 2, span: int = 64) -> ComplexFrame:
    """Upsample by ``sps`` and filter; symbol ``k`` sits at sample ``sps*k``.

    The output is scaled to unit mean power per sample for unit-energy
    symbols.
    """
    symbols = np.atleast_2d(symbols)
    up = np.zeros((symbols.shape[0], symbols.shape[1] * sps), dtype=complex)
    up[:, ::sps] = symbols
    h = rrc_taps(roll_off, sps, span) * math.sqrt(sps)
    out = fftconvolve(up, h[None, :], mode="same", axes=1)
    return ComplexFrame(out, symbol_rate_Hz * sps, sps)


def matched_filter(frame: ComplexFrame, roll_off: float = 0.1, span: int = 64) -> np.ndarray:
    """RRC matched filter followed by symbol-instant sampling, shape ``(2, n_sym)``."""
    sps = frame.samples_per_symbol
    h = rrc_taps(roll_off, sps, span) / math.sqrt(sps)
    y = fftconvolve(frame.samples, h[None, :], mode="same", axes=1)
    return y[:, ::sps]
