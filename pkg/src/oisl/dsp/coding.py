"""
Differential coding matched to the rotational symmetry of each format.

BPSK carries each bit as a sign flip. QPSK carries two Gray-coded bits as a
quadrant step. 16-QAM uses the same quadrant step for its first two bits;
the last two select a point inside the quadrant relative to the quadrant's
rotation, so a global quarter turn leaves them unchanged.
"""

from __future__ import annotations

import math

import numpy as np

from .signals import DspFormat

# quadrant step for Gray bit pairs 00, 01, 10, 11
_STEP = np.array([0, 1, 3, 2])
_STEP_INV = np.array([[0, 0], [0, 1], [1, 1], [1, 0]])
_QPSK_BASE = (1 + 1j) / math.sqrt(2)
_LEVEL = np.array([1.0, 3.0])  # in-quadrant amplitude for bit 0 / 1


def _quadrant_steps(bits: np.ndarray) -> np.ndarray:
    return _STEP[2 * bits[:, 0] + bits[:, 1]]


def differential_encode(bits: np.ndarray, fmt: DspFormat) -> np.ndarray:
    """Symbols for a 1-D bit array; the reference symbol is implied as phase 0."""
    fmt = DspFormat.parse(fmt)
    b = np.asarray(bits, dtype=np.int64).reshape(-1, fmt.bits)
    if fmt is DspFormat.BPSK:
        return (1 - 2 * (np.cumsum(b[:, 0]) % 2)).astype(complex)
    q = np.cumsum(_quadrant_steps(b)) % 4
    rot = 1j ** q
    if fmt is DspFormat.QPSK:
        return _QPSK_BASE * rot
    inner = (_LEVEL[b[:, 2]] + 1j * _LEVEL[b[:, 3]]) / math.sqrt(10)
    return inner * rot


def _quadrant(y: np.ndarray) -> np.ndarray:
    """0..3 counter-clockwise from the first quadrant."""
    ang = np.angle(y)
    return np.floor(np.mod(ang, 2 * math.pi) / (math.pi / 2)).astype(np.int64) % 4


def differential_decode(y: np.ndarray, fmt: DspFormat) -> np.ndarray:
    """Bits from received symbols (hard decisions taken here).

    The first symbol only serves as reference and yields no bits.
    """
    fmt = DspFormat.parse(fmt)
    y = np.asarray(y)
    if fmt is DspFormat.BPSK:
        s = (y.real < 0).astype(np.int64)
        return np.bitwise_xor(s[1:], s[:-1]).astype(np.int8)
    q = _quadrant(y)
    d = np.mod(np.diff(q), 4)
    out = [_STEP_INV[d]]
    if fmt is DspFormat.QAM16:
        base = y[1:] * (1j ** (-q[1:]))  # rotate into the first quadrant
        thr = 2 / math.sqrt(10)
        out.append(np.stack([base.real > thr, base.imag > thr], axis=1).astype(np.int64))
    return np.concatenate(out, axis=1).ravel().astype(np.int8)


def differential_code(data: np.ndarray, fmt: DspFormat, direction: str) -> np.ndarray:
    """``direction="encode"``: bits to symbols; ``"decode"``: symbols to bits.

    Decoding drops the bits of the first symbol, which has no predecessor;
    prepend a reference symbol ``differential_reference(fmt)`` before
    decoding to recover all bits.
    """
    if direction == "encode":
        return differential_encode(data, fmt)
    if direction == "decode":
        return differential_decode(data, fmt)
    raise ValueError("direction must be 'encode' or 'decode'")


def differential_reference(fmt: DspFormat) -> complex:
    """Symbol preceding the first encoded symbol."""
    fmt = DspFormat.parse(fmt)
    if fmt is DspFormat.BPSK:
        return 1.0 + 0j
    if fmt is DspFormat.QPSK:
        return complex(_QPSK_BASE)
    return complex((1 + 1j) / math.sqrt(10))
