"""
Blind 2x2 butterfly equalizer, fractionally spaced at 2 samples per symbol.

Output ``y_q[k] = sum_p sum_j w[q, p, j] x_p[2k + j - c]`` with ``c`` the
center tap. CMA drives ``|y|^2`` toward a single radius; RDE drives it
toward the nearest of several radii and starts from a CMA warm-up.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np

from .signals import DspFormat, constellation

#: Output power above this multiple of the input power counts as divergence.
DIVERGENCE_FACTOR = 100.0
_CHECK_BLOCK = 1000


class EqualizerAlgo(enum.Enum):
    CMA = "CMA"
    RDE = "RDE"

    @classmethod
    def for_format(cls, fmt: DspFormat) -> "EqualizerAlgo":
        return cls.RDE if fmt is DspFormat.QAM16 else cls.CMA


class EqualizerDivergenceError(RuntimeError):
    """Equalizer output power blew up."""


@dataclass
class EqualizerResult:
    symbols: np.ndarray  # (2, n_sym)
    taps: np.ndarray  # (2, 2, n_taps)
    cost: np.ndarray  # per-symbol |e| averaged over both outputs


def cma_radius2(fmt: DspFormat) -> float:
    c = constellation(fmt)
    return float(np.mean(np.abs(c) ** 4) / np.mean(np.abs(c) ** 2))


def rde_radii2(fmt: DspFormat) -> np.ndarray:
    return np.unique(np.round(np.abs(constellation(fmt)) ** 2, 12))


@numba.njit(cache=True)
def _butterfly(x, w, sps, mu_pre, mu_post, preamble, r2_cma, radii2, cma_warmup,
               p_in, div_factor, block):
    n_taps = w.shape[2]
    c = n_taps // 2
    n_sym = (x.shape[1]) // sps
    pad = np.zeros((2, x.shape[1] + 2 * n_taps), dtype=np.complex128)
    pad[:, n_taps:n_taps + x.shape[1]] = x
    y = np.zeros((2, n_sym), dtype=np.complex128)
    cost = np.zeros(n_sym)
    acc = 0.0
    for k in range(n_sym):
        start = n_taps + sps * k - c
        mu = mu_pre if k < preamble else mu_post
        e_tot = 0.0
        for q in range(2):
            acc_y = 0j
            for p in range(2):
                for j in range(n_taps):
                    acc_y += w[q, p, j] * pad[p, start + j]
            y[q, k] = acc_y
            m2 = acc_y.real * acc_y.real + acc_y.imag * acc_y.imag
            if k < cma_warmup or radii2.shape[0] == 0:
                target = r2_cma
            else:
                target = radii2[0]
                best = abs(m2 - target)
                for r in range(1, radii2.shape[0]):
                    d = abs(m2 - radii2[r])
                    if d < best:
                        best = d
                        target = radii2[r]
            err = acc_y * (m2 - target)
            e_tot += abs(m2 - target)
            for p in range(2):
                for j in range(n_taps):
                    w[q, p, j] -= mu * err * np.conj(pad[p, start + j])
            acc += m2
        cost[k] = 0.5 * e_tot
        if (k + 1) % block == 0:
            if acc / (2 * block) > div_factor * p_in or not np.isfinite(acc):
                return y, cost, k
            acc = 0.0
    return y, cost, -1


def adaptive_equalizer(x: np.ndarray, fmt: DspFormat, *, algo: EqualizerAlgo | None = None,
                       taps: int = 21, step: float | None = None, preamble: int = 8000,
                       cma_warmup: int = 4000, sps: int = 2,
                       step_decay: float = 0.5, training_passes: int = 0) -> EqualizerResult:
    """Equalize ``x`` (shape ``(2, n)``) and decimate to one sample per symbol.

    ``step`` defaults to 1e-3 for CMA and 5e-4 for RDE and is multiplied
    by ``step_decay`` after the ``preamble`` symbols. Taps start as center
    spikes on the diagonal. ``training_passes`` extra blind passes over the
    whole block run first, each continuing from the previous taps; only the
    last pass produces output. This stands in for the long convergence time
    available in much longer blocks.
    """
    fmt = DspFormat.parse(fmt)
    algo = algo or EqualizerAlgo.for_format(fmt)
    if taps < 1 or taps % 2 == 0:
        raise ValueError("taps must be a positive odd number")
    if step is None:
        step = 1e-3 if algo is EqualizerAlgo.CMA else 5e-4
    x = np.ascontiguousarray(np.atleast_2d(x), dtype=np.complex128)
    w = np.zeros((2, 2, taps), dtype=np.complex128)
    w[0, 0, taps // 2] = w[1, 1, taps // 2] = 1.0
    p_in = float(np.mean(np.abs(x) ** 2))
    radii2 = rde_radii2(fmt) if algo is EqualizerAlgo.RDE else np.zeros(0)
    warm = cma_warmup if algo is EqualizerAlgo.RDE else 0
    r2 = cma_radius2(fmt)
    for p in range(training_passes + 1):
        first = p == 0
        y, cost, bad = _butterfly(x, w, sps, step if first else step * step_decay,
                                  step * step_decay, preamble if first else 0, r2,
                                  radii2, warm if first else 0, p_in,
                                  DIVERGENCE_FACTOR, _CHECK_BLOCK)
        if bad >= 0:
            raise EqualizerDivergenceError(
                f"output power exceeded {DIVERGENCE_FACTOR:g}x input by symbol {bad} "
                f"(pass {p}, algo={algo.value}, step={step:g}); try a smaller step")
    return EqualizerResult(y, w, cost)
