"""
Pointing-jitter averaged BER and the resulting power penalty.

Normalized received intensity ``I`` in [0, 1] has density ``beta I**(beta-1)``.
The averaged BER at SNR parameter ``Q`` is

    avg(Q) = int_0^1 beta I**(beta-1) BER(I Q (beta+1)/beta) dI

and the penalty is the ratio, in dB, of the SNR reaching a target BER
without jitter to the SNR reaching it with jitter (negative for a loss).
"""

from __future__ import annotations

import math

from scipy.integrate import quad
from scipy.optimize import brentq

from .ber import SNR_BRACKET, Format, ber


def intensity_pdf(i, beta: float):
    return beta * i ** (beta - 1)


def jitter_avg_ber(q_r: float, beta: float, fmt: Format) -> float:
    if beta <= 0:
        raise ValueError("beta must be positive")
    scale = q_r * (beta + 1) / beta
    # u = I**beta turns the density into du and removes the I -> 0 singularity
    val, _ = quad(lambda u: float(ber(fmt, u ** (1 / beta) * scale)), 0.0, 1.0,
                  epsabs=1e-15, epsrel=1e-10, limit=400)
    return val


def _solve(f, target: float, lo: float, hi: float) -> float:
    g = lambda x: math.log(max(f(math.exp(x)), 1e-300)) - math.log(target)
    return math.exp(brentq(g, math.log(lo), math.log(hi), xtol=1e-13, rtol=1e-14))


def jitter_power_penalty(a_ber: float, beta: float, fmt: Format, *,
                         snr_ceiling_dB: float | None = None) -> float:
    """Jitter penalty ``L_j`` in dB at target BER ``a_ber``.

    Both roots are searched in the default SNR bracket and a target that
    cannot be reached raises ``ValueError``. ``snr_ceiling_dB`` instead
    clamps each root to a finite SNR sweep, mimicking a penalty read off a
    plotted curve whose axis stops at that SNR.
    """
    lo, hi = SNR_BRACKET
    top = ber(fmt, 0.0)
    if not 0 < a_ber < top:
        raise ValueError(f"target BER {a_ber} outside (0, {top:.4g})")
    plain = lambda q: float(ber(fmt, q))
    avg = lambda q: jitter_avg_ber(q, beta, fmt)
    if snr_ceiling_dB is not None:
        cap = 10 ** (snr_ceiling_dB / 10)
        q1 = cap if plain(cap) > a_ber else _solve(plain, a_ber, lo, cap)
        q2 = cap if avg(cap) > a_ber else _solve(avg, a_ber, lo, cap)
    else:
        if avg(hi) > a_ber:
            raise ValueError(f"target BER {a_ber} unreachable under jitter beta={beta}")
        q1 = _solve(plain, a_ber, lo, hi)
        q2 = _solve(avg, a_ber, lo, hi)
    return 10 * math.log10(q1 / q2)
