"""
Doppler shift on inter-satellite links.

For a link from source ``s`` to destination ``d`` with separation
``r = r_d - r_s`` and unit vector ``u = r / |r|``, the non-relativistic
shift seen at the destination is

    df = (c / lambda) * ((v_d - v_s) . u) / (c - v_d . u)

Range rates come from the closed-form satellite velocities.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import DEFAULT_WAVELENGTH, EARTH_RADIUS, GM_EARTH, SPEED_OF_LIGHT
from .orbital import (ORIGIN, ArrayLike, Link, SatelliteIndex, ShellSpec, Topology,
                      link_vectors, maximize_periodic)

#: Time samples per period for the extrema search.
SEARCH_GRID = 20_000
#: Step of the central difference behind ``doppler_derivative`` (seconds).
DERIVATIVE_STEP = 1e-3
#: Relative margin under which two phase factors count as tied.
TIE_RTOL = 1e-9


class CoincidentSatellitesError(ValueError):
    """Source and destination occupy the same point."""


def doppler_shift(shell: ShellSpec, src: SatelliteIndex, topo: Topology, t: ArrayLike,
                  wavelength_m: float = DEFAULT_WAVELENGTH):
    """Frequency shift in Hz observed on the link at time(s) ``t``."""
    ps, vs, pd, vd = link_vectors(shell, src, topo, t)
    r = pd - ps
    dist = np.linalg.norm(r, axis=0)
    if np.any(dist == 0):
        raise CoincidentSatellitesError("source and destination coincide")
    u = r / dist
    range_rate = np.sum((vd - vs) * u, axis=0)
    c = SPEED_OF_LIGHT
    return (c / wavelength_m) * range_rate / (c - np.sum(vd * u, axis=0))


def doppler_derivative(shell: ShellSpec, src: SatelliteIndex, topo: Topology, t: ArrayLike,
                       wavelength_m: float = DEFAULT_WAVELENGTH, h: float = DERIVATIVE_STEP):
    """Time derivative of the shift in Hz/s.

    Central differences at steps ``h`` and ``h/2`` combined by one
    Richardson extrapolation.
    """
    t = np.asarray(t, dtype=float)

    def central(step):
        return (doppler_shift(shell, src, topo, t + step, wavelength_m)
                - doppler_shift(shell, src, topo, t - step, wavelength_m)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


@dataclass(frozen=True)
class DopplerSeries:
    t: np.ndarray  # s
    delta_f: np.ndarray  # Hz
    delta_f_dot: np.ndarray  # Hz/s


def doppler_series(shell: ShellSpec, topo: Topology, samples: int = 2000,
                   src: SatelliteIndex = ORIGIN,
                   wavelength_m: float = DEFAULT_WAVELENGTH) -> DopplerSeries:
    """Shift and its derivative sampled uniformly over one orbital period."""
    t = np.arange(samples) * (shell.period / samples)
    return DopplerSeries(t, doppler_shift(shell, src, topo, t, wavelength_m),
                         doppler_derivative(shell, src, topo, t, wavelength_m))


@dataclass(frozen=True)
class DopplerExtrema:
    """Peak shift magnitude over time and phase factor.

    ``delta_f_dot_max`` is taken at ``f_at``, the phase factor of the
    largest shift; ``delta_f_dot_max_any`` maximizes over all phase factors
    and is attained at ``f_dot_at``.
    """

    shell: str
    link: Link
    delta_f_max: float  # Hz
    f_at: int
    t_at: float
    delta_f_dot_max: float  # Hz/s
    delta_f_dot_max_any: float
    f_dot_at: int


def _peaks_for_phase_factor(args) -> tuple[float, float, float]:
    shell, topo, src, samples, wavelength_m = args
    per = shell.period
    t_f, f_max = maximize_periodic(
        lambda t: np.abs(doppler_shift(shell, src, topo, t, wavelength_m)), per, samples)
    _, d_max = maximize_periodic(
        lambda t: np.abs(doppler_derivative(shell, src, topo, t, wavelength_m)), per, samples)
    return f_max, t_f, d_max


def extrema_search(shell: ShellSpec, topo: Link, *, src: SatelliteIndex = ORIGIN,
                   samples: int = SEARCH_GRID, wavelength_m: float = DEFAULT_WAVELENGTH,
                   phase_factors: Sequence[int] | None = None,
                   workers: int | None = 1) -> DopplerExtrema:
    """Largest ``|df|`` and ``|df'|`` over one period and every phase factor.

    Each phase factor is scanned on a uniform grid of ``samples`` points
    with local refinement of the grid maximum. Ties between phase factors go
    to the smaller one. ``workers > 1`` spreads phase factors across
    processes; the reduction is order-independent.
    """
    fs = list(range(shell.planes)) if phase_factors is None else list(phase_factors)
    jobs = [(shell.with_phase_factor(f), topo, src, samples, wavelength_m) for f in fs]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            peaks = list(pool.map(_peaks_for_phase_factor, jobs))
    else:
        peaks = [_peaks_for_phase_factor(j) for j in jobs]

    best = 0
    dot_best = 0
    for j in range(1, len(fs)):
        if peaks[j][0] > peaks[best][0] * (1 + TIE_RTOL):
            best = j
        if peaks[j][2] > peaks[dot_best][2] * (1 + TIE_RTOL):
            dot_best = j
    return DopplerExtrema(
        shell=shell.name, link=topo,
        delta_f_max=peaks[best][0], f_at=fs[best], t_at=peaks[best][1],
        delta_f_dot_max=peaks[best][2],
        delta_f_dot_max_any=peaks[dot_best][2], f_dot_at=fs[dot_best],
    )


@dataclass(frozen=True)
class URMBound:
    """Shift bound for two satellites closing head-on at orbital speed."""

    altitude_km: float
    closing_speed_mps: float
    delta_f_bound_Hz: float


def urm_bound(altitude_km: float, wavelength_m: float = DEFAULT_WAVELENGTH, *,
              carrier_Hz: float | None = None) -> URMBound:
    """``df = 2 v f_s / c`` with ``v`` the circular speed at ``altitude_km``.

    ``carrier_Hz`` overrides the carrier otherwise derived from the wavelength.
    """
    if altitude_km <= 0:
        raise ValueError("altitude must be positive")
    v = math.sqrt(GM_EARTH / (EARTH_RADIUS + altitude_km * 1e3))
    f_s = SPEED_OF_LIGHT / wavelength_m if carrier_Hz is None else carrier_Hz
    return URMBound(altitude_km, 2 * v, 2 * v * f_s / SPEED_OF_LIGHT)
