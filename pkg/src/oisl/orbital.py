"""
Walker constellation kinematics.

Satellites move on circular orbits of radius ``R = R_earth + H``. Plane ``i``
has right ascension ``2*pi*i/P``; slot ``k`` of plane ``i`` has argument of
latitude ``omega*t + 2*pi*(k/S + i*F/(P*S))``. Positions are the in-plane
circle rotated by the inclination about x and then by the plane's right
ascension about z.

All functions accept a scalar time or a 1-D array of times; vector results
then have shape ``(3,)`` or ``(3, len(t))``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .constants import EARTH_RADIUS, GM_EARTH

ArrayLike = Union[float, np.ndarray]

#: Samples per orbital period used by the max-over-period searches.
DEFAULT_GRID = 10_000


class ShellIndexError(IndexError):
    """Raised for a satellite index outside the shell bounds."""


@dataclass(frozen=True)
class ShellSpec:
    """A Walker-delta shell ``theta: N/P/F`` at altitude ``H``."""

    altitude_km: float
    inclination_rad: float
    planes: int
    sats_per_plane: int
    phase_factor: int = 0
    name: str = ""

    def __post_init__(self):
        if self.planes < 1 or self.sats_per_plane < 1:
            raise ValueError("planes and sats_per_plane must be >= 1")
        if not 0 <= self.phase_factor < self.planes:
            raise ValueError(
                f"phase_factor must lie in [0, {self.planes}), got {self.phase_factor}"
            )
        if self.altitude_km <= 0:
            raise ValueError("altitude must be positive")

    @classmethod
    def from_degrees(cls, altitude_km, inclination_deg, planes, sats_per_plane,
                     phase_factor=0, name=""):
        return cls(float(altitude_km), math.radians(inclination_deg), int(planes),
                   int(sats_per_plane), int(phase_factor), name)

    @property
    def inclination_deg(self) -> float:
        return math.degrees(self.inclination_rad)

    @property
    def total(self) -> int:
        return self.planes * self.sats_per_plane

    @property
    def radius(self) -> float:
        """Orbit radius in meters."""
        return EARTH_RADIUS + self.altitude_km * 1e3

    @property
    def angular_velocity(self) -> float:
        return math.sqrt(GM_EARTH / self.radius**3)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.angular_velocity

    @property
    def speed(self) -> float:
        return math.sqrt(GM_EARTH / self.radius)

    def with_phase_factor(self, phase_factor: int) -> "ShellSpec":
        return replace(self, phase_factor=phase_factor)

    def walker_notation(self) -> str:
        return f"{self.inclination_deg:g}: {self.total}/{self.planes}/{self.phase_factor}"


_WALKER_RE = re.compile(
    r"^\s*(?P<inc>[-+]?\d+(?:\.\d*)?)\s*(?:deg|°)?\s*:\s*(?P<n>\d+)\s*/\s*(?P<p>\d+)\s*/\s*(?P<f>\d+)\s*$"
)


def parse_walker(text: str, altitude_km: float = 550.0, name: str = "") -> ShellSpec:
    """Parse Walker notation such as ``"53: 1584/72/39"``.

    ``N`` must be a multiple of ``P``; the altitude is not part of the
    notation and is supplied separately.
    """
    m = _WALKER_RE.match(text)
    if m is None:
        raise ValueError(f"not a Walker string: {text!r}")
    n, p, f = int(m["n"]), int(m["p"]), int(m["f"])
    if p == 0 or n % p:
        raise ValueError(f"N={n} is not a multiple of P={p}")
    return ShellSpec.from_degrees(altitude_km, float(m["inc"]), p, n // p, f, name)


@dataclass(frozen=True)
class SatelliteIndex:
    plane: int
    slot: int

    def check(self, shell: ShellSpec) -> "SatelliteIndex":
        if not (0 <= self.plane < shell.planes and 0 <= self.slot < shell.sats_per_plane):
            raise ShellIndexError(
                f"index (plane={self.plane}, slot={self.slot}) outside shell "
                f"P={shell.planes}, S={shell.sats_per_plane}"
            )
        return self


class Link(enum.Enum):
    """First-neighbor connection kinds."""

    INTRA_NEXT = "intra-next"
    INTRA_PREV = "intra-prev"
    K_TO_K = "k-to-k"
    K_TO_K_MINUS_1 = "k-to-k-1"

    @property
    def interorbital(self) -> bool:
        return self in (Link.K_TO_K, Link.K_TO_K_MINUS_1)

    @classmethod
    def parse(cls, text: str) -> "Link":
        key = text.strip().lower().replace("_", "-")
        aliases = {"intra": cls.INTRA_NEXT, "kk": cls.K_TO_K, "kk1": cls.K_TO_K_MINUS_1,
                   "k-to-k-minus-1": cls.K_TO_K_MINUS_1}
        if key in aliases:
            return aliases[key]
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown link kind {text!r}")


#: A topology is either a first-neighbor kind or an explicit destination.
Topology = Union[Link, SatelliteIndex]

ORIGIN = SatelliteIndex(0, 0)


def _angles(shell: ShellSpec, idx: SatelliteIndex, t: ArrayLike):
    idx.check(shell)
    P, S, F = shell.planes, shell.sats_per_plane, shell.phase_factor
    raan = 2 * math.pi * idx.plane / P
    u = shell.angular_velocity * np.asarray(t, dtype=float) + 2 * math.pi * (
        idx.slot / S + idx.plane * F / (P * S)
    )
    return raan, u


def satellite_position(shell: ShellSpec, idx: SatelliteIndex, t: ArrayLike) -> np.ndarray:
    """Position (m) of satellite ``idx`` at time(s) ``t`` (s)."""
    raan, u = _angles(shell, idx, t)
    ci, si = math.cos(shell.inclination_rad), math.sin(shell.inclination_rad)
    cr, sr = math.cos(raan), math.sin(raan)
    cu, su = np.cos(u), np.sin(u)
    return shell.radius * np.array([
        cr * cu - ci * sr * su,
        sr * cu + ci * cr * su,
        si * su,
    ])


def satellite_velocity(shell: ShellSpec, idx: SatelliteIndex, t: ArrayLike) -> np.ndarray:
    """Velocity (m/s), the closed-form time derivative of the position."""
    raan, u = _angles(shell, idx, t)
    ci, si = math.cos(shell.inclination_rad), math.sin(shell.inclination_rad)
    cr, sr = math.cos(raan), math.sin(raan)
    cu, su = np.cos(u), np.sin(u)
    return shell.radius * shell.angular_velocity * np.array([
        -cr * su - ci * sr * cu,
        -sr * su + ci * cr * cu,
        si * cu,
    ])


def resolve_topology(shell: ShellSpec, src: SatelliteIndex, topo: Topology) -> SatelliteIndex:
    """Destination index for a link, with modular wraparound in plane and slot."""
    src.check(shell)
    if isinstance(topo, SatelliteIndex):
        return topo.check(shell)
    P, S = shell.planes, shell.sats_per_plane
    i, k = src.plane, src.slot
    if topo is Link.INTRA_NEXT:
        return SatelliteIndex(i, (k + 1) % S)
    if topo is Link.INTRA_PREV:
        return SatelliteIndex(i, (k - 1) % S)
    if topo is Link.K_TO_K:
        return SatelliteIndex((i + 1) % P, k)
    if topo is Link.K_TO_K_MINUS_1:
        return SatelliteIndex((i + 1) % P, (k - 1) % S)
    raise TypeError(f"unsupported topology {topo!r}")


def link_vectors(shell: ShellSpec, src: SatelliteIndex, topo: Topology, t: ArrayLike):
    """Source and destination positions and velocities ``(ps, vs, pd, vd)``."""
    dst = resolve_topology(shell, src, topo)
    return (satellite_position(shell, src, t), satellite_velocity(shell, src, t),
            satellite_position(shell, dst, t), satellite_velocity(shell, dst, t))


def link_distance(shell: ShellSpec, src: SatelliteIndex, topo: Topology, t: ArrayLike):
    dst = resolve_topology(shell, src, topo)
    d = satellite_position(shell, dst, t) - satellite_position(shell, src, t)
    return np.linalg.norm(d, axis=0)


def intraorbital_distance(shell: ShellSpec) -> float:
    """Chord between neighbors in a plane, ``2 R sin(pi/S)``."""
    return 2 * shell.radius * math.sin(math.pi / shell.sats_per_plane)


def maximize_periodic(func: Callable[[np.ndarray], np.ndarray], period: float,
                      samples: int = DEFAULT_GRID, xtol: float = 1e-6,
                      offset: float = 0.0) -> tuple[float, float]:
    """Maximize a periodic function of time over one period.

    A uniform grid locates the best sample, then bounded Brent search
    refines it inside the two neighboring grid cells. Returns ``(t, value)``.
    """
    t = offset + np.arange(samples) * (period / samples)
    vals = func(t)
    j = int(np.argmax(vals))
    dt = period / samples
    t0, best = float(t[j]), float(vals[j])

    def neg(x):
        return -float(func(np.array([x]))[0])

    res = minimize_scalar(neg, bounds=(t0 - dt, t0 + dt), method="bounded",
                          options={"xatol": xtol})
    if -res.fun > best:
        return float(res.x), float(-res.fun)
    return t0, best


def worst_case_phase_factor(shell: ShellSpec, topo: Link, src: SatelliteIndex = ORIGIN,
                            samples: int = DEFAULT_GRID) -> tuple[int, float]:
    """Phase factor giving the longest link over one orbital period.

    Returns ``(F, max_distance_m)``; ties go to the smallest ``F``. The
    intraorbital distance does not depend on ``F``, so intraorbital links
    return ``(0, chord)``.
    """
    if not topo.interorbital:
        return 0, intraorbital_distance(shell)
    best_f, best_d = 0, -1.0
    for f in range(shell.planes):
        trial = shell.with_phase_factor(f)
        _, d = maximize_periodic(lambda t: link_distance(trial, src, topo, t),
                                 trial.period, samples)
        if d > best_d * (1 + 1e-9):
            best_f, best_d = f, d
    return best_f, best_d


def max_visible_distance(shell: ShellSpec, grazing_altitude_m: float = 0.0) -> float:
    """Longest same-shell link whose ray stays above ``R_earth + grazing``."""
    rg = EARTH_RADIUS + grazing_altitude_m
    return 2 * math.sqrt(shell.radius**2 - rg**2)


def line_of_sight(p1, p2, radius: float = EARTH_RADIUS) -> bool:
    """True when segment ``p1``-``p2`` stays outside the sphere of ``radius``."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    d = p2 - p1
    dd = float(d @ d)
    s = 0.0 if dd == 0 else min(1.0, max(0.0, -float(p1 @ d) / dd))
    closest = p1 + s * d
    return bool(np.linalg.norm(closest) > radius)
