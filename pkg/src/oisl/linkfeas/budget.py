"""Free-space optical link budget and receiver SNR regimes."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Union

from ..constants import DEFAULT_WAVELENGTH, ELEMENTARY_CHARGE, PLANCK, SPEED_OF_LIGHT


def db2lin(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def lin2db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class LinkParams:
    """Terminal parameters; losses are stored in dB (<= 0)."""

    tx_power_W: float = 1.0
    tx_loss_dB: float = -2.0
    jitter_rad: float = 2.6e-6
    divergence_half_angle_rad: float = 20.4e-6
    wavelength_m: float = DEFAULT_WAVELENGTH
    pointing_loss_dB: float = -0.1
    rx_diameter_m: float = 0.1
    rx_loss_dB: float = -2.0

    def __post_init__(self):
        for name in ("tx_power_W", "jitter_rad", "divergence_half_angle_rad",
                     "wavelength_m", "rx_diameter_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("tx_loss_dB", "pointing_loss_dB", "rx_loss_dB"):
            if getattr(self, name) > 0:
                raise ValueError(f"{name} is a loss and must be <= 0 dB")

    @classmethod
    def with_overrides(cls, overrides: dict) -> "LinkParams":
        known = {f.name for f in fields(cls)}
        bad = sorted(set(overrides) - known)
        if bad:
            raise KeyError(f"unknown link parameter(s): {', '.join(bad)}")
        return cls(**{k: float(v) for k, v in overrides.items()})

    @property
    def beta(self) -> float:
        """Pointing-jitter intensity exponent ``w0**2 / (4 sigma**2)``."""
        return self.divergence_half_angle_rad**2 / (4 * self.jitter_rad**2)

    @property
    def tx_gain(self) -> float:
        return 8.0 / self.divergence_half_angle_rad**2

    @property
    def rx_gain(self) -> float:
        return (math.pi * self.rx_diameter_m / self.wavelength_m) ** 2


def fspl(distance_m: float, wavelength_m: float = DEFAULT_WAVELENGTH) -> float:
    """Free-space path gain ``(lambda / (4 pi d))**2`` (linear, <= 1 beyond lambda/4pi)."""
    if distance_m <= 0:
        raise ValueError("distance must be positive")
    return (wavelength_m / (4 * math.pi * distance_m)) ** 2


def received_power(params: LinkParams, distance_m: float, *, jitter_penalty_dB: float = 0.0,
                   include_pointing_loss: bool = True) -> tuple[float, float]:
    """Total received power and the per-polarization share, both in watts.

    ``2 P_in = P_t tau_t G_t L G_r tau_r tau_j L_j``; set
    ``include_pointing_loss=False`` to drop ``tau_j``.
    """
    total = (params.tx_power_W * db2lin(params.tx_loss_dB) * params.tx_gain
             * fspl(distance_m, params.wavelength_m) * params.rx_gain
             * db2lin(params.rx_loss_dB) * db2lin(jitter_penalty_dB))
    if include_pointing_loss:
        total *= db2lin(params.pointing_loss_dB)
    return total, total / 2


def photon_energy(wavelength_m: float = DEFAULT_WAVELENGTH) -> float:
    return PLANCK * SPEED_OF_LIGHT / wavelength_m


def photons_per_symbol(p_in_W: float, symbol_rate: float,
                       wavelength_m: float = DEFAULT_WAVELENGTH) -> float:
    return p_in_W / (photon_energy(wavelength_m) * symbol_rate)


@dataclass(frozen=True)
class ShotLimited:
    """Shot-noise-limited receiver.

    The detector is specified by its responsivity in A/W; the quantum
    efficiency entering the SNR is ``responsivity * h nu / q``.
    """

    responsivity_A_per_W: float = 0.7

    @classmethod
    def from_quantum_efficiency(cls, eta: float,
                                wavelength_m: float = DEFAULT_WAVELENGTH) -> "ShotLimited":
        return cls(eta * ELEMENTARY_CHARGE / photon_energy(wavelength_m))

    def quantum_efficiency(self, wavelength_m: float = DEFAULT_WAVELENGTH) -> float:
        eta = self.responsivity_A_per_W * photon_energy(wavelength_m) / ELEMENTARY_CHARGE
        if not 0 < eta <= 1 + 1e-12:
            raise ValueError(f"quantum efficiency {eta:.3f} outside (0, 1]")
        return eta


@dataclass(frozen=True)
class AseLimited:
    """Optically pre-amplified receiver, ``n_sp = F_n / 2``."""

    noise_figure_dB: float = 4.8

    @property
    def n_sp(self) -> float:
        return db2lin(self.noise_figure_dB) / 2


NoiseRegime = Union[ShotLimited, AseLimited]


def regime_from_name(name: str, **kw) -> NoiseRegime:
    key = name.strip().lower()
    if key in ("shot", "shot-limited"):
        return ShotLimited(**kw)
    if key in ("ase", "ase-limited"):
        return AseLimited(**kw)
    raise ValueError(f"unknown noise regime {name!r}")


def snr(regime: NoiseRegime, n_s: float, wavelength_m: float = DEFAULT_WAVELENGTH) -> float:
    """Per-polarization linear SNR for ``n_s`` photons per symbol."""
    if n_s <= 0:
        raise ValueError("photon number must be positive")
    if isinstance(regime, ShotLimited):
        return regime.quantum_efficiency(wavelength_m) * n_s
    if isinstance(regime, AseLimited):
        return n_s / regime.n_sp
    raise TypeError(f"unknown regime {regime!r}")
