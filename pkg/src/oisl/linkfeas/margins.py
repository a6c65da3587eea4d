"""SNR margins against pre-FEC thresholds and the feasibility tables."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..orbital import (Link, ShellSpec, intraorbital_distance, max_visible_distance,
                       worst_case_phase_factor)
from .ber import SCHEMES, ModulationScheme, required_snr
from .budget import (AseLimited, LinkParams, NoiseRegime, ShotLimited, lin2db,
                     photons_per_symbol, received_power, snr)

#: Rays closer than this to the surface are treated as blocked by the atmosphere.
GRAZING_ALTITUDE_M = 80e3

TABLE_LINKS = (Link.INTRA_NEXT, Link.K_TO_K, Link.K_TO_K_MINUS_1)


class Fec(enum.Enum):
    STAIRCASE = 4.5e-3
    OFEC = 2e-2

    @property
    def threshold(self) -> float:
        return self.value


class Suitability(enum.Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"


@dataclass(frozen=True)
class MarginCell:
    shell: str
    link: Link
    scheme: str
    margin_staircase_dB: float
    margin_ofec_dB: float
    distance_m: float = math.nan
    phase_factor: int = 0

    @property
    def classification(self) -> Suitability:
        if self.margin_staircase_dB >= 0:
            return Suitability.GREEN
        if self.margin_ofec_dB >= 0:
            return Suitability.YELLOW
        return Suitability.RED


@functools.lru_cache(maxsize=None)
def design_distance(shell: ShellSpec, link: Link,
                    grazing_altitude_m: float = GRAZING_ALTITUDE_M) -> tuple[int, float]:
    """Worst-case link length ``(F, meters)`` used for the margin tables.

    Intraorbital links use the neighbor chord. Interorbital links use the
    longest length over one period at the worst phase factor, limited to the
    longest length that keeps line of sight above the grazing altitude.
    """
    f, d = worst_case_phase_factor(shell, link)
    if link.interorbital:
        d = min(d, max_visible_distance(shell, grazing_altitude_m))
    return f, d


def available_snr(distance_m: float, scheme: ModulationScheme, regime: NoiseRegime,
                  params: LinkParams | None = None, *, include_jitter_terms: bool = False) -> float:
    """Linear per-polarization SNR delivered over ``distance_m``.

    Feasibility tables leave out both pointing terms (average pointing loss
    and jitter penalty); ``include_jitter_terms`` restores the average loss.
    """
    params = params or LinkParams()
    _, p_in = received_power(params, distance_m, include_pointing_loss=include_jitter_terms)
    n_s = photons_per_symbol(p_in, scheme.symbol_rate, params.wavelength_m)
    return snr(regime, n_s, params.wavelength_m)


def margin_at_distance(distance_m: float, scheme: ModulationScheme, regime: NoiseRegime,
                       fec: Fec, params: LinkParams | None = None, **kw) -> float:
    have = available_snr(distance_m, scheme, regime, params, **kw)
    return lin2db(have) - lin2db(required_snr(scheme.format, fec.threshold))


def margin(shell: ShellSpec, link: Link, scheme: ModulationScheme, regime: NoiseRegime,
           fec: Fec, params: LinkParams | None = None, *,
           grazing_altitude_m: float = GRAZING_ALTITUDE_M, **kw) -> float:
    """Margin in dB of ``scheme`` on ``link`` of ``shell`` over the FEC threshold."""
    _, d = design_distance(shell, link, grazing_altitude_m)
    return margin_at_distance(d, scheme, regime, fec, params, **kw)


def margin_cell(shell: ShellSpec, link: Link, scheme: ModulationScheme, regime: NoiseRegime,
                params: LinkParams | None = None, *,
                grazing_altitude_m: float = GRAZING_ALTITUDE_M, **kw) -> MarginCell:
    f, d = design_distance(shell, link, grazing_altitude_m)
    return MarginCell(
        shell=shell.name, link=link, scheme=scheme.label,
        margin_staircase_dB=margin_at_distance(d, scheme, regime, Fec.STAIRCASE, params, **kw),
        margin_ofec_dB=margin_at_distance(d, scheme, regime, Fec.OFEC, params, **kw),
        distance_m=d, phase_factor=f,
    )


def feasibility_table(regime: NoiseRegime, shells: Iterable[ShellSpec] | None = None,
                      params: LinkParams | None = None,
                      links: Sequence[Link] = TABLE_LINKS,
                      schemes: Sequence[ModulationScheme] = SCHEMES, **kw) -> list[MarginCell]:
    """Margin cells for every link kind x shell x scheme, in table order."""
    if shells is None:
        from ..catalogue import builtin_shells
        shells = builtin_shells().values()
    shells = list(shells)
    return [margin_cell(sh, lk, sc, regime, params, **kw)
            for lk in links for sh in shells for sc in schemes]


def regime_label(regime: NoiseRegime) -> str:
    return "shot" if isinstance(regime, ShotLimited) else "ase" if isinstance(regime, AseLimited) else "?"


def compare_with_golden(cells: Sequence[MarginCell], regime: str, golden: Sequence[dict],
                        tol_intra_dB: float = 0.05, tol_inter_dB: float = 0.2) -> list[dict]:
    """Per-cell comparison records against reference rows of one regime."""
    ref = {(g["link"], g["shell"], g["scheme"]): g for g in golden if g["regime"] == regime}
    out = []
    for c in cells:
        g = ref.get((c.link.value if c.link.interorbital else "intra", c.shell, c.scheme))
        if g is None:
            continue
        tol = tol_inter_dB if c.link.interorbital else tol_intra_dB
        d_sc = c.margin_staircase_dB - g["staircase_dB"]
        d_of = c.margin_ofec_dB - g["ofec_dB"]
        out.append({
            "regime": regime, "link": g["link"], "shell": c.shell, "scheme": c.scheme,
            "staircase_dB": c.margin_staircase_dB, "ofec_dB": c.margin_ofec_dB,
            "ref_staircase_dB": g["staircase_dB"], "ref_ofec_dB": g["ofec_dB"],
            "tolerance_dB": tol, "within_tolerance": abs(d_sc) <= tol and abs(d_of) <= tol,
            "class": c.classification.value, "ref_class": g["class"],
            "class_match": c.classification.value == g["class"],
        })
    return out
