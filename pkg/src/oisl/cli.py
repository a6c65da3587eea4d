"""
Command-line front end.

Subcommands: constellations, feasibility, doppler, dsp, calibrate-alpha.
Exit status is 0 on success, 1 when ``--verify`` finds a deviation from
the embedded reference tables, and 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import fields

import numpy as np

from . import catalogue
from .catalogue import CatalogueError
from .io import ConfigError, Emitter, RunManifest, load_toml, to_json
from .orbital import Link, ShellSpec

log = logging.getLogger("oisl")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG = 0, 1, 2


def _shells(cfg: dict) -> dict[str, ShellSpec]:
    if "shells" in cfg:
        return catalogue.shells_from_mapping({"shells": cfg["shells"]})
    return catalogue.builtin_shells()


def _subset(table: dict[str, ShellSpec], names: str | None) -> list[ShellSpec]:
    if not names or names == "all":
        return list(table.values())
    out = []
    for n in names.split(","):
        if n not in table:
            raise ConfigError(f"unknown shell {n!r}; known: {', '.join(table)}")
        out.append(table[n])
    return out


# constellations ------------------------------------------------------------

def cmd_constellations(args, cfg, em: Emitter) -> int:
    rows = [{"shell": name, "altitude_km": s.altitude_km,
             "inclination_deg": round(s.inclination_deg, 6), "planes": s.planes,
             "sats_per_plane": s.sats_per_plane, "total": s.total,
             "walker": s.walker_notation()}
            for name, s in _shells(cfg).items()]
    em.table("constellations", rows, args.format)
    return EXIT_OK


# feasibility ----------------------------------------------------------------

def _link_params(cfg: dict):
    from .linkfeas import LinkParams
    try:
        return LinkParams.with_overrides(cfg.get("link", {}))
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from exc


def _regimes(name: str, cfg: dict):
    from .linkfeas import AseLimited, ShotLimited
    rc = cfg.get("receiver", {})
    unknown = set(rc) - {"responsivity_A_per_W", "noise_figure_dB"}
    if unknown:
        raise ConfigError(f"unknown receiver key(s): {', '.join(sorted(unknown))}")
    shot = ShotLimited(float(rc.get("responsivity_A_per_W", 0.7)))
    ase = AseLimited(float(rc.get("noise_figure_dB", 4.8)))
    return {"shot": [("shot", shot)], "ase": [("ase", ase)],
            "both": [("shot", shot), ("ase", ase)]}[name]


def cmd_feasibility(args, cfg, em: Emitter) -> int:
    from .linkfeas import compare_with_golden, feasibility_table
    params = _link_params(cfg)
    opts = cfg.get("options", {})
    grazing = float(opts.get("grazing_altitude_km", 80.0)) * 1e3
    shells = _subset(_shells(cfg), args.shell)
    rows, failures = [], 0
    golden = catalogue.golden_margins()
    for label, regime in _regimes(args.regime, cfg):
        cells = feasibility_table(regime, shells, params, grazing_altitude_m=grazing,
                                  include_jitter_terms=bool(opts.get("include_pointing_loss", False)))
        for c in cells:
            rows.append({"regime": label, "link": c.link.value if c.link.interorbital else "intra",
                         "shell": c.shell, "scheme": c.scheme,
                         "staircase_dB": round(c.margin_staircase_dB, 4),
                         "ofec_dB": round(c.margin_ofec_dB, 4),
                         "class": c.classification.value,
                         "distance_km": round(c.distance_m / 1e3, 3),
                         "phase_factor": c.phase_factor})
        if args.verify:
            cmp = compare_with_golden(cells, label, golden)
            bad = [r for r in cmp if not r["within_tolerance"] or not r["class_match"]]
            for r in bad:
                log.error("deviation %s %s %s %s: %.2f/%.2f vs %.2f/%.2f (%s vs %s)",
                          label, r["link"], r["shell"], r["scheme"], r["staircase_dB"],
                          r["ofec_dB"], r["ref_staircase_dB"], r["ref_ofec_dB"],
                          r["class"], r["ref_class"])
            failures += len(bad)
    em.table(f"feasibility_{args.regime}", rows, args.format)
    if args.verify:
        log.info("feasibility verification: %d deviating cell(s)", failures)
        return EXIT_VERIFY if failures else EXIT_OK
    return EXIT_OK


# doppler --------------------------------------------------------------------

def _links(name: str) -> list[Link]:
    if name == "both":
        return [Link.K_TO_K, Link.K_TO_K_MINUS_1]
    try:
        return [Link.parse(name)]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_doppler(args, cfg, em: Emitter) -> int:
    from .doppler import doppler_series, extrema_search
    dc = cfg.get("doppler", {})
    samples = int(dc.get("samples", 20_000))
    wavelength = float(dc.get("wavelength_m", 1550e-9))
    shells = _subset(_shells(cfg), args.shell)
    golden = {(g["shell"], g["link"]): g for g in catalogue.golden_doppler()}
    rows, failures = [], 0
    for sh in shells:
        for lk in _links(args.link):
            if not lk.interorbital:
                raise ConfigError("Doppler extrema are defined for interorbital links")
            e = extrema_search(sh, lk, samples=samples, wavelength_m=wavelength,
                               workers=args.workers)
            rows.append({"shell": sh.name, "link": lk.value,
                         "delta_f_max_GHz": round(e.delta_f_max / 1e9, 6),
                         "phase_factor": e.f_at,
                         "delta_f_dot_max_GHz_per_s": round(e.delta_f_dot_max / 1e9, 6),
                         "delta_f_dot_max_any_GHz_per_s": round(e.delta_f_dot_max_any / 1e9, 6),
                         "phase_factor_dot": e.f_dot_at})
            if args.series:
                s = doppler_series(sh.with_phase_factor(e.f_at), lk,
                                   int(dc.get("series_samples", 2000)), wavelength_m=wavelength)
                em.table(f"series_{sh.name}_{lk.value}",
                         [{"t_s": float(t), "delta_f_Hz": float(f), "delta_f_dot_Hz_per_s": float(d)}
                          for t, f, d in zip(s.t, s.delta_f, s.delta_f_dot)], args.format)
            g = golden.get((sh.name, lk.value))
            if args.verify and g is not None:
                ok = (abs(e.delta_f_max / 1e9 / g["delta_f_max_GHz"] - 1) <= 0.01
                      and e.f_at == g["phase_factor"]
                      and min(abs(e.delta_f_dot_max / 1e9 / g["delta_f_dot_max_GHz_per_s"] - 1),
                              abs(e.delta_f_dot_max_any / 1e9 / g["delta_f_dot_max_GHz_per_s"] - 1))
                      <= 0.10)
                if not ok:
                    failures += 1
                    log.error("deviation %s %s: %s vs reference %s", sh.name, lk.value,
                              rows[-1], g)
    em.table("doppler_extrema", rows, args.format)
    if args.verify:
        return EXIT_VERIFY if failures else EXIT_OK
    return EXIT_OK


# dsp ------------------------------------------------------------------------

def _dataclass_from(cls, table: dict, what: str):
    known = {f.name for f in fields(cls)}
    bad = sorted(set(table) - known)
    if bad:
        raise ConfigError(f"unknown {what} key(s): {', '.join(bad)}")
    try:
        return cls(**table)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _scenario(cfg: dict):
    from .dsp import ChannelConfig, DspFormat, ReceiverConfig
    sc = cfg.get("scenario", {})
    try:
        fmt = DspFormat.parse(sc.get("format", "QPSK"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    channel = _dataclass_from(ChannelConfig, cfg.get("channel", {}), "channel")
    rxt = dict(cfg.get("receiver", {}))
    archs = rxt.pop("architectures", None) or [rxt.pop("architecture", "evaluated")]
    rxs = [_dataclass_from(ReceiverConfig, {**rxt, "architecture": a}, "receiver") for a in archs]
    return fmt, sc, channel, rxs


def cmd_dsp(args, cfg, em: Emitter) -> int:
    from .dsp import measure_penalty, penalty_vs
    fmt, sc, channel, rxs = _scenario(cfg)
    n = int(sc.get("n_symbols", 2**16))
    seed = args.seed if args.seed is not None else int(sc.get("seed", 0))
    offsets = sc.get("snr_offsets_db", list(np.arange(0.0, 3.01, 0.5)))
    sweep = cfg.get("sweep", {})
    kw = dict(offsets_db=offsets, n_symbols=n, seed=seed, workers=args.workers)
    result = {"format": fmt.value, "n_symbols": n, "seed": seed, "runs": []}
    for rx in rxs:
        arch = rx.architecture.value
        curve = measure_penalty(fmt, channel, rx, **kw)
        em.table(f"ber_vs_snr_{arch}", curve.rows(), "csv")
        run = {"architecture": arch, "baseline_snr_db": curve.baseline_snr_db,
               "penalty_dB": curve.penalty_dB, "points": curve.rows()}
        if sweep:
            param = sweep.get("parameter")
            if param not in {f.name for f in fields(type(channel))}:
                raise ConfigError(f"sweep parameter {param!r} is not a channel field")
            pts = penalty_vs(param, sweep.get("values", []), fmt, channel, rx, **kw)
            em.table(f"penalty_vs_{param}_{arch}", pts, "csv")
            run["sweep"] = pts
        result["runs"].append(run)
    em.emit("dsp_result.json", to_json(result))
    return EXIT_OK


def cmd_calibrate_alpha(args, cfg, em: Emitter) -> int:
    from .dsp import AlphaScenario, CalibrationError, DspFormat, calibrate_alpha
    sc = dict(cfg.get("scenario", {}))
    if "format" in sc:
        sc["fmt"] = DspFormat.parse(sc.pop("format"))
    for key in ("alphas_Hz", "shifts_Hz"):
        if key in sc:
            sc[key] = tuple(float(v) for v in sc[key])
    if args.seed is not None:
        sc["seed"] = args.seed
    scenario = _dataclass_from(AlphaScenario, sc, "scenario")
    try:
        cal = calibrate_alpha(scenario)
    except CalibrationError as exc:
        log.error("%s", exc)
        return EXIT_VERIFY
    em.table("alpha_calibration", cal.rows(), args.format)
    em.emit("alpha_selection.json", to_json({
        "selected_alpha_GHz": cal.selected_Hz / 1e9,
        "admissible_alpha_GHz": [a / 1e9 for a in cal.admissible],
        "limit_GHz": cal.limit_Hz / 1e9}))
    return EXIT_OK


# entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML configuration file")
    common.add_argument("--out", help="output directory (default: stdout)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--verify", action="store_true",
                        help="compare against the embedded reference tables")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="oisl", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("constellations", parents=[common], help="list shells")
    f = sub.add_parser("feasibility", parents=[common], help="FEC margin tables")
    f.add_argument("--regime", choices=("shot", "ase", "both"), default="both")
    f.add_argument("--shell", default="all", help="comma-separated names or 'all'")
    d = sub.add_parser("doppler", parents=[common], help="Doppler extrema per shell")
    d.add_argument("--shell", default="all")
    d.add_argument("--link", default="both", help="k-to-k, k-to-k-1 or both")
    d.add_argument("--series", action="store_true", help="also dump time series")
    sub.add_parser("dsp", parents=[common], help="receiver simulation scenario")
    sub.add_parser("calibrate-alpha", parents=[common], help="coarse estimator scale search")
    return p


COMMANDS = {"constellations": cmd_constellations, "feasibility": cmd_feasibility,
            "doppler": cmd_doppler, "dsp": cmd_dsp, "calibrate-alpha": cmd_calibrate_alpha}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    manifest = RunManifest(args.command, args.config, args.out, args.seed)
    try:
        cfg = load_toml(args.config)
        em = Emitter(args.out, manifest)
        code = COMMANDS[args.command](args, cfg, em)
        em.close()
        return code
    except (ConfigError, CatalogueError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
