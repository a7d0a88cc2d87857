"""Command line interface.

Subcommands: ``calibrate`` (write per-cell calibration reports), ``run`` (one
grid cell), ``sweep`` (full grid to CSV), ``figures`` (all nine figure sweeps,
one CSV each).  Sweep definitions come either from a flat key=value config
file or, for ``figures``, from the built-in definitions.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .calibration import CalibrationReport
from .errors import ConfigError
from .experiments import (
    ExperimentConfig,
    build_world,
    calibrate_cell,
    emit_csv,
    product_grid,
    run_sweep,
)
from .figures import figure_sweeps

_LIST_KEYS = {"schemes", "info_target", "t_v", "t_u", "sensors", "snr_db", "x_bound"}
_SCALAR_KEYS = {"channel", "trials", "master_seed", "bits_v", "bits_u",
                "x_re", "x_im", "calibrate_x", "obs_theta", "obs_sigma", "out",
                "calibration"}


def parse_config_file(path: str) -> dict:
    """Flat key=value config; '#' starts a comment; unknown keys are rejected."""
    values = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{ln}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip()
            if key not in _LIST_KEYS | _SCALAR_KEYS:
                raise ConfigError(f"{path}:{ln}: unknown key {key!r}")
            values[key] = raw.strip()
    return values


def config_from_file(path: str, trials=None, seed=None, out=None) -> ExperimentConfig:
    raw = parse_config_file(path)

    def lst(key, conv=float, default=None):
        if key not in raw or not raw[key]:
            if default is None:
                raise ConfigError(f"config needs {key}")
            return default
        return tuple(conv(v.strip()) for v in raw[key].split(","))

    info = lst("info_target")
    t_v = lst("t_v", default=(2.0,) * len(info))
    t_u = lst("t_u", default=t_v)
    if not (len(info) == len(t_v) == len(t_u)):
        raise ConfigError("info_target, t_v, t_u must pair up element-wise")
    cells = product_grid(tuple(zip(info, t_v, t_u)),
                         lst("sensors", int, (5,)), lst("snr_db", float, (0.0,)),
                         lst("x_bound", float, (5.0,)))
    opt = lambda key, conv: conv(raw[key]) if raw.get(key) else None
    calibration = None
    if raw.get("calibration"):
        with open(raw["calibration"]) as fh:
            calibration = CalibrationReport.from_text(fh.read())
    return ExperimentConfig(
        schemes=lst("schemes", str),
        channel=raw.get("channel", "awgn"),
        cells=cells,
        trials=int(trials if trials is not None else raw.get("trials", 10_000)),
        master_seed=int(seed if seed is not None else raw.get("master_seed", 0)),
        bits_v=int(raw.get("bits_v", 1)),
        bits_u=int(raw.get("bits_u", 1)),
        x_re=opt("x_re", float), x_im=opt("x_im", float),
        calibrate_x=raw.get("calibrate_x", "worst"),
        obs_theta=opt("obs_theta", float), obs_sigma=opt("obs_sigma", float),
        calibration=calibration,
        output_path=out if out is not None else raw.get("out") or None)


def _restrict_schemes(cfg: ExperimentConfig, schemes) -> ExperimentConfig:
    if not schemes:
        return cfg
    missing = [s for s in schemes if s not in cfg.schemes]
    if missing:
        raise ConfigError(f"schemes not in config: {missing}")
    return dataclasses.replace(cfg, schemes=tuple(s for s in cfg.schemes if s in schemes))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="seqfuse",
                                     description="sequential decentralized estimation harness")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_config=True):
        if need_config:
            p.add_argument("--config", required=True, help="flat key=value sweep definition")
        p.add_argument("--seed", type=int, default=None, help="64-bit master seed")
        p.add_argument("--trials", type=int, default=None, help="trials per grid cell")
        p.add_argument("--out", default=None, help="output path (file or directory)")
        p.add_argument("--threads", type=int, default=1, help="worker processes over grid cells")
        p.add_argument("--scheme", action="append", default=None,
                       help="restrict to a scheme (repeatable)")

    common(sub.add_parser("calibrate", help="write calibration reports for every grid cell"))
    common(sub.add_parser("run", help="run the first grid cell and print its aggregates"))
    common(sub.add_parser("sweep", help="run the full grid and write one CSV"))
    common(sub.add_parser("figures", help="run the nine figure sweeps"), need_config=False)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _print_aggregates(aggs):
    for a in aggs:
        print(f"{a.scheme:12s} info={a.info_target:<8g} K={a.n_sensors:<3d} "
              f"snr={a.snr_db:<5g} X={a.x_bound:<7g} mse={a.mse:.6g} "
              f"(+-{a.mse_ci95:.2g}) mean_stop={a.mean_stop:.6g} "
              f"bits(v/u/final)={a.bits_v:.5g}/{a.bits_u:.5g}/{a.bits_final:.5g}")


def _dispatch(args) -> int:
    if args.command == "figures":
        out_dir = args.out or "figures_out"
        os.makedirs(out_dir, exist_ok=True)
        trials = args.trials if args.trials is not None else 10_000
        seed = args.seed if args.seed is not None else 0
        for stem, cfg in figure_sweeps(trials, seed).items():
            cfg = _restrict_schemes(cfg, args.scheme)
            cfg = dataclasses.replace(cfg, output_path=os.path.join(out_dir, f"{stem}.csv"))
            print(f"[figures] {stem}: {len(cfg.cells)} cells x {len(cfg.schemes)} schemes "
                  f"x {cfg.trials} trials")
            run_sweep(cfg, threads=args.threads)
        return 0

    cfg = config_from_file(args.config, trials=args.trials, seed=args.seed, out=args.out)
    cfg = _restrict_schemes(cfg, args.scheme)

    if args.command == "calibrate":
        out_dir = args.out or "."
        os.makedirs(out_dir, exist_ok=True)
        for g, cell in enumerate(cfg.cells):
            world = build_world(cfg, cell)
            report = calibrate_cell(cfg, g, cell, world)
            path = os.path.join(out_dir, f"calibration.cell{g}.txt")
            with open(path, "w") as fh:
                fh.write(report.to_text())
            print(f"[calibrate] cell {g}: {path}")
        return 0

    if args.command == "run":
        cfg = dataclasses.replace(cfg, cells=cfg.cells[:1], output_path=None)
        aggs = run_sweep(cfg, threads=1)
        _print_aggregates(aggs)
        if args.out:
            emit_csv(aggs, args.out)
        return 0

    if args.command == "sweep":
        if not cfg.output_path:
            raise ConfigError("sweep needs --out or out= in the config")
        aggs = run_sweep(cfg, threads=args.threads)
        _print_aggregates(aggs)
        print(f"[sweep] wrote {cfg.output_path}")
        return 0

    raise ConfigError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
