#!/usr/bin/env python3
"""Walk one level-triggered doubly sequential trial and print its transcript."""

import argparse

from seqfuse import SchemeKind, encode_message
from seqfuse.experiments import (
    ExperimentConfig,
    GridCell,
    build_scheme_config,
    build_world,
    calibrate_cell,
    run_trial,
)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--info", type=float, default=100.0)
    args = p.parse_args()

    cfg = ExperimentConfig(schemes=("lt-dsdmle",), channel="rayleigh",
                           cells=(GridCell(args.info, 3.92, 3.92, 5, 0.0, 1.5),),
                           trials=1, master_seed=0, bits_v=1, bits_u=1,
                           x_re=1.0, x_im=1.0, calibrate_x="actual")
    cell = cfg.cells[0]
    world = build_world(cfg, cell)
    calib = calibrate_cell(cfg, 0, cell, world, n_percentile=20_000)
    sconf = build_scheme_config(cfg, cell, world, calib, SchemeKind.LT_DSDMLE, 0)
    result, steps = run_trial(sconf, world, args.seed, collect_messages=True)

    print(f"thresholds d={calib.d[0]:.3f} e={calib.e[0]:.3f} "
          f"spans phi={calib.phi[0]:.3f} theta={calib.theta[0]:.3f}")
    for t, msgs in steps:
        for m in msgs:
            blob, nbits = encode_message(m, sconf)
            print(f"t={t:3d}  {type(m).__name__:5s} sensor={m.sensor} "
                  f"frame={blob.hex()}/{nbits}b")
    print(f"stopped at t={result.stop_time}  estimate={result.estimate:+.4f} "
          f"(truth {result.true_x_re:+.4f})  u_tilde={result.u_tilde:.2f}")
    print(f"bits: v={result.bits_v} u={result.bits_u} final={result.bits_final}")


if __name__ == "__main__":
    main()
