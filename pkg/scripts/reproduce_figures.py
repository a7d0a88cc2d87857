#!/usr/bin/env python3
"""Run the nine figure sweeps and render the figures.

Equivalent to:

    seqfuse figures --out <out>/csv --trials <n> --seed <s> --threads <t>
    plots <out>/csv <out>/img

At the default 10^4 trials the sweeps take a while; pass --trials 200 for a
quick smoke run.
"""

import argparse
import os
import sys

from seqfuse.cli import main as seqfuse_main


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="figures_out")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=2)
    args = p.parse_args()

    csv_dir = os.path.join(args.out, "csv")
    img_dir = os.path.join(args.out, "img")
    rc = seqfuse_main(["figures", "--out", csv_dir, "--trials", str(args.trials),
                       "--seed", str(args.seed), "--threads", str(args.threads)])
    if rc != 0:
        return rc
    try:
        from seqfuse_plots.cli import main as plots_main
    except ImportError:
        print("seqfuse-plots not installed; CSVs are in", csv_dir, file=sys.stderr)
        return 0
    return plots_main([csv_dir, img_dir])


if __name__ == "__main__":
    raise SystemExit(main())
