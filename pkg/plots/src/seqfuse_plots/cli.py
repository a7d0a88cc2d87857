"""plots <csv-dir> <out-dir> [--fig figN]"""

from __future__ import annotations

import argparse
import os
import sys

from .render import ColumnError, render
from .specs import FIGURES


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plots",
                                     description="render figures from sweep CSVs")
    parser.add_argument("csv_dir", help="directory holding the sweep CSVs")
    parser.add_argument("out_dir", help="directory for the rendered images")
    parser.add_argument("--fig", action="append", default=None,
                        help="figure id (fig1..fig9, repeatable; default all)")
    args = parser.parse_args(argv)

    wanted = args.fig or sorted(FIGURES)
    unknown = [f for f in wanted if f not in FIGURES]
    if unknown:
        print(f"error: unknown figures {unknown}; known: {sorted(FIGURES)}",
              file=sys.stderr)
        return 2
    os.makedirs(args.out_dir, exist_ok=True)
    rc = 0
    for fig_id in wanted:
        spec = FIGURES[fig_id]
        csv_path = os.path.join(args.csv_dir, spec.csv_name)
        out_path = os.path.join(args.out_dir, f"{fig_id}.png")
        if not os.path.exists(csv_path):
            print(f"error: {csv_path} not found", file=sys.stderr)
            rc = 2
            continue
        try:
            render(csv_path, spec, out_path)
        except ColumnError as exc:
            print(f"error: {exc}", file=sys.stderr)
            rc = 2
            continue
        print(f"[plots] {fig_id} -> {out_path}")
    return rc


if __name__ == "__main__":
    raise SystemExit(main())
