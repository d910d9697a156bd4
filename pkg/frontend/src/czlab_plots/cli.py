"""czlab-plot: render a czlab CSV report to an image file.

Usage:
    czlab-plot <kind> --in <csv> --out <png> [--log-x] [--no-log-y]

kind is one of ratio_divergence, convergence_curve, cz_contrast.  Exits
nonzero (without writing a file) on malformed CSV, missing columns or
empty data.
"""

from __future__ import annotations

import argparse
import sys

from .reader import CsvFormatError, EmptyDataError, MissingColumnError
from .render import KINDS, PlotJob, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="czlab-plot",
                                     description=__doc__.split("\n\n")[0])
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="csv_path", required=True, metavar="CSV")
    parser.add_argument("--out", dest="out_path", required=True, metavar="IMAGE")
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--no-log-y", dest="log_y", action="store_false")
    ns = parser.parse_args(argv)
    job = PlotJob(ns.kind, ns.csv_path, ns.out_path,
                  log_x=ns.log_x, log_y=ns.log_y)
    try:
        path = render(job)
    except (CsvFormatError, MissingColumnError, EmptyDataError,
            FileNotFoundError) as exc:
        print(f"czlab-plot: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
