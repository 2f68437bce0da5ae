"""Command line front end: ``fskjcr-figs <experiment> --in DIR --out DIR``."""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, make_spec, render
from .reader import SchemaError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fskjcr-figs",
        description="Render experiment CSV panels into an SVG figure.",
    )
    parser.add_argument("experiment", choices=list(FIGURES))
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding the experiment CSV files")
    parser.add_argument("--out", dest="out_dir", default=".",
                        help="directory for the SVG output")
    args = parser.parse_args(argv)

    spec = make_spec(args.experiment, args.in_dir, args.out_dir)
    try:
        path = render(spec)
    except SchemaError as err:
        print(f"fskjcr-figs: {err}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
