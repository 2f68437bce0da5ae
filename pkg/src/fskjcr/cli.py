"""Command line front end for the named experiments.

    fskjcr <experiment> --config <path> [--seed N] [--out DIR]
           [--paper-scale] [--set KEY=VALUE ...]

Exit codes: 0 success, 2 configuration error, 3 runtime or IO error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .experiments import EXPERIMENTS, config_from_items, run_experiment
from .results import write_csv


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat key=value lines; blank lines and # comments are skipped."""
    items: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        items[key.strip()] = value.strip()
    return items


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fskjcr",
        description="Run a named waveform experiment and write its CSV panels.",
    )
    parser.add_argument("experiment", choices=sorted(EXPERIMENTS))
    parser.add_argument("--config", required=True, help="key=value config file")
    parser.add_argument("--seed", type=int, default=None, help="override config seed")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument(
        "--paper-scale",
        action="store_true",
        help="multiply realization counts by 10",
    )
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        dest="overrides",
        help="override one config value (repeatable)",
    )
    args = parser.parse_args(argv)

    try:
        items = parse_config_file(args.config)
        for kv in args.overrides:
            key, sep, value = kv.partition("=")
            if not sep:
                raise ValueError(f"--set needs KEY=VALUE, got {kv!r}")
            items[key.strip()] = value.strip()
        config = config_from_items(items)
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        if args.paper_scale:
            config = config.scaled(10)
    except (ValueError, OSError) as exc:
        print(f"fskjcr: config error: {exc}", file=sys.stderr)
        return 2

    try:
        tables = run_experiment(args.experiment, config)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for panel, table in tables.items():
            path = write_csv(table, out_dir / f"{args.experiment}_{panel}.csv")
            print(path)
    except Exception as exc: # noqa: BLE001 - boundary of the process
        print(f"fskjcr: runtime error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
