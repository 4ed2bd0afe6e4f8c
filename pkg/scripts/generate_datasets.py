#!/usr/bin/env python3
"""Regenerate every bundled dataset (CSV + SVG) from the configs/ directory.

Each config is an independent sweep; outputs land under data/ as declared by
the configs' out_prefix. The 2D maps take a few minutes on one core.
"""

import argparse
import pathlib
import sys
import time

from pblab import cli

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"

# ordered cheapest-first so partial runs still produce something useful
SWEEPS = [
    "cavity_drive_resonant.cfg",
    "cavity_drive_offresonant.cfg",
    "atom_drive_resonant.cfg",
    "twophoton_drive_resonant.cfg",
    "atom_drive_map2d.cfg",
    "cavity_drive_map2d.cfg",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--jobs", type=int, default=1, help="worker processes per sweep")
    parser.add_argument("--points", type=int, help="override every sweep's point count")
    parser.add_argument("--only", nargs="*", help="run only these config file names")
    args = parser.parse_args()

    names = args.only if args.only else SWEEPS
    for name in names:
        path = CONFIG_DIR / name
        argv = ["sweep", "--config", str(path), "--jobs", str(args.jobs)]
        if args.points:
            argv += ["--points", str(args.points)]
        print(f"== {name}")
        start = time.monotonic()
        code = cli.main(argv)
        print(f"   done in {time.monotonic() - start:.1f} s (exit {code})")
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
