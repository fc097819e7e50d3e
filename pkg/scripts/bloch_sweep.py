#!/usr/bin/env python3
"""Tabulate the two-coin sphere of pure states as CSV.

Writes a theta/phi grid of ratio coordinates and sphere coordinates, the
same table as `permsym bloch --sweep K`, to a file or stdout:

    python scripts/bloch_sweep.py --steps 21 --out sphere.csv
"""

import argparse
import sys

from permsym import casebook

COLUMNS = ("theta", "phi", "re_z", "im_z", "p", "re_q", "im_q", "x", "y", "height")


def rows_as_csv(steps: int):
    yield ",".join(COLUMNS)
    for r in casebook.bloch_sweep(steps):
        z = r["z"]
        re_z, im_z = ("inf", "inf") if z is None else (repr(z.real), repr(z.imag))
        yield ",".join(
            (
                repr(r["theta"]),
                repr(r["phi"]),
                re_z,
                im_z,
                repr(r["p"]),
                repr(r["q"].real),
                repr(r["q"].imag),
                repr(r["x"]),
                repr(r["y"]),
                repr(r["height"]),
            )
        )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=13, help="polar rings (>= 2)")
    parser.add_argument("--out", default="-", help="output file, - for stdout")
    args = parser.parse_args()

    lines = "\n".join(rows_as_csv(args.steps)) + "\n"
    if args.out == "-":
        sys.stdout.write(lines)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(lines)
        print(f"wrote {args.steps * args.steps} grid points to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
