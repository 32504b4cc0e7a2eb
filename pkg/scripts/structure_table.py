"""Invariant factors of C_N(d_K) for every discriminant and level of a sweep.

Builds full multiplication tables; the default sweep (|d_K| <= 60, N <= 8)
finishes in seconds, the widest one in a few minutes.

    python scripts/structure_table.py --dk-min -60 --max-level 8
"""

import argparse
import sys

from rayforms.classgroup import ClassGroup, format_structure
from rayforms.config import SweepConfig


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--dk-min", type=int, default=-60)
    p.add_argument("--dk-max", type=int, default=-7)
    p.add_argument("--max-level", type=int, default=8)
    args = p.parse_args(argv)
    cfg = SweepConfig(args.dk_min, args.dk_max, args.max_level)
    for f in cfg.fields():
        cells = []
        for n in cfg.levels():
            g = ClassGroup(f, n)
            cells.append(f"N={n}: {format_structure(g.invariant_factors())}")
        print(f"{f.d:>5}  " + "; ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
