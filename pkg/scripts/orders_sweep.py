"""Compare the three order computations over a sweep and write a CSV.

    python scripts/orders_sweep.py --dk-min -200 --dk-max -7 --max-level 12 --out orders.csv
"""

import argparse
import csv
import sys
import time

from rayforms.classgroup import ClassGroup, order_via_pairs, order_via_units
from rayforms.config import SweepConfig


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--dk-min", type=int, default=SweepConfig.dk_min)
    p.add_argument("--dk-max", type=int, default=SweepConfig.dk_max)
    p.add_argument("--max-level", type=int, default=SweepConfig.max_level)
    p.add_argument("--out", default="-")
    args = p.parse_args(argv)
    cfg = SweepConfig(args.dk_min, args.dk_max, args.max_level)

    rows = []
    t0 = time.perf_counter()
    for f in cfg.fields():
        for n in cfg.levels():
            g = ClassGroup(f, n)
            rows.append((f.d, n, g.order, order_via_pairs(f, n), order_via_units(f, n)))
    dt = time.perf_counter() - t0

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["d_K", "N", "enumeration", "pairs", "units"])
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()
    bad = [r for r in rows if not r[2] == r[3] == r[4]]
    print(f"{len(rows)} cases in {dt:.1f} s, {len(bad)} mismatches", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
