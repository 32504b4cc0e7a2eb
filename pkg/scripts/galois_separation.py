"""How often the Galois-action matrix mod N alone, the point omega alone,
and the pair distinguish the classes of C_N(d_K).  Purely descriptive:
nothing here asserts that either coordinate separates classes.

    python scripts/galois_separation.py --dk-min -100 --max-level 12
"""

import argparse
import sys

from rayforms.classgroup import ClassGroup
from rayforms.config import SweepConfig
from rayforms.galois import group_action_data, separation_stats


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--dk-min", type=int, default=-100)
    p.add_argument("--dk-max", type=int, default=-7)
    p.add_argument("--max-level", type=int, default=12)
    args = p.parse_args(argv)
    cfg = SweepConfig(args.dk_min, args.dk_max, args.max_level)

    groups = matrix_sep = pair_sep = 0
    print("d_K,N,order,distinct_matrices,distinct_omegas,distinct_pairs,largest_matrix_fibre")
    for f in cfg.fields():
        for n in cfg.levels():
            s = separation_stats(group_action_data(ClassGroup(f, n)))
            groups += 1
            matrix_sep += s.distinct_matrices == s.order
            pair_sep += s.distinct_pairs == s.order
            print(f"{f.d},{n},{s.order},{s.distinct_matrices},{s.distinct_omegas},{s.distinct_pairs},{s.largest_matrix_fibre}")
    print(f"{groups} groups: matrix separates classes in {matrix_sep}, pair in {pair_sep}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
