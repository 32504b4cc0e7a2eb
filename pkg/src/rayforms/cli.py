"""Command-line interface: ``python -m rayforms <command> ...``.

Exit status 0 on success, 2 when a precondition is violated (bad
discriminant, level, form or divisor), 1 when an internal check or an
oracle comparison fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .classgroup import (
    ClassGroup,
    format_structure,
    order_via_pairs,
    order_via_units,
    project,
    ring_class_group,
)
from .errors import InternalError, NotADivisor, ValidationError
from .forms import BQF, gamma0_equivalent, gamma1_equivalent, make_form, parse_triple, t_equivalent
from .galois import group_action_data, separation_stats
from .jsonio import enc_int, group_to_dict
from .quadfield import is_fundamental, make_field

# options whose values may start with '-' (negative discriminants)
_VALUE_OPTS = {"--dk", "--dk-range", "--level-range", "--form", "--level", "--to"}


def _join_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}") from None


def _form_json(q: BQF, extra: dict | None = None) -> dict:
    out = {"a": enc_int(q.a), "b": enc_int(q.b), "c": enc_int(q.c)}
    if extra:
        out.update(extra)
    return out


def _emit(obj) -> None:
    print(json.dumps(obj))


def _group(args) -> ClassGroup:
    if args.level < 1:
        raise ValidationError(f"level N = {args.level} must be >= 1")
    return ClassGroup(make_field(args.dk), args.level)


def _forms(args, g: ClassGroup, count: int) -> list[BQF]:
    texts = args.form or []
    if len(texts) != count:
        raise ValidationError(f"expected {count} --form argument(s), got {len(texts)}")
    forms = []
    for t in texts:
        q = parse_triple(t)
        forms.append(make_form(g.field, q.a, q.b, q.c, g.n))
    return forms


# commands ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    g = _group(args)
    if args.json:
        print(json.dumps(group_to_dict(g, with_table=args.table)))
        return 0
    print(f"C_{g.n}({g.field.d}): {g.order} classes, structure {format_structure(g.invariant_factors())}")
    for k, rep in enumerate(g):
        print(f"{k:4d}  {rep.form}    ({rep.form.a},{rep.form.b},{rep.form.c})  i={rep.i} pair=({rep.pair.u},{rep.pair.v})")
    if args.table:
        t = g.table()
        w = len(str(g.order - 1))
        print("table:")
        for row in t:
            print(" ".join(f"{x:{w}d}" for x in row))
    return 0


def cmd_structure(args) -> int:
    g = _group(args)
    inv = g.invariant_factors()
    if args.json:
        _emit({"d_K": g.field.d, "N": g.n, "order": g.order, "invariant_factors": inv})
    else:
        print(format_structure(inv))
    return 0


def _print_class(args, g: ClassGroup, q: BQF) -> None:
    k = g.class_index(q)
    rep = g[k]
    if args.json:
        _emit(_form_json(rep.form, {"index": k, "input_form": _form_json(q)}))
    else:
        print(f"{rep.form}    ({rep.form.a},{rep.form.b},{rep.form.c})  class {k}; computed form {q.triple}")


def cmd_multiply(args) -> int:
    g = _group(args)
    q1, q2 = _forms(args, g, 2)
    _print_class(args, g, g.multiply_forms(q1, q2))
    return 0


def cmd_invert(args) -> int:
    g = _group(args)
    (q,) = _forms(args, g, 1)
    _print_class(args, g, g.inverse_form(q))
    return 0


def cmd_equivalent(args) -> int:
    if args.gamma0 and args.t:
        raise ValidationError("--gamma0 and --t are mutually exclusive")
    g_field = make_field(args.dk)
    if args.level < 1:
        raise ValidationError(f"level N = {args.level} must be >= 1")
    texts = args.form or []
    if len(texts) != 2:
        raise ValidationError(f"expected 2 --form arguments, got {len(texts)}")
    qs = [parse_triple(t) for t in texts]
    qs = [make_form(g_field, q.a, q.b, q.c, args.level) for q in qs]
    if args.t:
        res, rel = t_equivalent(*qs), "T"
    elif args.gamma0:
        res, rel = gamma0_equivalent(args.level, *qs), "gamma0"
    else:
        res, rel = gamma1_equivalent(args.level, *qs), "gamma1"
    if args.json:
        _emit({"relation": rel, "N": args.level, "equivalent": res})
    else:
        print("true" if res else "false")
    return 0


def cmd_project(args) -> int:
    g = _group(args)
    m = args.to
    if m < 1 or g.n % m:
        raise NotADivisor(f"target level M = {m} does not divide N = {g.n}")
    (q,) = _forms(args, g, 1)
    target = ClassGroup(g.field, m)
    rep = project(g.rep_of(q), m, target=target)
    k = target.class_index(rep.form)
    if args.json:
        _emit(_form_json(rep.form, {"index": k, "M": m}))
    else:
        print(f"{rep.form}    ({rep.form.a},{rep.form.b},{rep.form.c})  class {k} of C_{m}({g.field.d})")
    return 0


def cmd_orders(args) -> int:
    lo, hi = sorted(args.dk_range)
    l1, l2 = sorted(args.level_range)
    if l1 < 1:
        raise ValidationError(f"levels must be >= 1, got {l1}")
    if hi >= 0:
        raise ValidationError(f"discriminant range must be negative, got {lo},{hi}")
    rows = []
    mismatches = 0
    t0 = time.perf_counter()
    for d in range(hi, lo - 1, -1):
        if d in (-3, -4) or not is_fundamental(d):
            continue
        f = make_field(d)
        for n in range(l1, l2 + 1):
            e = ClassGroup(f, n).order
            p = order_via_pairs(f, n)
            u = order_via_units(f, n)
            ok = e == p == u
            mismatches += not ok
            rows.append({"d_K": d, "N": n, "enumeration": e, "pairs": p, "units": u, "ok": ok})
    elapsed = time.perf_counter() - t0
    if args.json:
        _emit({"rows": rows, "mismatches": mismatches, "seconds": round(elapsed, 3)})
    else:
        print(f"{'d_K':>6} {'N':>3} {'enum':>6} {'pairs':>6} {'units':>6}")
        for r in rows:
            flag = "" if r["ok"] else "  MISMATCH"
            print(f"{r['d_K']:>6} {r['N']:>3} {r['enumeration']:>6} {r['pairs']:>6} {r['units']:>6}{flag}")
        print(f"{len(rows)} cases, {mismatches} mismatches, {elapsed:.2f} s")
    if mismatches:
        print(f"order oracles disagree in {mismatches} case(s)", file=sys.stderr)
        return 1
    return 0


def cmd_galois(args) -> int:
    g = _group(args)
    data = group_action_data(g)
    stats = separation_stats(data)
    if args.json:
        _emit({"data": [dd.to_json() for dd in data], "separation": stats.to_json()})
        return 0
    for k, (rep, dd) in enumerate(zip(g, data)):
        (r, s), (u, v) = dd.matrix.rows()
        print(f"{k:4d}  {rep.form}    matrix [[{r},{s}],[{u},{v}]] mod {dd.mod}  omega {dd.omega}  det {dd.det_mod_n}")
    print(
        f"separation: {stats.order} classes, {stats.distinct_matrices} matrices, "
        f"{stats.distinct_omegas} points, {stats.distinct_pairs} pairs, largest matrix fibre {stats.largest_matrix_fibre}"
    )
    return 0


def cmd_ringclass(args) -> int:
    g = _group(args)
    q = ring_class_group(g)
    if args.json:
        _emit(
            {
                "d_K": g.field.d,
                "N": g.n,
                "order": q.order,
                "blocks": q.blocks,
                "representatives": [_form_json(r) for r in q.representatives()],
                "table": q.table,
            }
        )
        return 0
    print(f"Gamma0({g.n}) quotient of C_{g.n}({g.field.d}): {q.order} classes")
    for k, (b, r) in enumerate(zip(q.blocks, q.representatives())):
        print(f"{k:4d}  {r}    ({r.a},{r.b},{r.c})  from classes {b}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rayforms", description="Extended form class groups C_N(d_K).")
    sub = p.add_subparsers(dest="command", required=True)

    def group_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--dk", type=int, required=True, help="fundamental discriminant d_K < -4")
        sp.add_argument("--level", type=int, required=True, help="level N >= 1")
        sp.add_argument("--json", action="store_true", help="JSON output")
        sp.set_defaults(func=func)
        return sp

    sp = group_cmd("enumerate", cmd_enumerate, "list the classes")
    sp.add_argument("--table", action="store_true", help="include the multiplication table")
    group_cmd("structure", cmd_structure, "invariant factors")
    for name, func, help_ in (
        ("multiply", cmd_multiply, "product of two classes"),
        ("invert", cmd_invert, "inverse of a class"),
    ):
        sp = group_cmd(name, func, help_)
        sp.add_argument("--form", action="append", help="form triple a,b,c")
    sp = group_cmd("equivalent", cmd_equivalent, "test equivalence of two forms")
    sp.add_argument("--form", action="append", help="form triple a,b,c")
    sp.add_argument("--gamma0", action="store_true", help="use Gamma0(N) instead of +-Gamma1(N)")
    sp.add_argument("--t", action="store_true", help="use the group generated by -I and T")
    sp = group_cmd("project", cmd_project, "image in C_M(d_K) for M | N")
    sp.add_argument("--to", type=int, required=True, help="target level M dividing N")
    sp.add_argument("--form", action="append", help="form triple a,b,c")
    group_cmd("galois", cmd_galois, "Galois-action matrices and points")
    group_cmd("ringclass", cmd_ringclass, "Gamma0(N) quotient")

    sp = sub.add_parser("orders", help="compare the three order computations over a range")
    sp.add_argument("--dk-range", type=_int_pair, required=True, help="A,B")
    sp.add_argument("--level-range", type=_int_pair, required=True, help="L1,L2")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_orders)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
