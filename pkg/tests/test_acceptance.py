"""Acceptance criteria, one test each.  Every test prints a single
``[PASS]`` / ``[FAIL]`` line to the terminal (capture is bypassed) and then
asserts, so the summary is visible in a plain ``pytest -v`` run.

Run standalone with ``python tests/test_acceptance.py``.
"""

import json
import random
import time
from math import gcd

import pytest

from rayforms.arith import Mat2Z, random_gamma1_word
from rayforms.classgroup import ClassGroup, order_via_pairs, order_via_units, principal_form, project, ring_class_group
from rayforms.cli import run
from rayforms.config import SampleConfig, SweepConfig
from rayforms.forms import BQF, apply_matrix, gamma1_equivalent, reduced_forms, t_canonical, t_equivalent
from rayforms.galois import action_datum, canonical_mod, frame_matrix, framed_inverse_ideal
from rayforms.jsonio import parse_group
from rayforms.quadfield import ideal_norm, make_field

from oracles import brute_reduced_forms, composition_table, oracle_reduce

SWEEP = SweepConfig()
SAMPLES = SampleConfig()


@pytest.fixture
def report(capsys):
    def _report(num, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return _report


def _cli_group(capsys, d, n):
    code = run(["enumerate", "--dk", str(d), "--level", str(n), "--json"])
    out, _ = capsys.readouterr()
    assert code == 0
    return parse_group(out)


def _bijective_match(n, got, listed):
    """Whether every expected form is gamma1-equivalent to exactly one computed form and vice versa."""
    hits = [[gamma1_equivalent(n, q, p) for p in listed] for q in got]
    rows_ok = all(sum(r) == 1 for r in hits)
    cols_ok = all(sum(hits[i][j] for i in range(len(got))) == 1 for j in range(len(listed)))
    return len(got) == len(listed) and rows_ok and cols_ok


def test_c01_c3_minus8(report, capsys):
    t0 = time.perf_counter()
    pg = _cli_group(capsys, -8, 3)
    ok = pg.order == 2 and _bijective_match(3, [c.form for c in pg.classes], [BQF(1, 0, 2), BQF(2, 0, 1)])
    ok = ok and pg.invariant_factors == [2]
    dt = time.perf_counter() - t0
    report(1, "C_3(-8) has the two listed classes, structure Z/2", ok and dt < 1, f"{dt:.3f} s")


def test_c02_c2_minus20(report, capsys):
    t0 = time.perf_counter()
    pg = _cli_group(capsys, -20, 2)
    listed = [BQF(1, 0, 5), BQF(5, 0, 1), BQF(3, -2, 2), BQF(7, -6, 2)]
    ok = pg.order == 4 and _bijective_match(2, [c.form for c in pg.classes], listed)
    ok = ok and pg.invariant_factors == [4]
    g = ClassGroup(make_field(-20), 2)
    inv = g.inverse(BQF(7, -6, 2))
    ok = ok and gamma1_equivalent(2, inv.form, BQF(3, -2, 2))
    prod = g.multiply(BQF(3, -2, 2), BQF(7, -6, 2))
    ok = ok and gamma1_equivalent(2, prod.form, BQF(1, 0, 5))
    code = run(["multiply", "--dk", "-20", "--level", "2", "--form", "3,-2,2", "--form", "7,-6,2", "--json"])
    out, _ = capsys.readouterr()
    obj = json.loads(out)
    ok = ok and code == 0 and (obj["a"], obj["b"], obj["c"]) == (1, 0, 5)
    dt = time.perf_counter() - t0
    report(2, "C_2(-20): four listed classes, Z/4, inverse pair multiplies to 1", ok and dt < 1, f"{dt:.3f} s")


def test_c03_c6_minus20(report, capsys):
    t0 = time.perf_counter()
    pg = _cli_group(capsys, -20, 6)
    listed = [
        BQF(1, 0, 5),
        BQF(5, 0, 1),
        BQF(29, -26, 6),
        BQF(49, 34, 6),
        BQF(7, -6, 2),
        BQF(83, 48, 7),
        BQF(107, -80, 15),
        BQF(43, -18, 2),
    ]
    ok = pg.order == 8 and _bijective_match(6, [c.form for c in pg.classes], listed)
    dt = time.perf_counter() - t0
    report(3, "C_6(-20): eight classes, bijective with the listed forms", ok and dt < 5, f"{dt:.3f} s")


def test_c04_order_oracles(report):
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for f in SWEEP.fields():
        for n in SWEEP.levels():
            e = ClassGroup(f, n).order
            p, u = order_via_pairs(f, n), order_via_units(f, n)
            cases += 1
            if not e == p == u:
                bad.append((f.d, n, e, p, u))
    dt = time.perf_counter() - t0
    report(4, "enumeration = pairs = units over the sweep", not bad and dt < 300, f"{cases} cases, {len(bad)} mismatches, {dt:.1f} s")


def test_c05_classical_degeneration(report):
    bad = []
    for f in SWEEP.fields():
        g = ClassGroup(f, 1)
        forms, otable = composition_table(f.d)
        if g.order != len(forms) or g.order != len(reduced_forms(f.d)):
            bad.append((f.d, "order"))
            continue
        index = {q: k for k, q in enumerate(forms)}
        phi = [index[oracle_reduce(rep.form.triple)] for rep in g]
        if sorted(phi) != list(range(g.order)):
            bad.append((f.d, "bijection"))
            continue
        t = g.table()
        if any(phi[t[i][j]] != otable[phi[i]][phi[j]] for i in range(g.order) for j in range(g.order)):
            bad.append((f.d, "table"))
    report(5, "N = 1 matches the reduced-form count and the Dirichlet table", not bad, f"{len(SWEEP.discriminants())} fields, failures {bad}")


def test_c06_group_law(report):
    rng = random.Random(SAMPLES.seed)
    fields = SWEEP.fields()
    groups = {}
    failures = []
    for s in range(SAMPLES.samples):
        f = rng.choice(fields)
        n = rng.choice(list(SWEEP.levels()))
        g = groups.get((f.d, n))
        if g is None:
            g = groups[(f.d, n)] = ClassGroup(f, n)
        i, j, k = (rng.randrange(g.order) for _ in range(3))
        x, y, z = g[i].form, g[j].form, g[k].form
        ci = g.class_index
        mul = g.multiply_forms
        xy = ci(mul(x, y))
        checks = {
            "assoc": ci(mul(g[xy].form, z)) == ci(mul(x, g[ci(mul(y, z))].form)),
            "identity": ci(mul(x, principal_form(f))) == i,
            "inverse": ci(mul(x, g.inverse_form(x))) == g.identity_index and ci(g.inverse_form(g.inverse_form(x))) == i,
            "commute": xy == ci(mul(y, x)),
        }
        x2 = apply_matrix(x, random_gamma1_word(rng, n, SAMPLES.max_word))
        y2 = apply_matrix(y, random_gamma1_word(rng, n, SAMPLES.max_word))
        checks["rep-independence"] = gamma1_equivalent(n, x, x2) and ci(mul(x2, y2)) == xy
        failures += [(f.d, n, i, j, k, name) for name, good in checks.items() if not good]
    report(6, "group law on random samples", not failures, f"{SAMPLES.samples} samples, {len(failures)} failures")


def test_c07_projection(report):
    failures = []
    checked = 0
    for f in SWEEP.fields():
        groups = {n: ClassGroup(f, n) for n in SWEEP.levels()}
        for n, g in groups.items():
            t = g.table()
            for m in (m for m in SWEEP.levels() if n % m == 0):
                h = groups[m]
                u = h.table()
                img = [h.class_index(project(rep, m, target=h)) for rep in g]
                if set(img) != set(range(h.order)):
                    failures.append((f.d, n, m, "not onto"))
                if any(img[t[i][j]] != u[img[i]][img[j]] for i in range(g.order) for j in range(g.order)):
                    failures.append((f.d, n, m, "not a homomorphism"))
                checked += 1
    report(7, "projection C_N -> C_M is a surjective homomorphism", not failures, f"{checked} (d_K, N, M) cases, failures {failures}")


def _random_form(rng, d):
    q = rng.choice(reduced_forms(d))
    return apply_matrix(q, random_gamma1_word(rng, 1, 6) @ _random_sl2(rng))


def _random_sl2(rng):
    g = Mat2Z.identity()
    for _ in range(rng.randint(0, 4)):
        g = g @ rng.choice([Mat2Z(0, -1, 1, 0), Mat2Z(1, 1, 0, 1), Mat2Z(1, -1, 0, 1), Mat2Z(1, 0, 1, 1)])
    return g


def test_c08_t_equivalence(report):
    rng = random.Random(SAMPLES.seed + 8)
    discs = SWEEP.discriminants()
    levels = (2, 3, 4, 6, 12)
    failures = []
    equiv_pairs = 0
    gamma_checks = 0
    pairs = 0
    while pairs < SAMPLES.samples:
        d = rng.choice(discs)
        q = _random_form(rng, d)
        mode = rng.randrange(3)
        if mode == 0:
            k = rng.randint(-30, 30)
            sign = rng.choice([1, -1])
            q2 = apply_matrix(q, Mat2Z(sign, sign * k, 0, sign))
        elif mode == 1:
            # same leading coefficient, other middle coefficient
            q2 = next((r for r in (_random_form(rng, d) for _ in range(50)) if r.a == q.a), _random_form(rng, d))
        else:
            q2 = _random_form(rng, d)
        pairs += 1
        te = t_equivalent(q, q2)
        if te != (t_canonical(q) == t_canonical(q2)):
            failures.append((q.triple, q2.triple, "canonical"))
        if te:
            equiv_pairs += 1
            for n in levels:
                if gcd(n, q.a) == 1:
                    gamma_checks += 1
                    if not gamma1_equivalent(n, q, q2):
                        failures.append((q.triple, q2.triple, n))
    report(
        8,
        "T-equivalence matches T-canonical forms and implies gamma1-equivalence",
        not failures and equiv_pairs > 0 and gamma_checks > 0,
        f"{pairs} pairs, {equiv_pairs} equivalent, {gamma_checks} level checks, {len(failures)} failures",
    )


def test_c09_framing(report):
    failures = []
    classes = 0
    for f in SWEEP.fields():
        for n in SWEEP.levels():
            for rep in ClassGroup(f, n):
                classes += 1
                ideal, basis = framed_inverse_ideal(f, rep.form, n)
                a = frame_matrix(f, ideal, basis)
                if canonical_mod(a, n) != action_datum(rep, f).matrix:
                    failures.append((f.d, n, rep.form.triple, "matrix"))
                if a.det * ideal_norm(ideal) != 1:
                    failures.append((f.d, n, rep.form.triple, "det"))
    report(9, "framing matrix of a^-1 matches the action matrix mod N", not failures, f"{classes} classes, {len(failures)} failures")


def test_c10_ring_class(report):
    q = ring_class_group(-20, 3)
    brute = len(brute_reduced_forms(-180))
    g = q.group
    t = g.table()
    hom = all(q.block_of[t[i][j]] == q.table[q.block_of[i]][q.block_of[j]] for i in range(g.order) for j in range(g.order))
    onto = all(q.blocks) and sorted(k for b in q.blocks for k in b) == list(range(g.order))
    ok = q.order == 4 == brute and hom and onto
    report(10, "ring class quotient of C_3(-20) has order h(-180) = 4", ok, f"order {q.order}, brute force {brute}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
