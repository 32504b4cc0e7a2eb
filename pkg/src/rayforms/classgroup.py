"""The extended form class group C_N(d_K) = Q_N(d_K) / +-Gamma1(N).

Classes correspond to ray classes modulo N*O_K through
``[Q] -> class of [omega_Q, 1]``.  Enumeration follows the pairing of each
reduced form with residue pairs ``(u, v)`` mod N; multiplication and
inversion go through ideals and come back to forms by lifting to SL2(Z).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field
from math import gcd

from .arith import (
    Mat2Z,
    ResiduePair,
    canonical_pairs,
    complete_column,
    crt,
    euler_phi,
    factorize,
    kronecker,
    sl2_height_order,
    sl2_lift,
)
from .errors import (
    InternalError,
    LevelViolation,
    NotADivisor,
    NotIntegral,
    NotPrimeToLevel,
    ValidationError,
)
from .forms import (
    BQF,
    apply_matrix,
    check_form,
    form_from_int_root,
    form_from_root,
    gamma0_equivalent,
    gamma0_key,
    gamma1_equivalent,
    gamma1_key,
    reduced_forms,
    root,
)
from .quadfield import (
    Field,
    FracIdeal,
    cconj,
    cmul,
    ideal_conj,
    ideal_inverse,
    int_norm,
    is_prime_to,
    make_field,
)


@dataclass(frozen=True)
class FormClassRep:
    """A class of C_N(d_K): representative form plus its enumeration data.

    ``i`` indexes the reduced form and ``pair`` is the residue pair ``(u, v)``
    it was built from; both are None for classes produced outside
    :func:`enumerate_classes`.
    """

    n: int
    form: BQF
    i: int | None = None
    pair: ResiduePair | None = None

    def __str__(self):
        return str(self.form)


def principal_form(f: Field) -> BQF:
    return BQF(1, f.b, f.c)


def level_transform(q: BQF, n: int) -> Mat2Z:
    """First SL2(Z) matrix (by column height) moving ``q`` into Q_n."""
    for r, u in sl2_height_order():
        if gcd(n, q(r, u)) == 1:
            return complete_column(r, u)
    raise AssertionError("unreachable")  # pragma: no cover


def valid_pairs(q: BQF, n: int) -> list[ResiduePair]:
    """Canonical pairs ``(u, v)`` mod n with ``gcd(n, q(v, -u)) == 1``."""
    return [p for p in canonical_pairs(n) if gcd(n, q(p.v, -p.u)) == 1]


def ideal_of_form(f: Field, q: BQF, n: int | None = None) -> FracIdeal:
    """The lattice ``[omega_Q, 1]``."""
    check_form(q, f)
    if n is not None and not q.in_level(n):
        raise LevelViolation(f"{q.triple} is not in Q_{n}")
    # a * omega_Q = tau + (b_K - b) / 2
    return FracIdeal.from_int_vectors(f, q.a, [(1, (f.b - q.b) // 2), (0, q.a)])


def form_of_ideal(f: Field, n: int, ideal: FracIdeal) -> BQF:
    """A form whose class maps to the ray class of ``ideal^-1``.

    ``ideal`` must be integral and prime to n.  With ``ideal^-1 = [xi1, xi2]``
    oriented and ``1 = u xi1 + v xi2``, the form has root ``sigma(xi1 / xi2)``
    for ``sigma = sl2_lift(u, v, n)``.
    """
    if not ideal.is_integral():
        raise NotIntegral(f"{ideal!r} is not integral")
    if not is_prime_to(ideal, n):
        raise NotPrimeToLevel(f"{ideal!r} is not prime to {n}")
    inv = ideal_inverse(ideal)
    # 1 has coordinates (0, m) over (tau, 1) in the lattice m * inv
    v, rv = divmod(inv.m, inv.h22)
    u, ru = divmod(-v * inv.h12, inv.h11)
    if ru or rv:
        raise InternalError("1 is not in the inverse of an integral ideal")
    sigma = sl2_lift(u, v, n)
    (p1, q1), (p2, q2) = inv.vectors
    num = (sigma.r * p1 + sigma.s * p2, sigma.r * q1 + sigma.s * q2)
    den = (sigma.u * p1 + sigma.v * p2, sigma.u * q1 + sigma.v * q2)
    return form_from_int_root(f, cmul(f, num, cconj(f, den)), int_norm(f, den), n)


def _composition_column(q1: BQF, q2: BQF, n: int) -> Mat2Z:
    """First rho (by column height) with ``gcd(q2(r, u), a1 * n) == 1``."""
    m = q1.a * n
    for r, u in sl2_height_order():
        a3 = q2(r, u)
        if gcd(a3, m) == 1:
            return complete_column(r, u)
    raise AssertionError("unreachable")  # pragma: no cover


def dirichlet_data(q1: BQF, q2: BQF, n: int = 1) -> tuple[Mat2Z, BQF, BQF]:
    """``(rho, Q3, composed)`` with ``Q3 = Q2 rho`` and the united composed form.

    ``composed = (a1 a3, B, (B^2 - d) / 4 a1 a3)`` with ``B = b1 mod 2a1`` and
    ``B = b3 mod 2a3``.
    """
    d = q1.disc
    rho = _composition_column(q1, q2, n)
    q3 = apply_matrix(q2, rho)
    a1, b1 = q1.a, q1.b
    a3, b3 = q3.a, q3.b
    big_b, mod = crt(b1, 2 * a1, b3, 2 * a3)
    if mod != 2 * a1 * a3 or (big_b * big_b - d) % (4 * a1 * a3):
        raise InternalError(f"B = {big_b}: B^2 != d mod 4 a1 a3 for {q1.triple}, {q3.triple}")
    composed = BQF(a1 * a3, big_b, (big_b * big_b - d) // (4 * a1 * a3))
    if composed.disc != d or not composed.is_primitive() or gcd(n, composed.a) != 1:
        raise InternalError(f"bad composed form {composed.triple}")
    return rho, q3, composed


def product_ideal(f: Field, q1: BQF, q2: BQF, n: int = 1) -> FracIdeal:
    """``[omega_Q1, 1][omega_Q2, 1]`` assembled from Dirichlet data.

    Equals ``(1 / j(rho, omega_Q3)) [(-B + sqrt d) / 2 a1 a3, 1]``.
    """
    rho, q3, composed = dirichlet_data(q1, q2, n)
    base = ideal_of_form(f, composed)
    # a3 * j(rho, omega_Q3) = u (tau + (b_K - b3)/2) + v a3 =: z, and 1/j = a3 conj(z) / N(z)
    z = (rho.u, rho.u * (f.b - q3.b) // 2 + rho.v * q3.a)
    w = cconj(f, z)
    vecs = [cmul(f, w, (p * q3.a, q * q3.a)) for p, q in base.vectors]
    return FracIdeal.from_int_vectors(f, base.m * int_norm(f, z), vecs)


class ClassGroup:
    """Enumerated C_N(d_K).  Immutable after construction except for the
    memoized multiplication table, which is computed once under a lock."""

    def __init__(self, f: Field, n: int):
        if n < 1:
            raise ValidationError(f"level {n} < 1")
        self.field = f
        self.n = n
        self.reduced = reduced_forms(f.d)
        self.transforms: list[Mat2Z] = []
        self.transformed: list[BQF] = []
        reps: list[FormClassRep] = []
        for i, q in enumerate(self.reduced):
            sigma = level_transform(q, n)
            qp = apply_matrix(q, sigma)
            self.transforms.append(sigma)
            self.transformed.append(qp)
            for p in valid_pairs(qp, n):
                rho = sl2_lift(p.u, p.v, n)
                rep = apply_matrix(qp, rho.inverse())
                reps.append(FormClassRep(n, rep, i, p))
        self.representatives = reps
        self._index: dict = {}
        for k, rep in enumerate(reps):
            key = gamma1_key(rep.form, n)
            if key in self._index:
                raise InternalError(f"classes {self._index[key]} and {k} coincide")
            self._index[key] = k
        self._table: list[list[int]] | None = None
        self._lock = threading.Lock()
        self._invariants: list[int] | None = None

    def __len__(self):
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)

    def __getitem__(self, k: int) -> FormClassRep:
        return self.representatives[k]

    @property
    def order(self) -> int:
        return len(self.representatives)

    def __repr__(self):
        return f"ClassGroup(d_K={self.field.d}, N={self.n}, order={self.order})"

    # membership ----------------------------------------------------------

    def _check(self, q: BQF) -> None:
        check_form(q, self.field)
        if not q.is_primitive() or q.a <= 0:
            raise ValidationError(f"{q.triple} is not primitive positive definite")
        if not q.in_level(self.n):
            raise LevelViolation(f"{q.triple} is not in Q_{self.n}")

    def class_index(self, q: BQF | FormClassRep) -> int:
        if isinstance(q, FormClassRep):
            q = q.form
        self._check(q)
        try:
            return self._index[gamma1_key(q, self.n)]
        except KeyError:
            raise InternalError(f"{q.triple} not found in {self!r}") from None

    def class_index_scan(self, q: BQF) -> int:
        """Linear scan with :func:`gamma1_equivalent`."""
        self._check(q)
        hits = [k for k, rep in enumerate(self.representatives) if gamma1_equivalent(self.n, rep.form, q)]
        if len(hits) != 1:
            raise InternalError(f"{q.triple} matches classes {hits}")
        return hits[0]

    def rep_of(self, q: BQF) -> FormClassRep:
        return self.representatives[self.class_index(q)]

    # group law -----------------------------------------------------------

    @property
    def identity_index(self) -> int:
        return self.class_index(principal_form(self.field))

    def identity(self) -> FormClassRep:
        return self.representatives[self.identity_index]

    def multiply_forms(self, q1: BQF, q2: BQF) -> BQF:
        """A form in the class ``[q1][q2]``, computed through ideals."""
        f, n = self.field, self.n
        self._check(q1)
        self._check(q2)
        c = product_ideal(f, q1, q2, n)
        # c^-1 = a1 a2 conj(c) is integral and represents the inverse ray class
        a = ideal_conj(c) * (q1.a * q2.a)
        if not a.is_integral():
            raise InternalError(f"a1 a2 conj(c) = {a!r} is not integral")
        return form_of_ideal(f, n, a)

    def multiply(self, x, y) -> FormClassRep:
        return self.rep_of(self.multiply_forms(_form(x), _form(y)))

    def mul_index(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self.class_index(self.multiply_forms(self[i].form, self[j].form))

    def inverse_form(self, q: BQF) -> BQF:
        """Inverse via ``sigma = [[*, *], [0, a^(phi(N)-1)]] mod N`` acting on ``-conj(omega_Q)``."""
        self._check(q)
        n = self.n
        e = pow(q.a, euler_phi(n) - 1, n) if n > 1 else 0
        sigma = sl2_lift(0, e, n)
        omega = sigma.act(-root(q).conj())
        return form_from_root(self.field, omega, n)

    def inverse(self, x) -> FormClassRep:
        return self.rep_of(self.inverse_form(_form(x)))

    def power(self, x, k: int) -> FormClassRep:
        idx = self.class_index(_form(x))
        acc = self.identity_index
        base = idx
        if k < 0:
            base = self.class_index(self.inverse_form(self[idx].form))
            k = -k
        while k:
            if k & 1:
                acc = self.mul_index(acc, base)
            base = self.mul_index(base, base)
            k >>= 1
        return self[acc]

    def table(self) -> list[list[int]]:
        """Full multiplication table, computed once (symmetric fill)."""
        if self._table is None:
            with self._lock:
                if self._table is None:
                    m = len(self)
                    t = [[-1] * m for _ in range(m)]
                    for i in range(m):
                        for j in range(i, m):
                            k = self.class_index(self.multiply_forms(self[i].form, self[j].form))
                            t[i][j] = t[j][i] = k
                    self._table = t
        return self._table

    def invariant_factors(self) -> list[int]:
        if self._invariants is None:
            self._invariants = structure_from_table(self.table(), self.identity_index)
        return self._invariants


def _form(x) -> BQF:
    return x.form if isinstance(x, FormClassRep) else x


def enumerate_classes(f: Field, n: int) -> ClassGroup:
    return ClassGroup(f, n)


def identity(f: Field, n: int) -> FormClassRep:
    return FormClassRep(n, principal_form(f))


def project(rep: FormClassRep, m: int, target: ClassGroup | None = None, f: Field | None = None) -> FormClassRep:
    """The class of ``rep.form`` in C_m(d_K) for a divisor m of ``rep.n``."""
    if m < 1 or rep.n % m:
        raise NotADivisor(f"{m} does not divide {rep.n}")
    if target is None:
        if f is None:
            f = make_field(rep.form.disc)
        target = ClassGroup(f, m)
    elif target.n != m:
        raise ValidationError(f"target group has level {target.n}, not {m}")
    return target.rep_of(rep.form)


def class_number(f: Field) -> int:
    return len(reduced_forms(f.d))


def order_via_pairs(f: Field, n: int) -> int:
    return class_number(f) * len(valid_pairs(principal_form(f), n))


def unit_group_order(f: Field, n: int) -> int:
    """``|(O_K / n O_K)^x|`` from the splitting of primes dividing n."""
    total = 1
    for p, e in factorize(n).items() if n > 1 else ():
        k = kronecker(f.d, p)
        pe2 = p ** (2 * e - 2)
        if k == 1:
            total *= pe2 * (p - 1) ** 2
        elif k == -1:
            total *= pe2 * (p * p - 1)
        else:
            total *= pe2 * p * (p - 1)
    return total


def order_via_units(f: Field, n: int) -> int:
    """``h(d_K) |(O_K/n)^x| / |{+-1 mod n}|``."""
    units = 1 if n <= 2 else 2
    num = class_number(f) * unit_group_order(f, n)
    if num % units:
        raise InternalError("unit index does not divide")
    return num // units


# group structure ----------------------------------------------------------


def structure_from_table(t: list[list[int]], e: int) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of a finite abelian group table.

    A cyclic subgroup generated by an element of maximal order is a direct
    summand, so it is split off and the quotient handled recursively.
    """
    factors: list[int] = []
    elems = list(range(len(t)))
    mul = lambda x, y: t[x][y]  # noqa: E731
    ident = e
    while len(elems) > 1:
        orders = {x: _quotient_order(mul, ident, x) for x in elems}
        g = max(elems, key=lambda x: (orders[x], -x))
        k = orders[g]
        factors.append(k)
        sub = [ident]
        y = g
        while y != ident:
            sub.append(y)
            y = mul(y, g)
        elems, mul, ident = _quotient(elems, mul, ident, sub)
    factors.reverse()
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise InternalError(f"invariant factors {factors} do not form a divisor chain")
    return factors


def _quotient_order(mul, ident, x) -> int:
    k, y = 1, x
    while y != ident:
        y = mul(y, x)
        k += 1
    return k


def _quotient(elems, mul, ident, sub):
    """Quotient by subgroup ``sub``: cosets represented by their least element."""
    rep_of = {}
    reps = []
    for x in elems:
        if x in rep_of:
            continue
        reps.append(x)
        for h in sub:
            rep_of[mul(x, h)] = x
    return reps, (lambda x, y: rep_of[mul(x, y)]), rep_of[ident]


def format_structure(factors: list[int]) -> str:
    if not factors:
        return "1"
    return " x ".join(f"Z/{d}" for d in factors)


# ring class quotient --------------------------------------------------------


@dataclass
class RingClassQuotient:
    """Partition of C_N(d_K) into Gamma0(N)-classes with the induced group law."""

    group: ClassGroup
    blocks: list[list[int]]
    block_of: list[int]
    table: list[list[int]] = dc_field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.blocks)

    def representatives(self) -> list[BQF]:
        return [self.group[b[0]].form for b in self.blocks]


def ring_class_group(g: ClassGroup | int, n: int | None = None, with_table: bool = True) -> RingClassQuotient:
    """Gamma0(N)-classes of C_N(d_K); accepts a group or ``(d_K, N)``."""
    if not isinstance(g, ClassGroup):
        if n is None:
            raise ValidationError("ring_class_group(d_K, N) needs a level")
        g = ClassGroup(make_field(g), n)
    n = g.n
    keys: dict = {}
    blocks: list[list[int]] = []
    block_of = [-1] * len(g)
    for k, rep in enumerate(g):
        key = gamma0_key(rep.form, n)
        if key not in keys:
            keys[key] = len(blocks)
            blocks.append([])
        blocks[keys[key]].append(k)
        block_of[k] = keys[key]
    q = RingClassQuotient(g, blocks, block_of)
    if with_table:
        t = g.table()
        q.table = [[block_of[t[b1[0]][b2[0]]] for b2 in blocks] for b1 in blocks]
    return q


def ring_class_blocks_scan(g: ClassGroup) -> list[list[int]]:
    """Same partition as :func:`ring_class_group`, by pairwise witness tests."""
    blocks: list[list[int]] = []
    for k, rep in enumerate(g):
        for b in blocks:
            if gamma0_equivalent(g.n, g[b[0]].form, rep.form):
                b.append(k)
                break
        else:
            blocks.append([k])
    return blocks
