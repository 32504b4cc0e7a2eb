"""Binary quadratic forms ``a x^2 + b xy + c y^2``.

Direction convention, used everywhere in the package: ``apply_matrix(Q, g)``
is the form ``Q(g [x; y])``, a right action, so
``apply_matrix(apply_matrix(Q, g), h) == apply_matrix(Q, g @ h)``.
``reduce(Q)`` returns ``(R, g)`` with ``apply_matrix(Q, g) == R``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .arith import Mat2Z, ResiduePair
from .errors import (
    FieldMismatch,
    Imprimitive,
    LevelViolation,
    NotPositiveDefinite,
    NotUnimodular,
    RootNotOfMaximalOrder,
    ValidationError,
    WrongDiscriminant,
)
from .quadfield import Field, QuadNum

S = Mat2Z(0, -1, 1, 0)
T = Mat2Z(1, 1, 0, 1)


@dataclass(frozen=True, order=True)
class BQF:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self) -> bool:
        return gcd(self.a, self.b, self.c) == 1

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def in_level(self, n: int) -> bool:
        return gcd(n, self.a) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.triple
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self) -> str:
        return format_form(self)


def make_form(f: Field, a: int, b: int, c: int, n: int | None = None) -> BQF:
    """Validated primitive positive-definite form of discriminant ``f.d``.

    With ``n`` given, also require ``gcd(n, a) == 1``.
    """
    q = BQF(a, b, c)
    if q.disc != f.d:
        raise WrongDiscriminant(f"{q.triple} has discriminant {q.disc}, not {f.d}")
    if a <= 0:
        raise NotPositiveDefinite(f"{q.triple} is not positive definite")
    if not q.is_primitive():
        raise Imprimitive(f"{q.triple} is not primitive")
    if n is not None and not q.in_level(n):
        raise LevelViolation(f"gcd({n}, {a}) != 1")
    return q


def check_form(q: BQF, f: Field) -> BQF:
    if q.disc != f.d:
        raise FieldMismatch(f"{q.triple} has discriminant {q.disc}, field has {f.d}")
    return q


def evaluate(q: BQF, x: int, y: int) -> int:
    return q(x, y)


def apply_matrix(q: BQF, g: Mat2Z) -> BQF:
    """The form ``q(g [x; y])``; ``g`` must have determinant 1."""
    if g.det != 1:
        raise NotUnimodular(f"det {g.rows()} = {g.det}")
    return _act(q, g)


def _act(q: BQF, g: Mat2Z) -> BQF:
    a, b, c = q.triple
    r, s, u, v = g.r, g.s, g.u, g.v
    return BQF(
        a * r * r + b * r * u + c * u * u,
        2 * a * r * s + b * (r * v + s * u) + 2 * c * u * v,
        a * s * s + b * s * v + c * v * v,
    )


def root(q: BQF) -> QuadNum:
    """The zero ``(-b + sqrt(d)) / 2a`` of ``q(x, 1)`` in the upper half-plane."""
    return QuadNum(Fraction(-q.b, 2 * q.a), Fraction(1, 2 * q.a), q.disc)


def form_from_root(f: Field, omega: QuadNum, n: int = 1) -> BQF:
    """Primitive form with ``a > 0`` and root ``omega``; its discriminant must be ``f.d``."""
    if omega.d != f.d:
        raise FieldMismatch(f"root in Q(sqrt({omega.d})), field has d = {f.d}")
    if not omega.in_upper_half_plane():
        raise ValidationError(f"{omega} is not in the upper half-plane")
    # omega^2 - 2x omega + (x^2 - d y^2) = 0
    coeffs = [Fraction(1), -2 * omega.x, omega.x * omega.x - f.d * omega.y * omega.y]
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints)
    a, b, c = (x // g for x in ints)
    q = BQF(a, b, c)
    if q.disc != f.d:
        raise RootNotOfMaximalOrder(f"{omega} has minimal form {q.triple} of discriminant {q.disc}")
    if not q.in_level(n):
        raise LevelViolation(f"form {q.triple} from root {omega} has gcd({n}, a) != 1")
    return q


def form_from_int_root(f: Field, z: tuple[int, int], den: int, n: int = 1) -> BQF:
    """:func:`form_from_root` for ``omega = (p tau + q) / den``, all integers."""
    p, q = z
    if p * den <= 0:
        raise ValidationError("root is not in the upper half-plane")
    # den*omega = z satisfies z^2 - tr(z) z + N(z) = 0
    tr = 2 * q - f.b * p
    nm = q * q - f.b * p * q + f.c * p * p
    a, b, c = den * den, -den * tr, nm
    g = gcd(a, b, c)
    qf = BQF(a // g, b // g, c // g)
    if qf.disc != f.d:
        raise RootNotOfMaximalOrder(f"root has minimal form {qf.triple} of discriminant {qf.disc}")
    if not qf.in_level(n):
        raise LevelViolation(f"form {qf.triple} has gcd({n}, a) != 1")
    return qf


def _normalize(a: int, b: int, c: int) -> tuple[int, int, int, int]:
    """Translate ``b`` into ``(-a, a]``; returns the new triple and the shift k (matrix T^k)."""
    k = (a - b) // (2 * a)
    return a, b + 2 * a * k, a * k * k + b * k + c, k


def reduce(q: BQF) -> tuple[BQF, Mat2Z]:
    """Reduced form ``R`` and ``g`` in SL2(Z) with ``apply_matrix(q, g) == R``."""
    if not q.is_positive_definite():
        raise NotPositiveDefinite(f"{q.triple} is not positive definite")
    a, b, c = q.triple
    # g tracked as [[r, s], [u, v]]; right-multiplication by T^k and S
    r, s, u, v = 1, 0, 0, 1
    a, b, c, k = _normalize(a, b, c)
    s, v = s + k * r, v + k * u
    while a > c or (a == c and b < 0):
        # swap: (a, b, c) -> (c, -b, a), g -> g S
        a, b, c = c, -b, a
        r, s, u, v = s, -r, v, -u
        a, b, c, k = _normalize(a, b, c)
        s, v = s + k * r, v + k * u
    return BQF(a, b, c), Mat2Z(r, s, u, v)


def sl2_witness(q: BQF, q2: BQF) -> Mat2Z | None:
    """``s`` in SL2(Z) with ``apply_matrix(q, s) == q2``, or None.

    For discriminants below -4 the stabilizer is {I, -I}, so the witness is
    unique up to sign.
    """
    if q.disc != q2.disc:
        return None
    r1, g1 = reduce(q)
    r2, g2 = reduce(q2)
    if r1 != r2:
        return None
    return g1 @ g2.inverse()


def _check_level(n: int, *qs: BQF) -> None:
    if n < 1:
        raise ValidationError(f"level {n} < 1")
    for q in qs:
        if not q.in_level(n):
            raise LevelViolation(f"{q.triple} is not in Q_{n}: gcd({n}, {q.a}) != 1")


def in_pm_gamma1(g: Mat2Z, n: int) -> bool:
    if g.u % n:
        return False
    return (g.r - 1) % n == 0 and (g.v - 1) % n == 0 or (g.r + 1) % n == 0 and (g.v + 1) % n == 0


def in_gamma0(g: Mat2Z, n: int) -> bool:
    return g.u % n == 0


def gamma1_equivalent(n: int, q: BQF, q2: BQF) -> bool:
    _check_level(n, q, q2)
    w = sl2_witness(q, q2)
    return w is not None and in_pm_gamma1(w, n)


def gamma0_equivalent(n: int, q: BQF, q2: BQF) -> bool:
    _check_level(n, q, q2)
    w = sl2_witness(q, q2)
    return w is not None and in_gamma0(w, n)


def gamma1_key(q: BQF, n: int) -> tuple[BQF, ResiduePair]:
    """Complete invariant of the class of ``q`` under the right action of +-Gamma1(n).

    With ``apply_matrix(q, g) == R`` reduced, ``q ~ q'`` iff they share ``R``
    and ``g, g'`` lie in one coset ``+-Gamma1(n) g``, i.e. have the same
    bottom row mod ``n`` up to sign.
    """
    r, g = reduce(q)
    return r, ResiduePair.make(g.u, g.v, n)


def gamma0_key(q: BQF, n: int) -> tuple[BQF, ResiduePair]:
    """Like :func:`gamma1_key` for Gamma0(n): bottom row as a point of P^1(Z/n)."""
    r, g = reduce(q)
    best = None
    for t in range(1, n + 1):
        if gcd(t, n) == 1:
            p = ResiduePair.make(g.u * t, g.v * t, n)
            if best is None or (p.u, p.v) < (best.u, best.v):
                best = p
    return r, best


def t_canonical(q: BQF) -> BQF:
    """Representative of ``q`` modulo ``<-I, T>`` with ``-a < b <= a``."""
    a, b, c, _ = _normalize(*q.triple)
    return BQF(a, b, c)


def t_equivalent(q: BQF, q2: BQF) -> bool:
    return q.disc == q2.disc and q.a == q2.a and (q.b - q2.b) % (2 * q.a) == 0


def reduced_forms(d: int, primitive: bool = True) -> list[BQF]:
    """All reduced positive-definite forms of discriminant ``d < 0``, sorted by ``(a, |b|, -b)``."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValidationError(f"{d} is not a negative discriminant")
    out = []
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            q = BQF(a, b, c)
            if c < a or not q.is_reduced():
                continue
            if primitive and not q.is_primitive():
                continue
            out.append(q)
    out.sort(key=lambda q: (q.a, abs(q.b), -q.b))
    return out


def format_form(q: BQF) -> str:
    """Render as e.g. ``3x^2 - 2xy + 2y^2``."""
    parts = []
    for coeff, mono in ((q.a, "x^2"), (q.b, "xy"), (q.c, "y^2")):
        if coeff == 0:
            continue
        mag = "" if abs(coeff) == 1 else str(abs(coeff))
        if not parts:
            parts.append(("-" if coeff < 0 else "") + mag + mono)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + mag + mono)
    return " ".join(parts) if parts else "0"


_TRIPLE = re.compile(r"^\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*$")


def parse_triple(text: str) -> BQF:
    """Parse ``"a,b,c"`` or ``"(a, b, c)"``."""
    m = _TRIPLE.match(text)
    if not m:
        raise ValidationError(f"cannot parse form triple {text!r}")
    return BQF(*(int(g) for g in m.groups()))
