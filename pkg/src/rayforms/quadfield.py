"""Exact arithmetic in an imaginary quadratic field K = Q(sqrt(d_K)).

Elements are ``x + y*sqrt(d_K)`` with rational ``x, y``.  Fractional ideals
are stored canonically as ``(1/m) * L`` where ``L`` is an integer lattice in
coordinates over the Z-basis ``(tau_K, 1)`` of O_K, given in Hermite normal
form; two ideals are equal exactly when their canonical data agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .arith import factorize, hnf_lattice, is_squarefree
from .errors import (
    DependentGenerators,
    ExcludedField,
    FieldMismatch,
    NotAnIdeal,
    NotFundamental,
    NotNegative,
)


def is_fundamental(d: int) -> bool:
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


class QuadNum:
    """The number ``x + y*sqrt(d)``, with ``x`` and ``y`` exact rationals."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y, d: int):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.d = d

    def _coerce(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise FieldMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Rational)):
            return QuadNum(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(
            self.x * o.x + self.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadNum":
        return QuadNum(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadNum(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_rational(self) -> bool:
        return self.y == 0

    def in_upper_half_plane(self) -> bool:
        # sqrt(d) = i*sqrt(|d|) for d < 0
        return self.y > 0

    def __eq__(self, other):
        if isinstance(other, QuadNum):
            return (self.x, self.y, self.d) == (other.x, other.y, other.d)
        if isinstance(other, (int, Rational)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __repr__(self):
        return f"QuadNum({self.x}, {self.y}, d={self.d})"

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        rad = f"sqrt({self.d})"
        y = "" if self.y == 1 else "-" if self.y == -1 else f"{self.y}*"
        if self.x == 0:
            return f"{y}{rad}"
        sign = "+" if self.y > 0 else "-"
        ay = abs(self.y)
        ys = "" if ay == 1 else f"{ay}*"
        return f"{self.x} {sign} {ys}{rad}"


def im_positive_ratio(z1: QuadNum, z2: QuadNum) -> bool:
    """Whether ``Im(z1 / z2) > 0``."""
    # z1 * conj(z2) has the sign of Im(z1/z2) in its sqrt(d) coordinate
    return (z1.y * z2.x - z1.x * z2.y) > 0


@dataclass(frozen=True)
class Field:
    """Imaginary quadratic field of fundamental discriminant ``d`` < -4.

    ``tau = (-b + sqrt(d)) / 2`` is the root in the upper half-plane of the
    principal form ``x^2 + b x y + c y^2``.
    """

    d: int
    b: int
    c: int

    @property
    def tau(self) -> QuadNum:
        return QuadNum(Fraction(-self.b, 2), Fraction(1, 2), self.d)

    @property
    def sqrt_d(self) -> QuadNum:
        return QuadNum(0, 1, self.d)

    def element(self, x, y=0) -> QuadNum:
        return QuadNum(x, y, self.d)

    def one(self) -> QuadNum:
        return QuadNum(1, 0, self.d)

    def coords(self, z: QuadNum) -> tuple[Fraction, Fraction]:
        """Coordinates ``(p, q)`` of ``z`` with ``z = p*tau + q``."""
        if z.d != self.d:
            raise FieldMismatch(f"element of Q(sqrt({z.d})) used in Q(sqrt({self.d}))")
        p = 2 * z.y
        return p, z.x + z.y * self.b

    def from_coords(self, p, q) -> QuadNum:
        return self.tau * Fraction(p) + Fraction(q)

    def in_ring_of_integers(self, z: QuadNum) -> bool:
        p, q = self.coords(z)
        return p.denominator == 1 and q.denominator == 1


def make_field(d: int) -> Field:
    if d >= 0:
        raise NotNegative(f"d_K = {d} is not negative")
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")
    if d in (-3, -4):
        raise ExcludedField(f"d_K = {d}: Q(sqrt(-1)) and Q(sqrt(-3)) are excluded")
    b = d % 2
    c = (b * b - d) // 4
    return Field(d, b, c)


def cmul(f: Field, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Product of ``p1 tau + q1`` and ``p2 tau + q2`` in integer coordinates."""
    p1, q1 = a
    p2, q2 = b
    pp = p1 * p2
    # tau^2 = -b tau - c
    return p1 * q2 + p2 * q1 - pp * f.b, q1 * q2 - pp * f.c


def cconj(f: Field, a: tuple[int, int]) -> tuple[int, int]:
    p, q = a
    # conj(tau) = -b - tau
    return -p, q - p * f.b


def _int_coords(f: Field, z: QuadNum) -> tuple[tuple[int, int], int]:
    """``z = (p tau + q) / e`` with integers p, q and least e > 0."""
    p, q = f.coords(z)
    e = lcm(p.denominator, q.denominator)
    return (int(p * e), int(q * e)), e


class FracIdeal:
    """Fractional O_K-ideal ``(1/m) * [h11*tau, h12*tau + h22]``.

    The triple ``(h11, h12, h22)`` is the column-style HNF of the integer
    lattice ``m * I`` and ``m`` is the least positive integer making it
    integral.  The basis ``(xi1, xi2)`` is positively oriented.
    """

    __slots__ = ("field", "m", "h11", "h12", "h22")

    def __init__(self, field: Field, m: int, h11: int, h12: int, h22: int):
        self.field = field
        self.m = m
        self.h11 = h11
        self.h12 = h12
        self.h22 = h22

    @classmethod
    def from_int_vectors(cls, field: Field, m: int, vecs) -> "FracIdeal":
        """Lattice ``(1/m) * span(vecs)``, vectors in coordinates over ``(tau, 1)``."""
        try:
            (h11, _), (h12, h22) = hnf_lattice(vecs)
        except ValueError as exc:
            raise DependentGenerators(str(exc)) from None
        g = gcd(m, h11, h12, h22)
        return cls(field, m // g, h11 // g, h12 // g, h22 // g)

    @classmethod
    def from_generators(cls, field: Field, gens, check_ideal: bool = True) -> "FracIdeal":
        coords = [field.coords(g) for g in gens]
        m = 1
        for p, q in coords:
            m = lcm(m, p.denominator, q.denominator)
        ideal = cls.from_int_vectors(field, m, [(int(p * m), int(q * m)) for p, q in coords])
        if check_ideal and not ideal.is_ok_stable():
            raise NotAnIdeal(f"lattice spanned by {[str(z) for z in gens]} is not an O_K-module")
        return ideal

    @property
    def vectors(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer coordinates of ``m * xi1`` and ``m * xi2``."""
        return (self.h11, 0), (self.h12, self.h22)

    def is_ok_stable(self) -> bool:
        """Whether multiplication by tau maps the lattice into itself."""
        f = self.field
        for vec in self.vectors:
            p, q = cmul(f, (1, 0), vec)
            v, rv = divmod(q, self.h22)
            if rv or (p - v * self.h12) % self.h11:
                return False
        return True

    @property
    def basis(self) -> tuple[QuadNum, QuadNum]:
        f = self.field
        m = Fraction(1, self.m)
        return f.from_coords(self.h11 * m, 0), f.from_coords(self.h12 * m, self.h22 * m)

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        return self.field.d, self.m, self.h11, self.h12, self.h22

    def __eq__(self, other):
        if not isinstance(other, FracIdeal):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FracIdeal(d={self.field.d}, m={self.m}, hnf=({self.h11}, {self.h12}, {self.h22}))"

    def __str__(self):
        x1, x2 = self.basis
        return f"[{x1}, {x2}]"

    def coords_of(self, z: QuadNum) -> tuple[Fraction, Fraction]:
        """Rational ``(u, v)`` with ``z = u*xi1 + v*xi2``."""
        p, q = self.field.coords(z)
        v = q * self.m / self.h22
        u = (p * self.m - v * self.h12) / self.h11
        return u, v

    def contains(self, z: QuadNum) -> bool:
        u, v = self.coords_of(z)
        return u.denominator == 1 and v.denominator == 1

    def is_integral(self) -> bool:
        return self.m == 1

    def norm(self) -> Fraction:
        # index of the lattice m*I in Z tau + Z 1, divided by m^2
        return Fraction(self.h11 * self.h22, self.m * self.m)

    def __mul__(self, other):
        if isinstance(other, FracIdeal):
            return ideal_product(self, other)
        return ideal_scale(self, other)

    __rmul__ = __mul__


def _check_same_field(*ideals: FracIdeal) -> Field:
    f = ideals[0].field
    for i in ideals[1:]:
        if i.field != f:
            raise FieldMismatch(f"ideals of d_K = {f.d} and {i.field.d} mixed")
    return f


def unit_ideal(field: Field) -> FracIdeal:
    return FracIdeal(field, 1, 1, 0, 1)


def ideal_from_pair(field: Field, xi1: QuadNum, xi2: QuadNum) -> FracIdeal:
    """Canonical ideal ``Z xi1 + Z xi2``; the generators must span a rank-2 O_K-module."""
    return FracIdeal.from_generators(field, [xi1, xi2])


def ideal_product(i: FracIdeal, j: FracIdeal) -> FracIdeal:
    f = _check_same_field(i, j)
    vecs = [cmul(f, x, y) for x in i.vectors for y in j.vectors]
    return FracIdeal.from_int_vectors(f, i.m * j.m, vecs)


def ideal_sum(i: FracIdeal, j: FracIdeal) -> FracIdeal:
    f = _check_same_field(i, j)
    m = lcm(i.m, j.m)
    si, sj = m // i.m, m // j.m
    vecs = [(p * si, q * si) for p, q in i.vectors] + [(p * sj, q * sj) for p, q in j.vectors]
    return FracIdeal.from_int_vectors(f, m, vecs)


def ideal_scale(i: FracIdeal, lam) -> FracIdeal:
    """The ideal ``lam * I`` for a nonzero field element or rational ``lam``."""
    f = i.field
    if isinstance(lam, int):
        if lam == 0:
            raise ZeroDivisionError("scaling an ideal by zero")
        lam = abs(lam)
        g = gcd(i.m, lam)
        # scaling an HNF basis keeps it in HNF; only the denominator needs clearing
        return FracIdeal(f, i.m // g, i.h11 * lam // g, i.h12 * lam // g, i.h22 * lam // g)
    if not isinstance(lam, QuadNum):
        lam = f.element(lam)
    if lam == 0:
        raise ZeroDivisionError("scaling an ideal by zero")
    c, e = _int_coords(f, lam)
    return FracIdeal.from_int_vectors(f, i.m * e, [cmul(f, c, vec) for vec in i.vectors])


def ideal_conj(i: FracIdeal) -> FracIdeal:
    f = i.field
    return FracIdeal.from_int_vectors(f, i.m, [cconj(f, vec) for vec in i.vectors])


def ideal_norm(i: FracIdeal) -> Fraction:
    return i.norm()


def ideal_inverse(i: FracIdeal) -> FracIdeal:
    """``I^-1 = conj(I) / N(I)``."""
    f = i.field
    # N(I) = h11 h22 / m^2, so I^-1 = (m / (h11 h22)) * conj(m I)
    vecs = [(p * i.m, q * i.m) for p, q in (cconj(f, v) for v in i.vectors)]
    return FracIdeal.from_int_vectors(f, i.h11 * i.h22, vecs)


def int_norm(f: Field, a: tuple[int, int]) -> int:
    """Norm of ``p tau + q``."""
    p, q = a
    return q * q - f.b * p * q + f.c * p * p


def int_trace(f: Field, a: tuple[int, int]) -> int:
    p, q = a
    return 2 * q - f.b * p


def coords_in_basis(i: FracIdeal, z: QuadNum) -> tuple[Fraction, Fraction]:
    return i.coords_of(z)


def is_prime_to(i: FracIdeal, n: int) -> bool:
    """Whether no prime above ``n`` occurs in ``I`` (numerator or denominator).

    ``I + O_K`` is the inverse of the denominator ideal and ``I * (I + O_K)^-1``
    the numerator ideal, so both norms follow from two lattice indices.
    """
    if n == 1:
        return True
    if i.m == 1:
        # integral: a + N O_K = O_K iff no prime above p | N divides a, iff gcd(N(a), N) = 1
        return gcd(i.h11 * i.h22, n) == 1
    s = ideal_sum(i, unit_ideal(i.field))
    # N(I + O_K) = 1 / N(den), so N(den) = m_s^2 / (h11_s h22_s)
    den, r1 = divmod(s.m * s.m, s.h11 * s.h22)
    num, r2 = divmod(i.h11 * i.h22 * den, i.m * i.m)
    if r1 or r2:
        raise AssertionError(f"non-integral norms for {i!r}")
    return gcd(num * den, n) == 1
