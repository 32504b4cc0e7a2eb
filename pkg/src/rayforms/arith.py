"""Exact integer kernels: gcd machinery, CRT, totient, Kronecker symbol,
SL2(Z) lifting and two-dimensional Hermite normal form.

All values are Python ints, so nothing here overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import IncompatibleCongruences, NotCoprime, NotPrime, RankDeficient


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y == g``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


def crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Solve ``x = r1 mod m1``, ``x = r2 mod m2``.

    Returns ``(x, lcm(m1, m2))`` with ``0 <= x < lcm``.  Raises
    ``IncompatibleCongruences`` when ``gcd(m1, m2)`` does not divide
    ``r1 - r2``.
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be positive")
    g, p, _ = ext_gcd(m1, m2)
    if (r2 - r1) % g:
        raise IncompatibleCongruences(
            f"x = {r1} mod {m1} and x = {r2} mod {m2} have no common solution"
        )
    lcm = m1 // g * m2
    x = r1 + m1 * ((r2 - r1) // g * p % (m2 // g))
    return x % lcm, lcm


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|`` (desk-scale inputs only)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.3e24 (Miller-Rabin with the first 12 prime bases)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(d: int, p: int) -> int:
    """Kronecker symbol ``(d / p)`` for a prime ``p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d % p == 0:
        return 0
    if p == 2:
        return 1 if d % 8 in (1, 7) else -1
    return 1 if pow(d, (p - 1) // 2, p) == 1 else -1


def _min_abs_rep(x: int, step: int) -> int:
    """Element of ``x + step*Z`` with least absolute value, ties to positive."""
    step = abs(step)
    r = x % step
    if 2 * r > step:
        r -= step
    elif 2 * r == step:
        r = abs(r)
    return r


@dataclass(frozen=True)
class Mat2Z:
    """Integer 2x2 matrix ``[[r, s], [u, v]]``."""

    r: int
    s: int
    u: int
    v: int

    @classmethod
    def identity(cls) -> "Mat2Z":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.r * self.v - self.s * self.u

    def is_unimodular(self) -> bool:
        return self.det == 1

    def rows(self) -> list[list[int]]:
        return [[self.r, self.s], [self.u, self.v]]

    def __matmul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.r * other.r + self.s * other.u,
            self.r * other.s + self.s * other.v,
            self.u * other.r + self.v * other.u,
            self.u * other.s + self.v * other.v,
        )

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.r, -self.s, -self.u, -self.v)

    def inverse(self) -> "Mat2Z":
        """Inverse of a matrix with determinant +1 or -1."""
        d = self.det
        if d not in (1, -1):
            raise ValueError(f"determinant {d} is not a unit")
        return Mat2Z(d * self.v, -d * self.s, -d * self.u, d * self.r)

    def mod(self, n: int) -> "Mat2Z":
        return Mat2Z(self.r % n, self.s % n, self.u % n, self.v % n)

    def apply_vector(self, x: int, y: int) -> tuple[int, int]:
        return self.r * x + self.s * y, self.u * x + self.v * y

    def act(self, z):
        """Moebius action ``z -> (r z + s) / (u z + v)`` on field elements."""
        return (z * self.r + self.s) / (z * self.u + self.v)

    def automorphy(self, z):
        """The factor ``j(sigma, z) = u z + v``."""
        return z * self.u + self.v


def complete_row(u: int, v: int) -> Mat2Z:
    """Unimodular matrix with bottom row ``(u, v)``; needs ``gcd(u, v) == 1``.

    The top row ``(r, s)`` solves ``r v - s u = 1`` with ``|r|`` minimal
    (ties broken towards ``r > 0``); when ``u == 0``, ``s = 0``.
    """
    g, x, y = ext_gcd(v, -u)
    if g != 1:
        raise NotCoprime(f"gcd({u}, {v}) = {g} != 1")
    # general solution r = x + k*u, s = y + k*v
    if u == 0:
        return Mat2Z(x, 0, 0, v)
    r = _min_abs_rep(x, u)
    k = (r - x) // u
    return Mat2Z(r, y + k * v, u, v)


def complete_column(r: int, u: int) -> Mat2Z:
    """Unimodular matrix with first column ``(r, u)``; needs ``gcd(r, u) == 1``.

    ``s`` is minimal in absolute value (ties towards ``s > 0``); when
    ``r == 0``, ``v = 0``.
    """
    g, x, y = ext_gcd(r, -u)
    if g != 1:
        raise NotCoprime(f"gcd({r}, {u}) = {g} != 1")
    # r*v - u*s = 1: v = x + k*u, s = y + k*r
    if r == 0:
        return Mat2Z(0, y, u, 0)
    s = _min_abs_rep(y, r)
    k = (s - y) // r
    return Mat2Z(r, s, u, x + k * u)


def _scan_offsets():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def sl2_lift(u: int, v: int, n: int) -> Mat2Z:
    """Deterministic ``sigma`` in SL2(Z) whose bottom row is ``(u, v) mod n``.

    ``v`` is taken in ``[0, n)`` and ``u`` is shifted by multiples of ``n``
    (offsets 0, 1, -1, 2, -2, ...) until the pair is coprime.  When
    ``v = 0 mod n`` and ``u`` itself is not a unit, ``v`` is lifted to ``n``.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if gcd(n, u, v) != 1:
        raise NotCoprime(f"gcd({n}, {u}, {v}) > 1")
    vv = v % n
    if vv == 0 and abs(u) != 1:
        vv = n
    for k in _scan_offsets():
        uu = u + k * n
        if gcd(uu, vv) == 1:
            return complete_row(uu, vv)
        if k > vv + 1:
            break
    raise AssertionError("coprime lift not found")  # pragma: no cover


@dataclass(frozen=True)
class ResiduePair:
    """A pair ``(u, v)`` mod ``n`` up to sign, stored canonically."""

    u: int
    v: int
    n: int

    @classmethod
    def make(cls, u: int, v: int, n: int) -> "ResiduePair":
        a = (u % n, v % n)
        b = ((-u) % n, (-v) % n)
        return cls(*min(a, b), n)

    def is_canonical(self) -> bool:
        return ResiduePair.make(self.u, self.v, self.n) == self


def canonical_pairs(n: int) -> list[ResiduePair]:
    """All canonical residue pairs mod n, lexicographically ordered."""
    out = []
    for u in range(n):
        for v in range(n):
            p = ResiduePair.make(u, v, n)
            if p.u == u and p.v == v:
                out.append(p)
    return out


def hnf_lattice(generators: Iterable[Sequence[int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Column-style HNF basis ``((h11, 0), (h12, h22))`` of a rank-2 lattice.

    ``h11, h22 > 0`` and ``0 <= h12 < h11``.  The result depends only on the
    lattice spanned by ``generators``.
    """
    vecs = [(int(x), int(y)) for x, y in generators]
    # Euclid on second coordinates
    pivot = None
    rest = []
    for x, y in vecs:
        if y == 0:
            rest.append((x, y))
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        while y:
            q = py // y
            px, py, x, y = x, y, px - q * x, py - q * y
        pivot = (px, py)
        rest.append((x, y))
    if pivot is None:
        raise RankDeficient("generators lie on a line")
    h11 = 0
    for x, _ in rest:
        h11 = gcd(h11, x)
    if h11 == 0:
        raise RankDeficient("generators span a rank-1 lattice")
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    return (h11, 0), (px % h11, py)


def sl2_height_order(max_height: int | None = None):
    """Coprime first columns ``(r, u)`` up to sign, by height then ``(u, r)``.

    Sign normalization: ``u > 0``, or ``u == 0`` and ``r > 0``.  The first
    column ``(1, 0)`` comes first.
    """
    if max_height is None:
        yield from _HEIGHT_PREFIX
        yield from _height_columns(_PREFIX_HEIGHT + 1, None)
    else:
        yield 1, 0
        yield from _height_columns(1, max_height)


def _height_columns(h: int, max_height: int | None):
    """Columns of height ``h, h+1, ...`` in :func:`sl2_height_order` order."""
    while max_height is None or h <= max_height:
        cols = set()
        for u in range(0, h + 1):
            for r in range(-h, h + 1):
                if max(abs(r), u) != h:
                    continue
                if u == 0 and r <= 0:
                    continue
                if gcd(r, u) == 1:
                    cols.add((u, r))
        for u, r in sorted(cols):
            if (r, u) != (1, 0):
                yield r, u
        h += 1


_PREFIX_HEIGHT = 12
_HEIGHT_PREFIX = ((1, 0),) + tuple(_height_columns(1, _PREFIX_HEIGHT))


def gamma1_generators(n: int) -> list[Mat2Z]:
    """``T``, ``[[1, 0], [n, 1]]``, their inverses, and ``-I``."""
    t = Mat2Z(1, 1, 0, 1)
    low = Mat2Z(1, 0, n, 1)
    return [t, t.inverse(), low, low.inverse(), -Mat2Z.identity()]


def random_gamma1_word(rng, n: int, max_len: int = 20) -> Mat2Z:
    """Product of at most ``max_len`` random generators from :func:`gamma1_generators`."""
    gens = gamma1_generators(n)
    g = Mat2Z.identity()
    for _ in range(rng.randint(0, max_len)):
        g = g @ rng.choice(gens)
    return g
