"""Integer-matrix data for the Galois action attached to extended form classes.

A class ``[a x^2 + b xy + c y^2]`` of C_N(d_K) acts on level-N functions
through the matrix ``[[a, (b - b_K)/2], [0, 1]]`` in GL2(Z/N)/{+-I} together
with the point ``omega_Q``.  Nothing here evaluates modular functions; only
the matrices and points are produced.

Framing matrices: for a fractional ideal ``I`` containing O_K with oriented
basis ``(xi1, xi2)``, the framing matrix is the integral ``A`` with
``[tau_K; 1] = A [xi1; xi2]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .arith import Mat2Z, euler_phi
from .classgroup import ClassGroup, FormClassRep, ideal_of_form
from .errors import DependentGenerators, NotIntegral, ValidationError
from .forms import BQF, root
from .quadfield import Field, FracIdeal, QuadNum, ideal_scale, im_positive_ratio


def canonical_mod(m: Mat2Z, n: int) -> Mat2Z:
    """Representative of ``+-m`` mod n: the lexicographically smaller of the
    row-major entry lists of ``m`` and ``-m`` reduced into ``[0, n)``.

    The first nonzero entry then lies in ``[1, n/2]``; when it equals ``n/2``
    the comparison falls through to the next entry.
    """
    if n < 1:
        raise ValidationError(f"modulus {n} < 1")
    p = m.mod(n)
    q = (-m).mod(n)
    return p if (p.r, p.s, p.u, p.v) <= (q.r, q.s, q.u, q.v) else q


@dataclass(frozen=True)
class ActionDatum:
    """``(matrix mod N up to sign, omega, det mod N)`` for one class."""

    matrix: Mat2Z
    mod: int
    omega: QuadNum
    det_mod_n: int

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.rows(),
            "mod": self.mod,
            "omega": {"x": _frac_str(self.omega.x), "y": _frac_str(self.omega.y)},
            "det_mod_N": self.det_mod_n,
        }

    @classmethod
    def from_json(cls, obj: dict, d: int) -> "ActionDatum":
        (r, s), (u, v) = obj["matrix"]
        om = obj["omega"]
        return cls(Mat2Z(r, s, u, v), int(obj["mod"]), QuadNum(Fraction(om["x"]), Fraction(om["y"]), d), int(obj["det_mod_N"]))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def action_matrix(f: Field, q: BQF) -> Mat2Z:
    """``[[a, (b - b_K)/2], [0, 1]]`` over Z (not reduced)."""
    return Mat2Z(q.a, (q.b - f.b) // 2, 0, 1)


def action_datum(rep: FormClassRep | BQF, f: Field, n: int | None = None) -> ActionDatum:
    if isinstance(rep, FormClassRep):
        q, n = rep.form, rep.n
    else:
        q = rep
        if n is None:
            raise ValidationError("a level is needed for a bare form")
    if q.disc != f.d:
        raise ValidationError(f"{q.triple} does not have discriminant {f.d}")
    if not q.in_level(n):
        raise ValidationError(f"{q.triple} is not in Q_{n}")
    m = canonical_mod(action_matrix(f, q), n)
    return ActionDatum(m, n, root(q), q.a % n)


def group_action_data(g: ClassGroup) -> list[ActionDatum]:
    return [action_datum(rep, g.field) for rep in g]


def frame_matrix(f: Field, ideal: FracIdeal, basis: tuple[QuadNum, QuadNum] | None = None) -> Mat2Z:
    """Integral ``A`` with ``[tau_K; 1] = A [xi1; xi2]``.

    ``basis`` defaults to the HNF basis of ``ideal``; an explicit basis must
    be positively oriented and span ``ideal``.  A non-integral ``A`` means
    ``ideal`` does not contain O_K and raises ``NotIntegral``.
    """
    if ideal.field != f:
        raise ValidationError("ideal belongs to another field")
    if basis is None:
        basis = ideal.basis
    else:
        xi1, xi2 = basis
        if not im_positive_ratio(xi1, xi2):
            raise ValidationError("basis is not positively oriented")
        try:
            spanned = FracIdeal.from_generators(f, [xi1, xi2], check_ideal=False)
        except DependentGenerators:
            raise ValidationError("basis elements are linearly dependent") from None
        if spanned != ideal:
            raise ValidationError("basis does not span the ideal")
    (p1, q1), (p2, q2) = (f.coords(z) for z in basis)
    # rows of A are the coordinates of tau and 1 over (xi1, xi2): A = B^-1, B rows = coords(xi_i)
    det_b = p1 * q2 - q1 * p2
    entries = (q2 / det_b, -q1 / det_b, -p2 / det_b, p1 / det_b)
    if any(e.denominator != 1 for e in entries):
        raise NotIntegral(f"{ideal!r} does not contain O_K")
    return Mat2Z(*(int(e) for e in entries))


def framed_inverse_ideal(f: Field, q: BQF, n: int) -> tuple[FracIdeal, tuple[QuadNum, QuadNum]]:
    """``a^-1 = a^(-phi(N)) [omega_Q, 1]`` with basis ``(omega_Q / a^phi, 1 / a^phi)``.

    Here ``a = a^phi(N) [omega_Q, 1]^-1`` is an integral ideal in the inverse
    ray class of ``[omega_Q, 1]``.
    """
    e = q.a ** euler_phi(n)
    scale = Fraction(1, e)
    ideal = ideal_scale(ideal_of_form(f, q), scale)
    omega = root(q)
    return ideal, (omega * scale, f.one() * scale)


def expected_frame(f: Field, q: BQF, n: int) -> Mat2Z:
    """The exact framing matrix ``[[a^(phi+1), a^phi (b - b_K)/2], [0, a^phi]]``."""
    e = q.a ** euler_phi(n)
    return Mat2Z(e * q.a, e * (q.b - f.b) // 2, 0, e)


@dataclass(frozen=True)
class SeparationStats:
    """How well matrices, points and pairs distinguish the classes of one group."""

    order: int
    distinct_matrices: int
    distinct_omegas: int
    distinct_pairs: int
    largest_matrix_fibre: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "distinct_matrices": self.distinct_matrices,
            "distinct_omegas": self.distinct_omegas,
            "distinct_pairs": self.distinct_pairs,
            "largest_matrix_fibre": self.largest_matrix_fibre,
        }


def separation_stats(data: list[ActionDatum]) -> SeparationStats:
    mats = Counter(dd.matrix for dd in data)
    omegas = {dd.omega for dd in data}
    pairs = {(dd.matrix, dd.omega) for dd in data}
    return SeparationStats(len(data), len(mats), len(omegas), len(pairs), max(mats.values(), default=0))
