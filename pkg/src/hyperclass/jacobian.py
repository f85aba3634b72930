"""Divisor class arithmetic on the Jacobian, in Mumford coordinates.

A degree-zero divisor class is stored as a pair (a, b) of rational
polynomials: a monic, deg b < deg a <= genus, and a | b^2 - f.  The pair
cuts out the affine support (roots of a, with y-coordinates b(x)); the
class is completed by a multiple of the point at infinity.  The identity
is (1, 0).

Addition is Cantor's algorithm: compose the two ideals, then reduce until
deg a <= genus.  Negation flips the sign of b modulo a (the hyperelliptic
involution).  Scalar multiples use binary double-and-add.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import OddHyperellipticCurve
from .errors import InvalidDivisorError
from .polyarith import RatPoly, rat_xgcd


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced Mumford pair (a, b) for a degree-zero divisor class."""

    a: RatPoly
    b: RatPoly

    def __str__(self):
        return f"({self.a}, {self.b})"


def identity() -> MumfordDivisor:
    return MumfordDivisor(RatPoly.one(), RatPoly.zero())


def from_point(curve: OddHyperellipticCurve, x0, y0) -> MumfordDivisor:
    """Class of P - infinity for an affine point P = (x0, y0)."""
    curve.require_point(x0, y0)
    x0, y0 = Fraction(x0), Fraction(y0)
    return MumfordDivisor(RatPoly((-x0, 1)), RatPoly((y0,)))


def check_divisor(curve: OddHyperellipticCurve, D: MumfordDivisor) -> None:
    """Raise InvalidDivisorError unless (a, b) is a reduced Mumford pair."""
    a, b = D.a, D.b
    if a.is_zero or a.lc != 1:
        raise InvalidDivisorError(f"a = {a} is not monic")
    if a.degree > curve.genus:
        raise InvalidDivisorError(
            f"deg a = {a.degree} exceeds the genus {curve.genus}")
    if not b.is_zero and b.degree >= a.degree:
        raise InvalidDivisorError(f"deg b = {b.degree} is not below deg a")
    rem = (b * b - curve.f.to_rational()) % a
    if not rem.is_zero:
        raise InvalidDivisorError("a does not divide b^2 - f")


def _reduce(curve: OddHyperellipticCurve, a: RatPoly, b: RatPoly) -> MumfordDivisor:
    f = curve.f.to_rational()
    while a.degree > curve.genus:
        a_next = (f - b * b) // a
        a_next = a_next.monic()
        b = (-b) % a_next
        a = a_next
    return MumfordDivisor(a.monic(), b % a if a.degree > 0 else RatPoly.zero())


def jac_add(curve: OddHyperellipticCurve, D1: MumfordDivisor,
        D2: MumfordDivisor) -> MumfordDivisor:
    """Sum of two divisor classes by composition and reduction."""
    a1, b1 = D1.a, D1.b
    a2, b2 = D2.a, D2.b
    f = curve.f.to_rational()
    d1, e1, e2 = rat_xgcd(a1, a2)
    d, c1, c2 = rat_xgcd(d1, b1 + b2)
    a3 = (a1 * a2) // (d * d)
    num = c1 * (e1 * a1 * b2 + e2 * a2 * b1) + c2 * (b1 * b2 + f)
    b3 = (num // d) % a3
    return _reduce(curve, a3, b3)


def jac_neg(curve: OddHyperellipticCurve, D: MumfordDivisor) -> MumfordDivisor:
    """Image under the hyperelliptic involution, the group inverse."""
    if D.a.degree == 0:
        return identity()
    return MumfordDivisor(D.a, (-D.b) % D.a)


def jac_smul(curve: OddHyperellipticCurve, k: int, D: MumfordDivisor) -> MumfordDivisor:
    """k-fold sum of D, double-and-add; negative k negates first."""
    if k < 0:
        return jac_smul(curve, -k, jac_neg(curve, D))
    acc = identity()
    base = D
    while k:
        if k & 1:
            acc = jac_add(curve, acc, base)
        k >>= 1
        if k:
            base = jac_add(curve, base, base)
    return acc
