"""Denominator-controlled integral form of a Mumford divisor.

A reduced Mumford pair (a, b) has rational coefficients.  Scaling a to a
primitive integer polynomial A and clearing the denominator e of b gives
the integral data (A, B, C, e) with B^2 - A*C = e^2 * f as polynomials:
the rational quadratic form [A/e, 2B/e, C/e] has discriminant 4f and the
triple can be evaluated at integers without leaving Z.  This module builds
that representation, normalises specialised values so the leading entry
becomes coprime to e (a unimodular shift), derives the congruence class of
n on which that coprimality is automatic, and computes the threshold below
which the specialised forms are provably far from the principal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .curve import OddHyperellipticCurve
from .errors import (
    BadDegreeError,
    DegreeTooLargeError,
    InternalInconsistencyError,
    NotPrimitiveError,
)
from .jacobian import MumfordDivisor, check_divisor
from .polyarith import (
    IntPoly,
    clear_denominators,
    crt,
    first_nonnegative,
    fixed_divisor,
)
from .quadring import factorint


@dataclass(frozen=True)
class AltMumfordForm:
    """Integral triple (A, B, C) with denominator e: B^2 - A*C = e^2 * f."""

    A: IntPoly
    B: IntPoly
    C: IntPoly
    e: int

    def check(self, curve: OddHyperellipticCurve) -> None:
        """Assert every structural invariant against the curve."""
        A, B, C, e = self.A, self.B, self.C, self.e
        if e < 1:
            raise ValueError(f"e = {e} must be positive")
        if A.is_zero or A.lc < 0:
            raise ValueError("A must be nonzero with positive leading term")
        if A.content() != 1:
            raise ValueError(f"content of A is {A.content()}, expected 1")
        if not B.is_zero and gcd(e, B.content()) != 1:
            raise ValueError("e shares a factor with the content of B")
        if B.is_zero and e != 1:
            raise ValueError("B = 0 forces e = 1")
        if not B.is_zero and (A.degree == 0 or B.degree >= A.degree):
            raise ValueError("deg B must be below deg A")
        if A.degree > curve.genus:
            raise ValueError(f"deg A = {A.degree} exceeds genus {curve.genus}")
        if B * B - A * C != curve.f * (e * e):
            raise ValueError("B^2 - A*C differs from e^2 * f")


def to_alt_mumford(curve: OddHyperellipticCurve,
                   D: MumfordDivisor) -> AltMumfordForm:
    """Integral representation of a reduced Mumford pair.

    A is the primitive integer multiple of a with positive leading term,
    e the least positive denominator with B = e*b integral, and C the
    exact cofactor (B^2 - e^2 f)/A.  The result is unique.
    """
    check_divisor(curve, D)
    a, b = D.a, D.b
    A = clear_denominators(a).primitive_part()
    if A.lc < 0:
        A = -A
    if b.is_zero:
        e = 1
        B = IntPoly.zero()
    else:
        e = b.denominator_lcm()
        B = IntPoly((c * e).numerator for c in b.coeffs)
    C = (B * B - curve.f * (e * e)).exact_div(A)
    form = AltMumfordForm(A=A, B=B, C=C, e=e)
    form.check(curve)
    return form


def coprime_shift(a: int, b: int, c: int, e: int) -> tuple[int, int]:
    """Shift the value form [a, 2b, c] so its leading entry is coprime to e.

    For gcd(a, 2b, c) = 1 there is a factorisation e = e1*e2 with
    gcd(e1, e2) = 1, gcd(a, e1) = 1, every prime of e2 dividing a, and
    gcd(c, e2) = 1; the unimodular substitution (X, Y) -> (X, e1*X + Y)
    turns the form into [a + 2*e1*b + e1^2*c, 2*(b + e1*c), c] whose
    leading entry is coprime to e.  Returns (a', b'); c is unchanged.

    Raises NotPrimitiveError when gcd(a, 2b, c) != 1.
    """
    if gcd(gcd(a, 2 * b), c) != 1:
        raise NotPrimitiveError(
            f"form [{a},{2 * b},{c}] is imprimitive (gcd "
            f"{gcd(gcd(a, 2 * b), c)})")
    if e == 1 or gcd(a, e) == 1:
        return a, b
    # e2 = largest divisor of e all of whose prime factors divide a
    e2 = 1
    m = e
    while True:
        g = gcd(m, a)
        if g == 1:
            break
        while True:
            h = gcd(m, g)
            if h == 1:
                break
            m //= h
            e2 *= h
    e1 = e // e2
    a2 = a + 2 * e1 * b + e1 * e1 * c
    b2 = b + e1 * c
    if gcd(a2, e) != 1:
        raise InternalInconsistencyError(
            f"shifted leading entry {a2} still shares a factor with e = {e}")
    return a2, b2


@dataclass(frozen=True)
class CongruenceData:
    """Congruence class of n making gcd(A(n)/d_L, e) = 1 automatic.

    d_L = gcd(fixed_divisor(A), e); the modulus is a product over the
    primes p of e, and every n = N_L (mod modulus) has A(n)/d_L coprime
    to e.
    """

    d_L: int
    modulus: int
    N_L: int


def congruence_data(form: AltMumfordForm,
                    factor_bound: int = 10 ** 6) -> CongruenceData:
    """Find (d_L, modulus, N_L) for the leading polynomial of the form.

    For each prime p | e the residue r_p is found by scanning; A(n)/d_L
    mod p is a function of n modulo p^(v_p(d_L)+1), so that power is the
    per-prime modulus (it reduces to p itself whenever p does not divide
    d_L).  The residues are combined by the Chinese remainder theorem.

    Raises InternalInconsistencyError when some p divides A(n)/d_L for
    every n, which would contradict d_L being the e-part of the fixed
    divisor of A.
    """
    A, e = form.A, form.e
    if e == 1:
        return CongruenceData(d_L=1, modulus=1, N_L=0)
    d_L = gcd(fixed_divisor(A), e)
    residues = []
    moduli = []
    for p, _ in sorted(factorint(e, factor_bound).items()):
        w = 0
        dd = d_L
        while dd % p == 0:
            dd //= p
            w += 1
        mod_p = p ** (w + 1)
        found = None
        for r in range(mod_p):
            if (A(r) // d_L) % p != 0:
                found = r
                break
        if found is None:
            raise InternalInconsistencyError(
                f"A(n)/{d_L} is divisible by {p} for every n; the fixed "
                f"divisor of A must then exceed d_L * (e-part)")
        residues.append(found)
        moduli.append(mod_p)
    modulus = 1
    for m in moduli:
        modulus *= m
    return CongruenceData(d_L=d_L, modulus=modulus, N_L=crt(residues, moduli))


def nontriviality_threshold(h: IntPoly, M: int,
                            curve: OddHyperellipticCurve) -> int:
    """Largest N <= negativity bound with, for every n <= N:
    |h(n)| > M, h(n) + f(n) < 0 and -h(n) + f(n) < 0.

    Below this threshold no integral form [u, 2v, w] of discriminant
    4 f(n) with M <= |u| <= |h(n)| and |u| minimal in its class can be
    principal, because the principal form represents 1 and these forms
    do not represent anything that small.

    Raises DegreeTooLargeError when deg h >= deg f and BadDegreeError
    when h is constant (both bounds need |h| to grow, but slower than f).
    """
    if M < 1:
        raise ValueError(f"M = {M} must be a positive integer")
    f = curve.f
    if h.is_zero or h.degree < 1:
        raise BadDegreeError("h must be nonconstant")
    if h.degree >= f.degree:
        raise DegreeTooLargeError(
            f"deg h = {h.degree} must be below deg f = {f.degree}")
    cutoffs = [curve.negativity_bound]
    # first integer where f + h or f - h turns nonnegative
    cutoffs.append(first_nonnegative(f + h) - 1)
    cutoffs.append(first_nonnegative(f - h) - 1)
    # first integer where |h| dips to M or below; |h(t)| <= M only within
    # the root hull of h^2 - M^2
    hull = h * h - IntPoly((M * M,))
    bound = 2 + max(abs(c) for c in hull.coeffs) // abs(hull.lc)
    small = [t for t in range(-bound, bound + 1) if abs(h(t)) <= M]
    if small:
        cutoffs.append(min(small) - 1)
    return min(cutoffs)
