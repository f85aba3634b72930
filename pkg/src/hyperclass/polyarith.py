"""Exact integer, rational, and univariate polynomial arithmetic.

Two coefficient domains are used throughout the package.  IntPoly wraps a
tuple of Python ints, RatPoly a tuple of Fractions.  Both store coefficients
in ascending order of exponent (so p.coeffs[k] multiplies x**k), trim
trailing zeros, and are immutable and hashable.  The degree of the zero
polynomial is NEG_INF, a value that compares below every integer.

Beyond ring operations the module provides the number-theoretic extras the
rest of the package relies on: content and fixed divisor, square-freeness,
discriminants via fraction-free determinants, and exact localisation of the
least integer where a sign condition flips (Sturm chains, no floating
point).  Everything here is exact; there is no numerical fallback.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import InternalInconsistencyError

NEG_INF = float("-inf")


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def crt(residues, moduli) -> int:
    """Combine congruences x = r_i (mod m_i) for pairwise coprime moduli."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g, s, _ = xgcd(m % n, n)
        if g != 1:
            raise ValueError("moduli must be pairwise coprime")
        x += m * (((r - x) * s) % n)
        m *= n
    return x % m


def _trim(coeffs):
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class IntPoly:
    """Dense univariate polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        """Leading coefficient; 0 for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return _pretty(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        """Evaluate by Horner; accepts int or Fraction and preserves the type."""
        acc = 0 if isinstance(t, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def to_rational(self) -> "RatPoly":
        return RatPoly(self.coeffs)

    def content(self) -> int:
        """Positive gcd of the coefficients.  Errors on the zero polynomial."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no content")
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        """self divided by its content; the leading sign is preserved."""
        c = self.content()
        return IntPoly(v // c for v in self.coeffs)

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Exact quotient self / other in Z[x]; raises if division leaves a remainder."""
        q, r = self.to_rational().__divmod__(other.to_rational())
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return rat_to_int(q)

    def pseudo_divrem(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly", int]:
        """Pseudo-division: returns (q, r, s) with s*self = q*other + r over Z[x],
        deg r < deg other, and s = lc(other)**(deg self - deg other + 1)."""
        if other.is_zero:
            raise ZeroDivisionError("pseudo-division by zero polynomial")
        if self.is_zero or self.degree < other.degree:
            return IntPoly(), self, 1
        d = other.degree
        e = self.degree - d + 1
        lcd = other.lc
        q, r = IntPoly(), self
        steps = 0
        while not r.is_zero and r.degree >= d:
            t = IntPoly.monomial(r.lc, r.degree - d)
            q = q * lcd + t
            r = r * lcd - t * other
            steps += 1
        s = lcd ** e
        pad = e - steps
        if pad:
            q = q * (lcd ** pad)
            r = r * (lcd ** pad)
        return q, r, s


class RatPoly:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def one(cls) -> "RatPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c, k: int) -> "RatPoly":
        return cls((0,) * k + (Fraction(c),))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("RatPoly", self.coeffs))

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _pretty(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly((other,))
        if not isinstance(other, RatPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly((other,))
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly(c * other for c in self.coeffs)
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __divmod__(self, other: "RatPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = RatPoly()
        r = self
        d = other.degree
        while not r.is_zero and r.degree >= d:
            t = RatPoly.monomial(r.lc / other.lc, r.degree - d)
            q = q + t
            r = r - t * other
        return q, r

    def __floordiv__(self, other):
        return self.__divmod__(other)[0]

    def __mod__(self, other):
        return self.__divmod__(other)[1]

    def derivative(self) -> "RatPoly":
        return RatPoly(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def monic(self) -> "RatPoly":
        if self.is_zero:
            raise ValueError("the zero polynomial cannot be made monic")
        return self * (1 / self.lc)

    def content(self) -> Fraction:
        """Positive rational q such that self / q is a primitive integer polynomial."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no content")
        den = lcm(*(c.denominator for c in self.coeffs)) if len(self.coeffs) > 1 \
            else self.coeffs[0].denominator
        cleared = IntPoly(c * den for c in self.coeffs)
        return Fraction(cleared.content(), den)

    def denominator_lcm(self) -> int:
        if self.is_zero:
            return 1
        out = 1
        for c in self.coeffs:
            out = lcm(out, c.denominator)
        return out


def _pretty(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            term = str(abs(c) if c < 0 else c)
            if c < 0:
                term = str(c) if not parts else term
        else:
            mag = abs(c) if parts or c < 0 else c
            coef = "" if mag == 1 else f"{mag}*"
            term = f"{coef}x" if k == 1 else f"{coef}x^{k}"
            if c < 0 and not parts:
                term = "-" + term
        if parts:
            parts.append("- " + term if c < 0 else "+ " + term)
        else:
            parts.append(term)
    return " ".join(parts) if parts else "0"


def rat_to_int(p: RatPoly) -> IntPoly:
    """Convert a RatPoly with integral coefficients to IntPoly; raises otherwise."""
    for c in p.coeffs:
        if c.denominator != 1:
            raise ValueError(f"coefficient {c} is not an integer")
    return IntPoly(c.numerator for c in p.coeffs)


def rat_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd over Q[x]; gcd(0, 0) is 0."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def rat_xgcd(p: RatPoly, q: RatPoly):
    """Extended gcd over Q[x]: (g, s, t) with s*p + t*q = g, g monic (or zero)."""
    old_r, r = p, q
    old_s, s = RatPoly.one(), RatPoly.zero()
    old_t, t = RatPoly.zero(), RatPoly.one()
    while not r.is_zero:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r.is_zero:
        return old_r, old_s, old_t
    inv = 1 / old_r.lc
    return old_r * inv, old_s * inv, old_t * inv


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Gcd in Z[x], normalised to positive leading coefficient."""
    if p.is_zero and q.is_zero:
        return IntPoly()
    if p.is_zero:
        return q if q.lc > 0 else -q
    if q.is_zero:
        return p if p.lc > 0 else -p
    cont = gcd(p.content(), q.content())
    g = rat_gcd(p.to_rational(), q.to_rational())
    gi = clear_denominators(g).primitive_part()
    if gi.lc < 0:
        gi = -gi
    return gi * cont


def poly_divrem(p: RatPoly, q: RatPoly) -> tuple[RatPoly, RatPoly]:
    """Division with remainder over Q[x]: p = quo*q + rem with deg rem < deg q."""
    return p.__divmod__(q)


def clear_denominators(p: RatPoly) -> IntPoly:
    """p times the lcm of its coefficient denominators, as an IntPoly."""
    den = p.denominator_lcm()
    return IntPoly((c * den).numerator for c in p.coeffs)


def content(p) -> "int | Fraction":
    """Content of an IntPoly (positive int) or RatPoly (positive Fraction)."""
    return p.content()


def fixed_divisor(p: IntPoly) -> int:
    """gcd of all values p(n), n in Z.

    The values at 0, 1, ..., deg p already determine it: writing p in the
    binomial basis, those values and the basis coefficients generate the same
    gcd, and every binomial coefficient is integer-valued.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no fixed divisor")
    d = len(p.coeffs) - 1
    g = 0
    for n in range(d + 1):
        g = gcd(g, p(n))
    return g


def is_squarefree(p: IntPoly) -> bool:
    """True when p has no repeated factor (over Q, hence over Z for primitive p)."""
    if p.is_zero:
        raise ValueError("square-freeness is undefined for the zero polynomial")
    if p.degree < 1:
        return True
    g = rat_gcd(p.to_rational(), p.derivative().to_rational())
    return g.degree == 0


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant via fraction-free (Bareiss) elimination of the Sylvester matrix."""
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial")
    m, n = len(p.coeffs) - 1, len(q.coeffs) - 1
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    size = m + n
    mat = [[0] * size for _ in range(size)]
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        mat[i][i:i + m + 1] = pc
    for i in range(m):
        mat[n + i][i:i + n + 1] = qc
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, size):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = mat[k][k]
        for i in range(k + 1, size):
            row = mat[i]
            cik = row[k]
            # even rows with a zero leading entry must be rescaled by piv/prev,
            # or the minor invariant (and hence exact divisibility) breaks
            if cik == 0 and piv == 1 and prev == 1:
                continue
            for j in range(k + 1, size):
                row[j] = (row[j] * piv - cik * mat[k][j]) // prev
            row[k] = 0
        prev = piv
    return sign * mat[size - 1][size - 1]


def discriminant(p: IntPoly) -> int:
    """disc(p) = (-1)^(d(d-1)/2) * Res(p, p') / lc(p), exact in Z."""
    d = p.degree
    if p.is_zero or d < 1:
        raise ValueError("discriminant requires degree at least 1")
    r = resultant(p, p.derivative())
    if (d * (d - 1) // 2) % 2:
        r = -r
    quo, rem = divmod(r, p.lc)
    if rem:
        raise InternalInconsistencyError(
            "leading coefficient must divide the resultant")
    return quo


def squarefree_part(p: IntPoly) -> IntPoly:
    """A primitive integer polynomial with the same real roots as p, none repeated.
    The leading coefficient is normalised positive."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no square-free part")
    g = rat_gcd(p.to_rational(), p.derivative().to_rational())
    if g.degree == 0 or g.is_zero:
        out = p.primitive_part()
    else:
        quo, rem = p.to_rational().__divmod__(g)
        assert rem.is_zero
        out = clear_denominators(quo).primitive_part()
    return out if out.lc > 0 else -out


def _sturm_chain(p: IntPoly) -> list[RatPoly]:
    chain = [p.to_rational(), p.derivative().to_rational()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero:
            break
        chain.append(-rem)
    return chain


def _variations(signs) -> int:
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _var_at(chain, t) -> int:
    return _variations(_sign(h(t)) for h in chain)


def _var_at_minus_inf(chain) -> int:
    return _variations(
        _sign(h.lc) * (-1 if (len(h.coeffs) - 1) % 2 else 1) for h in chain
    )


def _var_at_plus_inf(chain) -> int:
    return _variations(_sign(h.lc) for h in chain)


def count_roots_leq(p: IntPoly, t: int) -> int:
    """Number of distinct real roots of p in (-inf, t], exactly."""
    sf = squarefree_part(p)
    chain = _sturm_chain(sf)
    return _var_at_minus_inf(chain) - _var_at(chain, t)


def first_nonnegative(p: IntPoly) -> int:
    """Least integer m with p(m) >= 0, for p of odd degree with positive
    leading coefficient (so that p is negative on all sufficiently small
    integers and positive on all sufficiently large ones).

    Exact: the distinct real roots are located by Sturm-chain bisection at
    integer granularity, the ceiling of each root is a candidate, and p is
    evaluated there.  The least qualifying candidate is the answer.
    """
    if p.is_zero or p.degree % 2 != 1 or p.lc <= 0:
        raise ValueError("need odd degree and positive leading coefficient")
    sf = squarefree_part(p)
    chain = _sturm_chain(sf)
    v_minf = _var_at_minus_inf(chain)
    total = v_minf - _var_at_plus_inf(chain)
    bound = 2 + max(abs(c) for c in sf.coeffs) // abs(sf.lc)
    lo_all, hi_all = -bound, bound

    def count_leq(t: int) -> int:
        return v_minf - _var_at(chain, t)

    lo = lo_all
    for i in range(1, total + 1):
        # least integer t with at least i roots <= t, i.e. ceil of the i-th root
        a, b = lo - 1, hi_all
        while a + 1 < b:
            mid = (a + b) // 2
            if count_leq(mid) >= i:
                b = mid
            else:
                a = mid
        t = b
        lo = t
        if p(t) >= 0:
            return t
    raise InternalInconsistencyError(
        "an odd-degree polynomial with positive lead is eventually positive")
