"""Ideals and class groups of imaginary quadratic rings.

Two layers live here.  The concrete one is the ring Z[sqrt(D)] for a
negative non-square D: its ideals are stored in the normal form
q*(a, y - b) with integer q, a >= 1 and 0 <= b < a, where y denotes
sqrt(D); the Z-basis of such an ideal is {q*a, q*(y - b)} and its norm is
q^2*a.  Products and two-generator ideals are brought to this normal form
by a two-column Hermite reduction.

The abstract layer is the form class group of an arbitrary negative
discriminant: positive-definite integral binary quadratic forms up to
SL2-equivalence, composed by multiplying the corresponding module lattices
in the basis {1, w}, w = (s + sqrt(disc))/2 with s the parity of the
discriminant.  This covers both Z[sqrt(D)] (discriminant 4D) and maximal
orders of odd discriminant, and the two layers meet in push_to_maximal,
which extends an ideal of Z[sqrt(D)] to the maximal order of Q(sqrt(D)).

Class numbers are obtained two independent ways: direct enumeration of
reduced forms, and (for non-maximal orders) the conductor formula scaling
the maximal-order class number.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import (
    DiscriminantMismatchError,
    DivisibilityError,
    FactorizationBoundError,
    InternalInconsistencyError,
    NonInvertibleError,
    SquareValueError,
)
from .polyarith import xgcd

# ---------------------------------------------------------------------------
# integer utilities: primality, factorisation, square parts


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -k
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


_SIEVE_LIMIT = 0
_SIEVE_PRIMES: list[int] = []


def primes_up_to(limit: int) -> list[int]:
    """Cached list of primes <= limit, grown on demand."""
    global _SIEVE_LIMIT, _SIEVE_PRIMES
    if limit > _SIEVE_LIMIT:
        new_limit = max(limit, 2 * _SIEVE_LIMIT, 1 << 10)
        flags = bytearray([1]) * (new_limit + 1)
        flags[0:2] = b"\x00\x00"
        for p in range(2, isqrt(new_limit) + 1):
            if flags[p]:
                flags[p * p::p] = bytearray(len(flags[p * p::p]))
        _SIEVE_PRIMES = [i for i, f in enumerate(flags) if f]
        _SIEVE_LIMIT = new_limit
    if _SIEVE_LIMIT == limit:
        return _SIEVE_PRIMES
    # binary search for the cut-off
    lo, hi = 0, len(_SIEVE_PRIMES)
    while lo < hi:
        mid = (lo + hi) // 2
        if _SIEVE_PRIMES[mid] <= limit:
            lo = mid + 1
        else:
            hi = mid
    return _SIEVE_PRIMES[:lo]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set, deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, max_iters: int) -> int | None:
    """One Brent-cycle factor hunt; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        y, m = 2, 128
        g = r = q = 1
        iters = 0
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            iters += r
            if iters > max_iters:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


_TRIAL_CEILING = 10 ** 6


def factorint(n: int, factor_bound: int = 10 ** 6) -> dict[int, int]:
    """Prime factorisation of |n| as {prime: exponent}; n must be nonzero.

    Trial division up to min(10^6, isqrt), then Miller-Rabin plus a
    Brent-style rho with an iteration budget of factor_bound.  A survivor
    beyond the budget raises FactorizationBoundError instead of guessing.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    out: dict[int, int] = {}
    if n == 1:
        return out
    for p in primes_up_to(min(_TRIAL_CEILING, isqrt(n) + 1)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        d = _brent_rho(m, factor_bound)
        if d is None:
            raise FactorizationBoundError(
                f"no factor of {m} found within the work bound {factor_bound}")
        stack.extend((d, m // d))
    return out


def square_part(n: int, factor_bound: int = 10 ** 6) -> int:
    """Largest S >= 1 with S^2 dividing |n|."""
    s = 1
    for p, e in factorint(n, factor_bound).items():
        s *= p ** (e // 2)
    return s


def is_squarefree_int(n: int, factor_bound: int = 10 ** 6) -> bool:
    return square_part(n, factor_bound) == 1


# ---------------------------------------------------------------------------
# binary quadratic forms


@dataclass(frozen=True)
class IntBinaryForm:
    """a*X^2 + b2*X*Y + c*Y^2 with integer coefficients."""

    a: int
    b2: int
    c: int

    @property
    def disc(self) -> int:
        return self.b2 * self.b2 - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b2), self.c) == 1

    def conjugate(self) -> "IntBinaryForm":
        return IntBinaryForm(self.a, -self.b2, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b2 * x * y + self.c * y * y

    def __str__(self):
        return f"[{self.a},{self.b2},{self.c}]"


def reduce_form(F: IntBinaryForm) -> IntBinaryForm:
    """SL2-reduced representative of a positive-definite form."""
    a, b, c = F.a, F.b2, F.c
    if F.disc >= 0:
        raise ValueError(f"form {F} is not definite (disc {F.disc})")
    if a <= 0:
        raise ValueError(f"form {F} is not positive definite")
    while True:
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return IntBinaryForm(a, b, c)


def principal_form(disc: int) -> IntBinaryForm:
    """The identity class [1, s, (s - disc)/4], s the parity of disc."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    s = disc % 2
    return IntBinaryForm(1, s, (s - disc) // 4)


def _omega_rho_sigma(disc: int) -> tuple[int, int]:
    """(rho, sigma) with w^2 = rho + sigma*w for w = (sigma + sqrt(disc))/2."""
    sigma = disc % 2
    return (disc - sigma) // 4, sigma


def _hnf_module(rows) -> tuple[int, int, int]:
    """Hermite form of the Z-module spanned by rows (u, v) ~ u + v*w.

    Returns (q, a, t) describing the module q*(a*Z + (w - t)*Z) with
    a >= 1 and 0 <= t < a.  Raises InternalInconsistencyError when the
    span is not of that shape (i.e. the input was not an ideal).
    """
    cu, cv = 0, 0
    for (u, v) in rows:
        if v == 0:
            continue
        g, s, t_ = xgcd(cv, v)
        cu = s * cu + t_ * u
        cv = g
    if cv == 0:
        raise InternalInconsistencyError("module has rank < 2 over Z")
    alpha = 0
    for (u, v) in rows:
        alpha = gcd(alpha, u - (v // cv) * cu)
    if alpha == 0:
        raise InternalInconsistencyError("module has rank < 2 over Z")
    if alpha % cv or cu % cv:
        raise InternalInconsistencyError("module is not an ideal of the order")
    a = alpha // cv
    t = (-(cu // cv)) % a
    return cv, a, t


def _ideal_rows_product(a1: int, t1: int, a2: int, t2: int,
                        rho: int, sigma: int):
    """Spanning rows of (a1, w - t1)*(a2, w - t2) in the {1, w} basis."""
    return [
        (a1 * a2, 0),
        (-a1 * t2, a1),
        (-a2 * t1, a2),
        (rho + t1 * t2, sigma - t1 - t2),
    ]


def _class_from_hnf(disc: int, a: int, t: int) -> "IdealClass":
    rho, sigma = _omega_rho_sigma(disc)
    b = 2 * t - sigma
    c_num = t * t - sigma * t - rho
    if c_num % a:
        raise InternalInconsistencyError("ideal norm does not divide the form")
    F = IntBinaryForm(a, b, c_num // a)
    if not F.is_primitive:
        raise NonInvertibleError(
            f"ideal yields the imprimitive form {F}; not invertible")
    return IdealClass(disc, reduce_form(F))


def compose(F1: IntBinaryForm, F2: IntBinaryForm) -> IntBinaryForm:
    """Gauss composition of primitive positive-definite forms (same disc)."""
    if F1.disc != F2.disc:
        raise DiscriminantMismatchError(
            f"discriminants differ: {F1.disc} vs {F2.disc}")
    if not (F1.is_primitive and F2.is_primitive):
        raise NonInvertibleError("composition needs primitive forms")
    disc = F1.disc
    rho, sigma = _omega_rho_sigma(disc)
    t1 = (F1.b2 + sigma) // 2 % F1.a
    t2 = (F2.b2 + sigma) // 2 % F2.a
    rows = _ideal_rows_product(F1.a, t1, F2.a, t2, rho, sigma)
    _, a, t = _hnf_module(rows)
    return _class_from_hnf(disc, a, t).rep


@dataclass(frozen=True)
class IdealClass:
    """A class of invertible ideals, held as its SL2-reduced form."""

    disc: int
    rep: IntBinaryForm

    @classmethod
    def from_form(cls, F: IntBinaryForm) -> "IdealClass":
        if not F.is_primitive:
            raise NonInvertibleError(f"form {F} is imprimitive")
        return cls(F.disc, reduce_form(F))

    @classmethod
    def identity(cls, disc: int) -> "IdealClass":
        return cls(disc, principal_form(disc))

    @property
    def is_trivial(self) -> bool:
        return self.rep == principal_form(self.disc)

    def __mul__(self, other: "IdealClass") -> "IdealClass":
        if not isinstance(other, IdealClass):
            return NotImplemented
        return IdealClass(self.disc, compose(self.rep, other.rep))

    def inverse(self) -> "IdealClass":
        return IdealClass(self.disc, reduce_form(self.rep.conjugate()))

    def order(self, cap: int = 10 ** 7) -> int:
        """Least k >= 1 with the k-th power trivial."""
        if self.is_trivial:
            return 1
        acc = self
        k = 1
        while not acc.is_trivial:
            acc = acc * self
            k += 1
            if k > cap:
                raise InternalInconsistencyError(
                    "class order exceeded the iteration cap")
        return k

    def __str__(self):
        return f"{self.rep} (disc {self.disc})"


# ---------------------------------------------------------------------------
# ideals of Z[sqrt(D)]


@dataclass(frozen=True)
class QuadIdeal:
    """Nonzero ideal q*(a, y - b) of Z[sqrt(D)], basis {q*a, q*(y - b)}."""

    D: int
    q: int
    a: int
    b: int

    def __post_init__(self):
        if self.D >= 0:
            raise ValueError(f"D = {self.D} must be negative")
        if self.q < 1 or self.a < 1:
            raise ValueError("q and a must be positive")
        if not (0 <= self.b < self.a):
            raise ValueError(f"b = {self.b} out of range [0, {self.a})")
        if (self.b * self.b - self.D) % self.a:
            raise ValueError(
                f"a = {self.a} does not divide b^2 - D = "
                f"{self.b * self.b - self.D}")

    def __str__(self):
        inner = f"({self.a}, y - {self.b})"
        return inner if self.q == 1 else f"({self.q}){inner}"


def unit_ideal(D: int) -> QuadIdeal:
    return QuadIdeal(D, 1, 1, 0)


def ideal_from_generators(D: int, gens) -> QuadIdeal:
    """Ideal of Z[sqrt(D)] generated by elements (u, v) ~ u + v*y."""
    rows = []
    for (u, v) in gens:
        rows.append((u, v))
        rows.append((v * D, u))   # (u + v*y)*y
    q, a, t = _hnf_module(rows)
    return QuadIdeal(D, q, a, t)


def ideal_mul(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    """Product ideal, in normal form."""
    if I.D != J.D:
        raise DiscriminantMismatchError(f"rings differ: {I.D} vs {J.D}")
    rows = _ideal_rows_product(I.a, I.b, J.a, J.b, I.D, 0)
    q, a, t = _hnf_module(rows)
    return QuadIdeal(I.D, I.q * J.q * q, a, t)


def ideal_norm(I: QuadIdeal) -> int:
    """Index of the ideal in Z[sqrt(D)]: q^2 * a."""
    return I.q * I.q * I.a


def ideal_conjugate(I: QuadIdeal) -> QuadIdeal:
    return QuadIdeal(I.D, I.q, I.a, (-I.b) % I.a)


def form_to_ideal(F: IntBinaryForm, D: int) -> QuadIdeal:
    """Ideal (a, y - b) attached to the primitive form [a, 2b, c] of disc 4D.

    Requires a > 0 and an even middle coefficient; inverse of ideal_to_class
    on normal forms.
    """
    if F.disc != 4 * D:
        raise DiscriminantMismatchError(
            f"form disc {F.disc} is not 4*({D})")
    if not F.is_primitive:
        raise NonInvertibleError(f"form {F} is imprimitive")
    if F.b2 % 2:
        raise ValueError(f"form {F} has odd middle coefficient")
    if F.a <= 0:
        raise ValueError(f"form {F} has nonpositive leading coefficient")
    b = F.b2 // 2
    return QuadIdeal(D, 1, F.a, b % F.a)


def extend_ideal(a: int, b: int, e: int, D: int) -> QuadIdeal:
    """Normal form of the ideal (a, e*y - b) of Z[sqrt(D)].

    Requires a, e positive and a | b^2 - e^2*D (so the span really is an
    ideal); raises DivisibilityError otherwise.
    """
    if a < 1 or e < 1:
        raise ValueError("a and e must be positive")
    if (b * b - e * e * D) % a:
        raise DivisibilityError(
            f"{a} does not divide {b}^2 - {e}^2*({D})")
    rows = [(a, 0), (0, a), (-b, e), (e * D, -b)]
    q, a_out, t = _hnf_module(rows)
    return QuadIdeal(D, q, a_out, t)


def ideal_is_invertible(I: QuadIdeal) -> bool:
    """Whether I is proper (invertible): [a, 2b, (b^2 - D)/a] primitive.

    An ideal whose norm shares a factor with the conductor of Z[sqrt(D)]
    can have a strictly larger multiplier ring; it then represents no
    element of the Picard group of Z[sqrt(D)].
    """
    c = (I.b * I.b - I.D) // I.a
    return gcd(gcd(I.a, 2 * I.b), c) == 1


def ideal_to_class(I: QuadIdeal) -> IdealClass:
    """Class of an invertible ideal, as a reduced form of discriminant 4D.

    The ideal (a, y - b) corresponds to [a, 2b, (b^2 - D)/a]; the scalar
    part q does not move the class.  NonInvertibleError when the form is
    imprimitive (the ideal is not proper).
    """
    c = (I.b * I.b - I.D) // I.a
    F = IntBinaryForm(I.a, 2 * I.b, c)
    if not F.is_primitive:
        raise NonInvertibleError(
            f"ideal {I} is not invertible (form {F} imprimitive)")
    return IdealClass(4 * I.D, reduce_form(F))


def is_principal(I: QuadIdeal) -> bool:
    return ideal_to_class(I).is_trivial


def class_order(I: QuadIdeal) -> int:
    """Least k >= 1 with I^k principal."""
    return ideal_to_class(I).order()


# ---------------------------------------------------------------------------
# class numbers


def class_number(D: int) -> int:
    """Order of the class group of Z[sqrt(D)], i.e. h(4D)."""
    if D >= 0:
        raise ValueError(f"D = {D} must be negative")
    return class_number_disc(4 * D)


_NUMPY_THRESHOLD = 10 ** 6


def class_number_disc(disc: int) -> int:
    """Number of classes of primitive positive-definite forms of disc < 0.

    Direct enumeration of reduced forms: for each admissible middle
    coefficient b, split (b^2 - disc)/4 = a*c over divisors a in
    [max(b,1), sqrt(N)], counting the ambiguous boundary cases once and
    interior pairs (b, -b) twice.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    use_numpy = -disc > _NUMPY_THRESHOLD and -disc < (1 << 62)
    if use_numpy:
        try:
            import numpy
        except ImportError:
            use_numpy = False
    count = 0
    b_max = isqrt(-disc // 3)
    for b in range(disc % 2, b_max + 1, 2):
        N = (b * b - disc) // 4
        lo = max(b, 1)
        hi = isqrt(N)
        if hi < lo:
            continue
        if use_numpy:
            arr = numpy.arange(lo, hi + 1, dtype=numpy.int64)
            divisors = arr[N % arr == 0].tolist()
        else:
            divisors = [a for a in range(lo, hi + 1) if N % a == 0]
        for a in divisors:
            c = N // a
            if gcd(gcd(a, b), c) != 1:
                continue
            count += 2 if 0 < b < a < c else 1
    return count


# ---------------------------------------------------------------------------
# conductor machinery and the pushforward to the maximal order


@dataclass(frozen=True)
class ConductorData:
    """Square-part decomposition of a negative value v = S^2 * d.

    d is the square-free kernel, disc_max the discriminant of the maximal
    order of Q(sqrt(v)), and conductor the index m with 4*S^2*d =
    m^2 * disc_max; m = 2S when d = 1 mod 4, else m = S.
    """

    value: int
    S: int
    d: int
    disc_max: int
    conductor: int


def conductor_data(v: int, factor_bound: int = 10 ** 6) -> ConductorData:
    """Factor v < 0 as S^2*d with d square-free and derive the maximal order."""
    if v >= 0:
        raise ValueError(f"v = {v} must be negative")
    S = square_part(v, factor_bound)
    d = v // (S * S)
    if d % 4 == 1:
        disc_max, m = d, 2 * S
    else:
        disc_max, m = 4 * d, S
    if 4 * S * S * d != m * m * disc_max:
        raise InternalInconsistencyError("conductor identity failed")
    return ConductorData(value=v, S=S, d=d, disc_max=disc_max, conductor=m)


def push_to_maximal(I: QuadIdeal, cd: ConductorData) -> IdealClass:
    """Class of I*O_K in the maximal order O_K of Q(sqrt(D)), D = cd.value.

    The extension is computed in the basis {1, w} of O_K, where
    w = sqrt(d) when d = 2, 3 mod 4 and w = (1 + sqrt(d))/2 when
    d = 1 mod 4; the generator y = sqrt(D) of the small ring maps to
    S*sqrt(d).
    """
    if cd.value != I.D:
        raise DiscriminantMismatchError(
            f"conductor data is for {cd.value}, ideal lives over {I.D}")
    disc = cd.disc_max
    rho, sigma = _omega_rho_sigma(disc)
    S = cd.S
    if sigma == 0:
        y_u, y_v = 0, S            # y = S*w
    else:
        y_u, y_v = -S, 2 * S       # y = S*(2w - 1)
    gens = [(I.q * I.a, 0), (-I.q * I.b + I.q * y_u, I.q * y_v)]
    rows = []
    for (u, v) in gens:
        rows.append((u, v))
        rows.append((v * rho, u + v * sigma))   # (u + v*w)*w
    _, a, t = _hnf_module(rows)
    return _class_from_hnf(disc, a, t)


def class_number_from_conductor(cd: ConductorData,
                                h_max: int | None = None,
                                factor_bound: int = 10 ** 6) -> int:
    """h of the order of discriminant 4*cd.value via the conductor formula.

    h(O) = h_K * m * prod_{p | m} (1 - (disc_max|p)/p) / [O_K^* : O^*],
    with unit index 3 for disc_max = -3, 2 for -4, 1 otherwise.
    """
    if h_max is None:
        h_max = class_number_disc(cd.disc_max)
    m = cd.conductor
    if m == 1:
        return h_max
    num = h_max * m
    den = 1
    for p in factorint(m, factor_bound):
        num *= p - kronecker(cd.disc_max, p)
        den *= p
    if cd.disc_max == -3:
        den *= 3
    elif cd.disc_max == -4:
        den *= 2
    if num % den:
        raise InternalInconsistencyError(
            f"conductor formula gave non-integer {num}/{den}")
    return num // den
