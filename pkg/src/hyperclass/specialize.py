"""Specialising divisor classes to ideal classes of quadratic orders.

For a divisor class Q on y^2 = f(x) with integral data (A, B, C, e) and an
integer n where f(n) < 0, the ideal

    (A(n), e*sqrt(f(n)) - B(n))  in  Z[sqrt(f(n))]

defines a class delta_n(Q) in the Picard group of the order Z[sqrt(f(n))],
provided the value form [A(n), 2B(n), C(n)] is primitive.  When it is
not, the class may still exist for a better representative of the same
divisor class (for square-free f(n) = 2, 3 mod 4 it always does), but
this module does not search for one: extending an imprimitive value form
can silently land on a different ideal class, because the collapse at
primes shared between the values and e moves the class.  And when
f(n) = 1 mod 4 and the value content is even, the extension is a module
of the maximal order, so no representative works at all.  Both kinds of
failure raise NotPrimitiveError rather than returning a wrong class.
Pushing the ideal into the maximal order of Q(sqrt(f(n))) gives the value
of the class-group pairing of Q against the section x = n whenever that
section meets the smooth locus of the integral model.

The scan driver evaluates whole ranges of n, records one row per value
with orders in both Picard groups, and never aborts on a per-value error:
failures are data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .curve import OddHyperellipticCurve
from .errors import (
    HyperclassError,
    InternalInconsistencyError,
    NotPrimitiveError,
    PositiveValueError,
    SquareValueError,
)
from .integral_forms import AltMumfordForm, coprime_shift, to_alt_mumford
from .jacobian import MumfordDivisor
from .polyarith import fixed_divisor
from .quadring import (
    ConductorData,
    IdealClass,
    QuadIdeal,
    class_number_disc,
    class_number_from_conductor,
    conductor_data,
    extend_ideal,
    factorint,
    ideal_to_class,
    push_to_maximal,
    square_part,
)


@dataclass(frozen=True)
class ValueForm:
    """The integral data of Q evaluated at x = n."""

    n: int
    a_val: int
    b_val: int
    c_val: int
    e: int
    fval: int


def specialize_form(form: AltMumfordForm, curve: OddHyperellipticCurve,
                    n: int) -> ValueForm:
    """Evaluate (A, B, C) at n and check the discriminant identity.

    Raises PositiveValueError when f(n) >= 0 (the value lies outside the
    imaginary range, i.e. n exceeds the negativity bound) and
    SquareValueError when f(n) is a perfect square (degenerate form; this
    cannot happen once f(n) < 0 and is kept as a defensive check).
    """
    fval = curve.f(n)
    if fval >= 0:
        raise PositiveValueError(
            f"f({n}) = {fval} >= 0; specialisation needs f(n) < 0")
    # defensive: a perfect-square value makes the form degenerate; it
    # cannot occur once fval < 0, but the gate above may be relaxed one day
    if fval >= 0 and isqrt(fval) ** 2 == fval:
        raise SquareValueError(f"f({n}) = {fval} is a perfect square")
    a_val, b_val, c_val = form.A(n), form.B(n), form.C(n)
    if b_val * b_val - a_val * c_val != form.e * form.e * fval:
        raise InternalInconsistencyError(
            "value form discriminant mismatch: "
            f"{b_val}^2 - {a_val}*{c_val} != {form.e}^2*{fval}")
    return ValueForm(n=n, a_val=a_val, b_val=b_val, c_val=c_val,
                     e=form.e, fval=fval)


def value_gcd(v: ValueForm) -> int:
    """gcd(A(n), 2B(n), C(n)) of the value form."""
    return gcd(gcd(v.a_val, 2 * v.b_val), v.c_val)


def is_n_primitive(v: ValueForm) -> bool:
    """Whether the class is computed at n: the canonical value form must
    have gcd(A(n), 2B(n), C(n)) = 1.

    The gcd is invariant under the unimodular moves available at a fixed
    presentation, so shifting cannot change the answer.  A False is
    definitive when f(n) is square-free, f(n) = 1 mod 4, and the content
    is even: the extension then provably lies in the maximal order and
    the class does not exist.  In every other failing case False is
    conservative: the class may exist for some better representative of
    the divisor class, which this module does not search for.
    """
    return value_gcd(v) == 1


def _delta_ideal(v: ValueForm) -> QuadIdeal:
    """Normal form of (A(n), e*y - B(n)) in Z[sqrt(f(n))], shifted so the
    leading entry is coprime to e.  Requires a primitive value form: the
    extension of an imprimitive one is not in general in the right ideal
    class (the collapse at primes dividing both the values and e is not
    class-preserving), so no fallback is attempted."""
    if value_gcd(v) != 1:
        raise NotPrimitiveError(
            f"value form [{v.a_val},{2 * v.b_val},{v.c_val}] at n = {v.n} "
            f"has content {value_gcd(v)}; the class is not computed from "
            f"an imprimitive representative")
    a2, b2 = coprime_shift(v.a_val, v.b_val, v.c_val, v.e)
    return extend_ideal(abs(a2), b2, v.e, v.fval)


def delta_n(curve: OddHyperellipticCurve, Q: MumfordDivisor,
            n: int) -> IdealClass:
    """Class of (A(n), e*sqrt(f(n)) - B(n)) in Pic(Z[sqrt(f(n))])."""
    form = to_alt_mumford(curve, Q)
    v = specialize_form(form, curve, n)
    return ideal_to_class(_delta_ideal(v))


def pairing_value(curve: OddHyperellipticCurve, Q: MumfordDivisor, n: int,
                  factor_bound: int = 10 ** 6) -> IdealClass:
    """Image of delta_n(Q) in the class group of the maximal order."""
    form = to_alt_mumford(curve, Q)
    v = specialize_form(form, curve, n)
    I = _delta_ideal(v)
    cd = conductor_data(v.fval, factor_bound)
    return push_to_maximal(I, cd)


def check_norm_bounds(curve: OddHyperellipticCurve, Q: MumfordDivisor,
                      n: int, factor_bound: int = 10 ** 6) -> bool:
    """Verify the normal-form bounds for the raw (unshifted) ideal.

    With d = gcd(A(n), e, B(n)) and u the leading entry of the normal form
    of (A(n), e*y - B(n)), checks

        |A(n)| / prod_{p | d} p^(v_p(A(n)))  <=  u  <=  d * |A(n)|,

    and additionally u = |A(n)| exactly when gcd(A(n), e) = 1.
    """
    form = to_alt_mumford(curve, Q)
    v = specialize_form(form, curve, n)
    I = extend_ideal(abs(v.a_val), v.b_val, v.e, v.fval)
    u = I.a
    a_abs = abs(v.a_val)
    d = gcd(gcd(a_abs, v.e), abs(v.b_val))
    lower = a_abs
    if d > 1:
        for p in factorint(d, factor_bound):
            while lower % p == 0:
                lower //= p
    if not (lower <= u <= d * a_abs):
        return False
    if gcd(a_abs, v.e) == 1 and u != a_abs:
        return False
    return True


def smooth_section_status(fval: int, fprime_val: int, S: int) -> str:
    """Label whether the maximal-order value is the class-group pairing.

    "pairing" when the section x = n meets the smooth locus of the
    integral model (no prime divides both f(n) and f'(n), and f'(n) is
    odd) or when f(n) is square-free; otherwise "delta_only", meaning the
    computed pushforward is still delta's image but its identification
    with the biextension pairing is not certified.
    """
    if S == 1:
        return "pairing"
    if gcd(fval, fprime_val) == 1 and fprime_val % 2 == 1:
        return "pairing"
    return "delta_only"


@dataclass
class SpecializationRow:
    """One scanned value of n; error text instead of aborting on failure."""

    n: int
    f_n: int | None = None
    S_n: int | None = None
    primitive: bool | None = None
    form_a: int | None = None
    form_b2: int | None = None
    form_c: int | None = None
    order_order: int | None = None
    order_maximal: int | None = None
    h_order: int | None = None
    h_maximal: int | None = None
    error: str | None = None
    pairing_status: str | None = None


ROW_FIELDS = ("n", "f_n", "S_n", "primitive", "form_a", "form_b2", "form_c",
              "order_order", "order_maximal", "h_order", "h_maximal",
              "error", "pairing_status")


def _scan_row(curve: OddHyperellipticCurve, form: AltMumfordForm,
              fprime, n: int, class_numbers: bool,
              factor_bound: int) -> SpecializationRow:
    row = SpecializationRow(n=n)
    try:
        v = specialize_form(form, curve, n)
        row.f_n = v.fval
        cd = conductor_data(v.fval, factor_bound)
        row.S_n = cd.S
        row.primitive = is_n_primitive(v)
        if not row.primitive:
            return row
        I = _delta_ideal(v)
        cls = ideal_to_class(I)
        row.form_a = cls.rep.a
        row.form_b2 = cls.rep.b2
        row.form_c = cls.rep.c
        row.order_order = cls.order()
        pushed = push_to_maximal(I, cd)
        row.order_maximal = pushed.order()
        row.pairing_status = smooth_section_status(v.fval, fprime(n), cd.S)
        if class_numbers:
            h_max = class_number_disc(cd.disc_max)
            row.h_maximal = h_max
            row.h_order = class_number_from_conductor(cd, h_max, factor_bound)
    except HyperclassError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def scan(curve: OddHyperellipticCurve, Q: MumfordDivisor,
         n_lo: int, n_hi: int, *, class_numbers: bool = False,
         squarefree_only: bool = False,
         factor_bound: int = 10 ** 6) -> list[SpecializationRow]:
    """One row per n from n_hi down to n_lo (descending).

    n_hi must not exceed the curve's negativity bound.  With
    squarefree_only, rows where f(n)/fd(f) has a square factor are
    dropped.  Per-row failures land in the row's error field.
    """
    if n_hi > curve.negativity_bound:
        raise PositiveValueError(
            f"n_hi = {n_hi} exceeds the negativity bound "
            f"{curve.negativity_bound}")
    form = to_alt_mumford(curve, Q)
    fprime = curve.f.derivative()
    fd_f = fixed_divisor(curve.f)
    rows = []
    for n in range(n_hi, n_lo - 1, -1):
        if squarefree_only:
            reduced = curve.f(n) // fd_f
            if square_part(reduced, factor_bound) != 1:
                continue
        rows.append(_scan_row(curve, form, fprime, n,
                              class_numbers, factor_bound))
    return rows


def find_order_at_least(curve: OddHyperellipticCurve, Q: MumfordDivisor,
                        k: int, n_floor: int, *,
                        squarefree_only: bool = False,
                        factor_bound: int = 10 ** 6,
                        progress=None) -> int | None:
    """Largest n <= negativity bound with pairing order >= k, or None.

    Walks n downward from the negativity bound to n_floor; values where
    the class is undefined or fails are skipped.  progress, if given, is
    called with (n, order or None) for every examined n.
    """
    if k < 1:
        raise ValueError(f"k = {k} must be >= 1")
    form = to_alt_mumford(curve, Q)
    fd_f = fixed_divisor(curve.f)
    for n in range(curve.negativity_bound, n_floor - 1, -1):
        if squarefree_only:
            reduced = curve.f(n) // fd_f
            if square_part(reduced, factor_bound) != 1:
                continue
        order = None
        try:
            v = specialize_form(form, curve, n)
            I = _delta_ideal(v)
            cd = conductor_data(v.fval, factor_bound)
            order = push_to_maximal(I, cd).order()
        except HyperclassError:
            order = None
        if progress is not None:
            progress(n, order)
        if order is not None and order >= k:
            return n
    return None
