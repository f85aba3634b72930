"""Ideal arithmetic in Z[sqrt(D)], form composition, class numbers,
conductors.  The HNF oracle here is an independent Euclidean sweep, kept
deliberately separate from the production single-pass implementation."""

import math
import random

import pytest

import hyperclass.quadring as qr
from hyperclass.errors import (
    DiscriminantMismatchError,
    DivisibilityError,
    FactorizationBoundError,
    NonInvertibleError,
)
from hyperclass.quadring import (
    ConductorData,
    IdealClass,
    IntBinaryForm,
    QuadIdeal,
    class_number,
    class_number_disc,
    class_number_from_conductor,
    class_order,
    compose,
    conductor_data,
    extend_ideal,
    factorint,
    form_to_ideal,
    ideal_conjugate,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideal_to_class,
    is_principal,
    is_probable_prime,
    is_squarefree_int,
    kronecker,
    primes_up_to,
    principal_form,
    reduce_form,
    square_part,
    unit_ideal,
)

DS = (-5, -6, -13, -14, -21)


# --- independent HNF oracle -------------------------------------------------

def hnf_oracle(rows):
    """Normal form (q, a, b) of the Z-module spanned by (u, v) ~ u + v*y.

    Euclidean sweep: clear the y-column down to a single row, gcd the
    rational rows, then read off (q)(a, y-b).
    """
    work = [list(r) for r in rows if r != (0, 0) and list(r) != [0, 0]]
    while True:
        nz = [r for r in work if r[1] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[1]))
        u0, v0 = nz[0]
        for r in nz[1:]:
            k = r[1] // v0
            r[0] -= k * u0
            r[1] -= k * v0
    rational = 0
    mixed = None
    for u, v in work:
        if v == 0:
            rational = math.gcd(rational, u)
        else:
            assert mixed is None or (u, v) == (0, 0)
            mixed = (u, v)
    assert mixed is not None and rational > 0, "not a rank-2 module"
    u1, v1 = mixed
    if v1 < 0:
        u1, v1 = -u1, -v1
    q = v1
    assert rational % q == 0 and u1 % q == 0, "not closed under y-multiplication"
    a = rational // q
    b = (-(u1 // q)) % a
    return q, a, b


def module_rows(a, b, e, D):
    """Z-generators of the Z[sqrt(D)]-module spanned by a and e*y - b."""
    return [(a, 0), (0, a), (-b, e), (e * D, -b)]


def random_invertible_ideal(rng, D):
    """Random invertible ideal: primitive (a, y-b) times a random rational q."""
    while True:
        a = rng.randrange(1, 60)
        bs = [b for b in range(a) if (b * b - D) % a == 0]
        if not bs:
            continue
        b = rng.choice(bs)
        c = (b * b - D) // a
        if math.gcd(math.gcd(a, 2 * b), c) != 1:
            continue
        q = rng.choice((1, 1, 1, 2, 3, 5))
        return QuadIdeal(D, q, a, b)


# --- scalar utilities -------------------------------------------------------

def test_kronecker_matches_euler_criterion():
    for p in (3, 5, 7, 11, 13, 61):
        for a in range(-20, 21):
            want = 0 if a % p == 0 else (1 if pow(a, (p - 1) // 2, p) == 1 else p - 1)
            want = -1 if want == p - 1 else want
            assert kronecker(a, p) == want, (a, p)


def test_kronecker_at_two_and_units():
    assert kronecker(1, 2) == 1
    assert kronecker(7, 2) == 1
    assert kronecker(3, 2) == -1
    assert kronecker(4, 2) == 0
    assert kronecker(5, 1) == 1
    assert [kronecker(-1, p) for p in (5, 13, 3, 7)] == [1, 1, -1, -1]


def test_kronecker_multiplicative_in_bottom():
    for a in (-7, -3, 2, 5, 9):
        for m in range(1, 40):
            for n in range(1, 40):
                assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]


def test_is_probable_prime_agrees_with_sieve():
    sieve = set(primes_up_to(5000))
    for n in range(-3, 5000):
        assert is_probable_prime(n) == (n in sieve)
    # a few large knowns
    assert is_probable_prime(2**61 - 1)
    assert not is_probable_prime((2**31 - 1) * (2**61 - 1))


def test_factorint_roundtrip():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(2, 10**9)
        fac = factorint(n)
        prod = 1
        for p, k in fac.items():
            assert is_probable_prime(p)
            prod *= p**k
        assert prod == n
    assert factorint(1) == {}
    # factorint works on |n|
    assert factorint(-12) == {2: 2, 3: 1}
    assert factorint(2**40) == {2: 40}


def test_factorint_bound_error():
    # product of two 20-digit primes is out of reach for a tiny rho budget
    p = 2**61 - 1
    q = 2305843009213693967  # next prime after 2^61-1
    assert is_probable_prime(q)
    with pytest.raises(FactorizationBoundError):
        factorint(p * q, factor_bound=10)


def test_square_part_and_squarefree():
    assert square_part(12) == 2
    assert square_part(-12) == 2
    assert square_part(49) == 7
    assert square_part(30) == 1
    assert square_part(720) == 12
    assert is_squarefree_int(30)
    assert not is_squarefree_int(12)
    assert is_squarefree_int(1)
    with pytest.raises(ValueError):
        is_squarefree_int(0)


# --- forms and composition ---------------------------------------------------

def test_form_basics():
    F = IntBinaryForm(2, 2, 3)
    assert F.disc == 4 - 24
    assert F.is_primitive
    assert F(1, 0) == 2 and F(0, 1) == 3 and F(1, 1) == 7
    assert str(F) == "[2,2,3]"
    assert F.conjugate() == IntBinaryForm(2, -2, 3)
    assert not IntBinaryForm(2, 2, 4).is_primitive


def test_reduce_form_known():
    assert reduce_form(IntBinaryForm(3, 4, 3)) == IntBinaryForm(2, 2, 3)
    assert reduce_form(IntBinaryForm(2, -2, 3)) == IntBinaryForm(2, 2, 3)
    assert reduce_form(IntBinaryForm(1, 0, 5)) == IntBinaryForm(1, 0, 5)
    # disc of [15,50,42] is 2500 - 2520 = -20
    assert reduce_form(IntBinaryForm(15, 50, 42)) == reduce_form(
        compose(compose(IntBinaryForm(15, 50, 42), principal_form(-20)),
                principal_form(-20)))


def test_reduce_form_invariants_random():
    rng = random.Random(11)
    for _ in range(500):
        a = rng.randrange(1, 30)
        b = rng.randrange(-60, 61)
        # force negative discriminant
        c = rng.randrange((b * b) // (4 * a) + 1, (b * b) // (4 * a) + 40)
        F = IntBinaryForm(a, b, c)
        assert F.disc < 0
        R = reduce_form(F)
        assert R.disc == F.disc
        assert -R.a < R.b2 <= R.a <= R.c
        if R.a == R.c:
            assert R.b2 >= 0
        assert reduce_form(R) == R


def test_principal_form():
    assert principal_form(-20) == IntBinaryForm(1, 0, 5)
    assert principal_form(-23) == IntBinaryForm(1, 1, 6)
    assert principal_form(-4) == IntBinaryForm(1, 0, 1)


def test_compose_identity_and_inverse():
    rng = random.Random(3)
    for D in DS:
        disc = 4 * D
        one = principal_form(disc)
        for _ in range(50):
            I = random_invertible_ideal(rng, D)
            F = ideal_to_class(I).rep
            assert compose(F, one) == F
            assert compose(F, F.conjugate()) == one
            assert compose(F, one).disc == disc


def test_compose_commutative_associative():
    rng = random.Random(5)
    for D in (-5, -21):
        forms = [ideal_to_class(random_invertible_ideal(rng, D)).rep
                 for _ in range(8)]
        for F in forms:
            for G in forms:
                assert compose(F, G) == compose(G, F)
                for H in forms[:4]:
                    assert compose(compose(F, G), H) == compose(F, compose(G, H))


def test_compose_rejects_mismatched_disc():
    with pytest.raises(DiscriminantMismatchError):
        compose(principal_form(-20), principal_form(-24))


def test_compose_rejects_imprimitive():
    with pytest.raises(NonInvertibleError):
        compose(IntBinaryForm(2, 2, 4), IntBinaryForm(2, 2, 4))


def test_ideal_class_orders():
    two = IdealClass.from_form(IntBinaryForm(2, 2, 3))  # disc -20
    assert two.order() == 2
    assert not two.is_trivial
    assert (two * two).is_trivial
    assert two.inverse() == two
    three = IdealClass.from_form(IntBinaryForm(2, 1, 3))  # disc -23
    assert three.order() == 3
    assert three.inverse() == IdealClass.from_form(IntBinaryForm(2, -1, 3))
    assert IdealClass.identity(-20).order() == 1


def test_class_order_divides_class_number():
    rng = random.Random(13)
    for D in DS:
        h = class_number(D)
        for _ in range(20):
            I = random_invertible_ideal(rng, D)
            assert h % class_order(I) == 0


# --- ideals -----------------------------------------------------------------

def test_quad_ideal_validation():
    QuadIdeal(-5, 1, 3, 1)  # 1^2-(-5) = 6 and 3 | 6: valid
    with pytest.raises(ValueError):
        QuadIdeal(-5, 1, 4, 1)  # 4 does not divide 6
    with pytest.raises(ValueError):
        QuadIdeal(-5, 1, 3, 5)  # b out of range
    with pytest.raises(ValueError):
        QuadIdeal(5, 1, 1, 0)  # D must be negative
    with pytest.raises(ValueError):
        QuadIdeal(-5, 0, 3, 1)


def test_unit_ideal_and_norm():
    U = unit_ideal(-5)
    assert (U.q, U.a, U.b) == (1, 1, 0)
    assert ideal_norm(U) == 1
    assert ideal_norm(QuadIdeal(-5, 3, 2, 1)) == 18


def test_ideal_from_generators_matches_oracle():
    rng = random.Random(17)
    for _ in range(300):
        D = rng.choice(DS)
        gens = [(rng.randrange(-30, 31), rng.randrange(-30, 31))
                for _ in range(rng.randrange(1, 4))]
        rows = []
        for u, v in gens:
            rows.append((u, v))
            rows.append((v * D, u))  # (u+vy)*y
        try:
            want = hnf_oracle(rows)
        except AssertionError:
            continue  # degenerate span, e.g. all zero gens
        got = ideal_from_generators(D, gens)
        assert (got.q, got.a, got.b) == want


def test_fact_i_coprime_product():
    # (a1, y-b)(a2, y-b) = (a1*a2, y-b) for coprime a1, a2
    rng = random.Random(19)
    seen = 0
    while seen < 300:
        D = rng.choice(DS)
        a1 = rng.randrange(2, 40)
        a2 = rng.randrange(2, 40)
        if math.gcd(a1, a2) != 1:
            continue
        n = a1 * a2
        bs = [b for b in range(n) if (b * b - D) % n == 0]
        if not bs:
            continue
        b = rng.choice(bs)
        I = QuadIdeal(D, 1, a1, b % a1)
        J = QuadIdeal(D, 1, a2, b % a2)
        got = ideal_mul(I, J)
        assert (got.q, got.a, got.b) == (1, n, b)
        seen += 1


def test_conjugate_product_is_norm():
    # (a, y-b)(a, y+b) = (a): the product with the conjugate is rational
    rng = random.Random(23)
    for _ in range(300):
        D = rng.choice(DS)
        I = random_invertible_ideal(rng, D)
        got = ideal_mul(I, ideal_conjugate(I))
        assert (got.q, got.a, got.b) == (I.q * I.q * I.a, 1, 0)
        assert ideal_norm(got) == ideal_norm(I) ** 2


def test_norm_multiplicative():
    rng = random.Random(29)
    for D in DS:
        for _ in range(200):
            I = random_invertible_ideal(rng, D)
            J = random_invertible_ideal(rng, D)
            assert ideal_norm(ideal_mul(I, J)) == ideal_norm(I) * ideal_norm(J)


def test_ideal_mul_spec_example():
    got = ideal_mul(QuadIdeal(-5, 1, 2, 1), QuadIdeal(-5, 1, 3, 1))
    assert (got.q, got.a, got.b) == (1, 6, 1)


def test_fact_iii_unit_ideal():
    # a together with r + s*y generates everything when gcd(a, r^2 - s^2 D) = 1
    rng = random.Random(31)
    seen = 0
    while seen < 200:
        D = rng.choice(DS)
        a = rng.randrange(2, 50)
        r = rng.randrange(-20, 21)
        s = rng.randrange(-20, 21)
        if math.gcd(a, r * r - s * s * D) != 1:
            continue
        got = ideal_from_generators(D, [(a, 0), (r, s)])
        assert got == unit_ideal(D)
        seen += 1


def test_extend_ideal_fact_ii():
    # gcd(a, e) = 1: extension is (a, y - b*e') with e*e' = 1 mod a
    rng = random.Random(37)
    seen = 0
    while seen < 300:
        D = rng.choice(DS)
        a = rng.randrange(2, 60)
        e = rng.randrange(1, 15)
        if math.gcd(a, e) != 1:
            continue
        bs = [b for b in range(a) if (b * b - e * e * D) % a == 0]
        if not bs:
            continue
        b = rng.choice(bs)
        I = extend_ideal(a, b, e, D)
        einv = pow(e, -1, a)
        assert (I.q, I.a, I.b) == (1, a, (b * einv) % a)
        seen += 1


def test_extend_ideal_spec_examples():
    I = extend_ideal(3, 1, 2, -5)
    assert (I.q, I.a, I.b) == (1, 3, 2)
    J = extend_ideal(3, 2, 1, -5)
    assert (J.q, J.a, J.b) == (1, 3, 2)
    with pytest.raises(DivisibilityError):
        extend_ideal(4, 1, 1, -5)


def vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def dichotomy_domain(a, b, e):
    """Triples where the two-value shape a' in {a/d, a/d^2} actually holds.

    Per prime p dividing d: either v_p(a) = v_p(d) (the extension loses
    exactly the d-part) or v_p(a) = 2 v_p(d) with v_p(e) > v_p(d) = v_p(b)
    (it loses the full square).  The branch must also be the same for every
    prime, otherwise the losses mix into something in between.
    """
    d = math.gcd(math.gcd(a, e), b)
    if d == 1:
        return True
    branches = set()
    m = d
    p = 2
    while m > 1:
        while m % p:
            p += 1
        k = vp(d, p)
        if vp(a, p) == k:
            branches.add("d")
        elif vp(a, p) == 2 * k and vp(e, p) > k and vp(b, p) == k:
            branches.add("d2")
        else:
            return False
        m //= p ** vp(m, p)
        p += 1
    return len(branches) == 1


def test_extend_ideal_shape_vs_oracle():
    # Shape of the extension against the sweep oracle.  The q-part is always
    # d = gcd(a, e, b), and the rational part a' divides a with the whole
    # quotient a/(d*a') supported on primes of d.  The sharper two-value
    # claim a' in {a/d, a/d^2} holds on dichotomy_domain only; see the
    # counterexample test below for what happens outside it.
    rng = random.Random(41)
    seen = 0
    while seen < 400:
        D = rng.choice(DS)
        a = rng.randrange(1, 80)
        e = rng.randrange(1, 16)
        b = rng.randrange(0, a)
        if (b * b - e * e * D) % a != 0:
            continue
        I = extend_ideal(a, b, e, D)
        d = math.gcd(math.gcd(a, e), b)
        assert I.q == d
        assert a % (d * I.a) == 0
        collapse = a // (d * I.a)
        assert math.gcd(collapse, d ** 64) == collapse  # primes of collapse divide d
        if dichotomy_domain(a, b, e):
            allowed = {a // d}
            if a % (d * d) == 0:
                allowed.add(a // (d * d))
            assert I.a in allowed
        assert (I.q, I.a, I.b) == hnf_oracle(module_rows(a, b, e, D))
        seen += 1


def test_extend_ideal_two_value_shape_has_counterexamples():
    # The two-value shape fails off the clean domain.  Both patterns are
    # pinned so a future "fix" that silently changes the extension gets
    # caught; the module really is (8)(2, y) resp. (6)(1, y), verified by
    # the independent sweep oracle and by hand.
    I = extend_ideal(64, 48, 8, -6)
    assert (I.q, I.a, I.b) == (8, 2, 0)
    assert (I.q, I.a, I.b) == hnf_oracle(module_rows(64, 48, 8, -6))
    assert I.a not in {64 // 8, 64 // 64}
    assert ideal_norm(I) == 128
    # mixed branches: p=2 loses one factor, p=3 loses its square
    J = extend_ideal(18, 6, 18, -5)
    assert (J.q, J.a, J.b) == (6, 1, 0)
    assert (J.q, J.a, J.b) == hnf_oracle(module_rows(18, 6, 18, -5))


def test_form_to_ideal_round_trip():
    rng = random.Random(43)
    for D in DS:
        for _ in range(100):
            I = random_invertible_ideal(rng, D)
            F = ideal_to_class(I).rep
            J = form_to_ideal(F, D)
            assert ideal_to_class(J) == ideal_to_class(I)
            assert ideal_norm(J) == F.a


def test_ideal_to_class_spec_examples():
    assert ideal_to_class(unit_ideal(-5)).rep == IntBinaryForm(1, 0, 5)
    assert ideal_to_class(QuadIdeal(-5, 1, 3, 2)).rep == IntBinaryForm(2, 2, 3)
    assert ideal_to_class(QuadIdeal(-5, 1, 2, 1)).rep == IntBinaryForm(2, 2, 3)
    with pytest.raises(NonInvertibleError):
        # (2, y-1) in Z[sqrt(-3)]: form [2,2,2] is imprimitive
        ideal_to_class(QuadIdeal(-3, 1, 2, 1))


def test_is_principal():
    assert is_principal(unit_ideal(-5))
    assert is_principal(QuadIdeal(-5, 7, 1, 0))
    assert not is_principal(QuadIdeal(-5, 1, 3, 2))
    I = QuadIdeal(-5, 1, 3, 2)
    assert is_principal(ideal_mul(I, ideal_conjugate(I)))


def test_class_order_spec_examples():
    assert class_order(unit_ideal(-5)) == 1
    assert class_order(QuadIdeal(-5, 1, 3, 2)) == 2
    assert class_order(QuadIdeal(-5, 1, 2, 1)) == 2


# --- class numbers ----------------------------------------------------------

def enumerate_reduced_forms(disc):
    """All reduced primitive forms of negative discriminant, by direct scan
    of the reduced domain -a < b <= a <= c (b >= 0 when a == c or b == a)."""
    out = []
    amax = math.isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append(IntBinaryForm(a, b, c))
    return out


def closure_size(disc):
    """Size of the group generated by all reduced forms under composition."""
    forms = enumerate_reduced_forms(disc)
    seen = set(forms)
    frontier = list(forms)
    while frontier:
        F = frontier.pop()
        for G in forms:
            H = compose(F, G)
            if H not in seen:
                seen.add(H)
                frontier.append(H)
    return len(seen)


@pytest.mark.parametrize(
    "disc, h",
    [(-3, 1), (-4, 1), (-7, 1), (-8, 1), (-11, 1), (-15, 2), (-20, 2),
     (-23, 3), (-24, 2), (-47, 5), (-56, 4), (-71, 7), (-163, 1), (-231, 12)],
)
def test_class_number_disc_known(disc, h):
    assert class_number_disc(disc) == h
    assert len(enumerate_reduced_forms(disc)) == h
    assert closure_size(disc) == h


def test_class_number_disc_all_small():
    for disc in range(-200, 0):
        if disc % 4 not in (0, 1):
            continue
        want = len(enumerate_reduced_forms(disc))
        assert class_number_disc(disc) == want, disc


def test_class_number_for_orders():
    assert class_number(-1) == 1
    assert class_number(-2) == 1
    assert class_number(-5) == 2
    assert class_number(-6) == 2
    assert class_number(-13) == 2
    assert class_number(-14) == 4
    assert class_number(-21) == 4


def test_class_number_disc_numpy_path_agrees(monkeypatch):
    vals = [-1000003, -999960, -4000004]
    want = [class_number_disc(v) for v in vals]
    monkeypatch.setattr(qr, "_NUMPY_THRESHOLD", 10)
    got = [class_number_disc(v) for v in vals]
    assert got == want
    assert class_number_disc(-20) == 2


# --- conductors and the pushforward ------------------------------------------

def test_conductor_data_spec_values():
    cd = conductor_data(-5)
    assert (cd.S, cd.d, cd.disc_max, cd.conductor) == (1, -5, -20, 1)
    cd = conductor_data(-12)
    assert (cd.S, cd.d, cd.disc_max, cd.conductor) == (2, -3, -3, 4)
    cd = conductor_data(-4)
    assert (cd.S, cd.d, cd.disc_max, cd.conductor) == (2, -1, -4, 2)
    cd = conductor_data(-45)
    assert (cd.S, cd.d, cd.disc_max, cd.conductor) == (3, -5, -20, 3)


def test_conductor_identity_holds():
    rng = random.Random(47)
    for _ in range(200):
        v = -rng.randrange(1, 10**6)
        cd = conductor_data(v)
        assert cd.S * cd.S * cd.d == v
        assert is_squarefree_int(-cd.d) or cd.d == -1
        assert cd.conductor**2 * cd.disc_max == 4 * v


def test_push_to_maximal_examples():
    # already-maximal case: class and order survive unchanged
    I = QuadIdeal(-5, 1, 3, 2)
    cls = push_to_maximal_helper(I, -5)
    assert cls.rep == IntBinaryForm(2, 2, 3)
    assert cls.order() == 2
    # principal ideal in a non-maximal order maps to the trivial class
    P = QuadIdeal(-12, 2, 1, 0)  # the ideal (2) in Z[sqrt(-12)]
    cls = push_to_maximal_helper(P, -12)
    assert cls.is_trivial
    assert cls.disc == -3


def push_to_maximal_helper(I, v):
    return qr.push_to_maximal(I, conductor_data(v))


def test_push_to_maximal_is_homomorphism():
    rng = random.Random(53)
    for v in (-12, -20, -45, -48):
        cd = conductor_data(v)
        for _ in range(40):
            I = random_invertible_ideal(rng, v)
            J = random_invertible_ideal(rng, v)
            lhs = qr.push_to_maximal(ideal_mul(I, J), cd)
            rhs = qr.push_to_maximal(I, cd) * qr.push_to_maximal(J, cd)
            assert lhs == rhs


def test_push_to_maximal_kernel_bound():
    # the kernel on the cyclic subgroup generated by each ideal is <= 4S^2
    rng = random.Random(59)
    for v in (-12, -20, -45, -48, -80):
        cd = conductor_data(v)
        for _ in range(30):
            I = random_invertible_ideal(rng, v)
            below = class_order(I)
            above = qr.push_to_maximal(I, cd).order()
            assert below % above == 0
            assert below // above <= 4 * cd.S * cd.S


def test_class_number_from_conductor_matches_enumeration():
    for v in (-5, -12, -16, -20, -36, -45, -48, -80, -99):
        cd = conductor_data(v)
        assert class_number_from_conductor(cd) == class_number_disc(4 * v), v
