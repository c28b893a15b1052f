import random

import pytest
from hypothesis import given, settings, strategies as st

from dynadist.arith import primes_up_to
from dynadist.polynomials import (
    DegreeCapExceeded,
    InexactDivision,
    IntPoly,
    ModPoly,
    ModulusMismatch,
    compose,
    derivative,
    divrem_exact,
    evaluate,
    format_poly,
    frobenius_power,
    gcd_mod,
    has_root_mod_p,
    iterate,
    parse_poly,
    reduce_mod_p,
    roots_mod_p,
)

PRIMES_1000 = list(primes_up_to(1000))

coeff_lists = st.lists(st.integers(-50, 50), max_size=6)


def monic(coeffs):
    return IntPoly(list(coeffs) + [1])


def naive_xpow_mod(e, h):
    # multiply by x one step at a time, reducing with the monic modulus
    p, d = h.p, h.degree
    r = [1] + [0] * (d - 1)
    for _ in range(e):
        top = r[-1]
        r = [0] + r[:-1]
        r = [(c - top * hc) % p for c, hc in zip(r, h.coeffs)]
    return ModPoly(r, p)


def test_arithmetic_examples():
    x = IntPoly.x()
    assert (x + 1) * (x - 1) == IntPoly([-1, 0, 1])
    assert (x + 1) * IntPoly() == IntPoly()
    a = ModPoly([1, 1, 1], 5)
    b = ModPoly([-1, -1, 1], 5)
    assert a + b == ModPoly([0, 0, 2], 5)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        ModPoly([1, 1], 5) + ModPoly([1, 1], 7)
    with pytest.raises(ModulusMismatch):
        gcd_mod(ModPoly([1, 1], 5), ModPoly([1, 1], 7))


def test_zero_polynomial_normalization():
    assert IntPoly([0, 0]).degree == -1
    assert ModPoly([5, 10], 5).is_zero()
    assert ModPoly([0, 5, 1], 5).coeffs == (0, 0, 1)


@given(coeff_lists, coeff_lists)
def test_mul_matches_coefficient_convolution(a, b):
    expected = [0] * max(len(a) + len(b) - 1, 0)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            expected[i + j] += ai * bj
    assert IntPoly(a) * IntPoly(b) == IntPoly(expected)


def test_compose_examples():
    f = IntPoly([1, 0, 1])
    assert compose(f, f) == IntPoly([2, 0, 2, 0, 1])
    assert compose(f, IntPoly.x()) == f
    assert compose(IntPoly.x(), f) == f


@settings(max_examples=60)
@given(coeff_lists, coeff_lists, coeff_lists)
def test_compose_associative(f, g, h):
    f, g, h = IntPoly(f[:4]), IntPoly(g[:3]), IntPoly(h[:3])
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(coeff_lists, st.integers(-20, 20))
def test_compose_evaluates_pointwise(f, a):
    f = IntPoly(f)
    g = IntPoly([3, -1, 2])
    assert evaluate(compose(f, g), a) == evaluate(f, evaluate(g, a))


def test_iterate_examples():
    assert iterate(IntPoly([1, 0, 1]), 1) == IntPoly([1, 0, 1])
    assert iterate(IntPoly([1, 0, 1]), 2) == IntPoly([2, 0, 2, 0, 1])
    assert iterate(IntPoly([3, 0, 1]), 2) == IntPoly([12, 0, 6, 0, 1])
    assert iterate(IntPoly([1, 0, 1]), 5).degree == 32


def test_iterate_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        iterate(IntPoly([1, 0, 1]), 21)
    with pytest.raises(DegreeCapExceeded):
        iterate(IntPoly([1, 0, 1]), 4, degree_cap=8)


def test_divrem_exact_examples():
    assert divrem_exact(IntPoly([12, -1, 6, 0, 1]), IntPoly([3, -1, 1])) == IntPoly([4, 1, 1])
    f = IntPoly([5, 2, 7])
    assert divrem_exact(f, IntPoly([1])) == f
    assert divrem_exact(IntPoly([-1, 0, 1]), IntPoly([1, 1])) == IntPoly([-1, 1])


def test_divrem_exact_rejects_remainder_and_non_monic():
    with pytest.raises(InexactDivision):
        divrem_exact(IntPoly([1, 0, 1]), IntPoly([1, 1]))
    with pytest.raises(ValueError):
        divrem_exact(IntPoly([0, 0, 2]), IntPoly([0, 2]))


def test_divrem_exact_roundtrip_randomized():
    rng = random.Random(1234)
    for _ in range(500):
        a = IntPoly([rng.randint(-99, 99) for _ in range(rng.randint(0, 8))])
        b = IntPoly([rng.randint(-99, 99) for _ in range(rng.randint(0, 6))] + [1])
        assert divrem_exact(a * b, b) == a
    for _ in range(500):
        p = rng.choice(PRIMES_1000)
        a = ModPoly([rng.randrange(p) for _ in range(rng.randint(0, 8))], p)
        b = ModPoly([rng.randrange(p) for _ in range(rng.randint(0, 6))] + [1], p)
        assert divrem_exact(a * b, b) == a


def test_derivative_examples():
    assert derivative(IntPoly([3, 0, 1])) == IntPoly([0, 2])
    assert derivative(IntPoly([7])).is_zero()
    assert derivative(ModPoly([12, 0, 6, 0, 1], 5)) == ModPoly([0, 2, 0, 4], 5)


def test_evaluate_examples():
    assert evaluate(ModPoly([4, 1, 1], 5), 2) == 0
    assert evaluate(IntPoly([9, 4, 4]), 0) == 9
    assert evaluate(ModPoly([1, 0, 1], 5), 3) == 0
    assert IntPoly([1, 0, 1])(3) == 10


def test_gcd_examples():
    assert gcd_mod(ModPoly([-1, 0, 1], 7), ModPoly([-1, 1], 7)) == ModPoly([6, 1], 7)
    f = ModPoly([2, 4, 3], 7)
    assert gcd_mod(f, ModPoly([], 7)) == f.monic()
    assert gcd_mod(ModPoly([4, 1, 1], 5), ModPoly([0, -1, 0, 0, 0, 1], 5)) == ModPoly([3, 1], 5)


def test_frobenius_power_examples():
    for p in (5, 11, 101):
        for a in (0, 1, 3):
            assert frobenius_power(ModPoly([-a, 1], p), p) == ModPoly([a], p)
    assert frobenius_power(ModPoly([1, 0, 1], 5), 2) == ModPoly([4], 5)
    h = ModPoly([4, 1, 1], 5)
    assert frobenius_power(h, 5) == naive_xpow_mod(5, h) == ModPoly([2], 5)


def test_frobenius_power_matches_naive():
    rng = random.Random(99)
    for _ in range(200):
        p = rng.choice(PRIMES_1000[:40])
        h = ModPoly([rng.randrange(p) for _ in range(rng.randint(1, 6))] + [1], p)
        e = rng.randint(0, 300)
        assert frobenius_power(h, e) == naive_xpow_mod(e, h)


def test_has_root_examples():
    assert has_root_mod_p(ModPoly([4, 1, 1], 5))
    assert not has_root_mod_p(ModPoly([1, -1, 1], 5))
    assert has_root_mod_p(ModPoly([-3, 1], 7))
    assert not has_root_mod_p(ModPoly([3], 7))


def test_has_root_gcd_path_agrees_with_exhaustive():
    rng = random.Random(2024)
    for p in PRIMES_1000:
        for _ in range(3):
            h = ModPoly([rng.randrange(p) for _ in range(rng.randint(1, 8))] + [rng.randrange(1, p)], p)
            exhaustive = any(evaluate(h, a) == 0 for a in range(p))
            assert has_root_mod_p(h, exhaustive_limit=0) == exhaustive


def test_roots_examples():
    assert roots_mod_p(ModPoly([4, 1, 1], 5)) == [2]
    assert roots_mod_p(ModPoly([1, -1, 1], 7)) == [3, 5]
    assert roots_mod_p(ModPoly([1, 0, 1], 3)) == []


def test_roots_both_paths_agree_with_exhaustive():
    rng = random.Random(77)
    for p in PRIMES_1000:
        h = ModPoly([rng.randrange(p) for _ in range(rng.randint(1, 8))] + [1], p)
        # force a few roots in
        for a in rng.sample(range(p), min(p, 2)):
            h = h * ModPoly([-a, 1], p)
        expected = [a for a in range(p) if evaluate(h, a) == 0]
        assert roots_mod_p(h) == expected
        assert roots_mod_p(h, rng=random.Random(p), exhaustive_limit=0) == expected


def test_roots_large_prime_split():
    p = 1_000_000_007
    wanted = [3, 17, 99_999, 123_456_789, p - 1]
    h = ModPoly([1, 0, 1], p)  # p = 3 mod 4, so x^2 + 1 has no roots
    for a in wanted:
        h = h * ModPoly([-a, 1], p)
    assert roots_mod_p(h, rng=random.Random(5)) == sorted(wanted)
    assert has_root_mod_p(h)


def test_reduce_examples():
    assert reduce_mod_p(IntPoly([12, 6, 1]), 5) == ModPoly([2, 1, 1], 5)
    assert reduce_mod_p(IntPoly([0, 1, 0, 5]), 5) == ModPoly([0, 1], 5)
    phi = divrem_exact(IntPoly([12, -1, 6, 0, 1]), IntPoly([3, -1, 1]))
    assert reduce_mod_p(phi, 5) == ModPoly([4, 1, 1], 5)


@settings(max_examples=100)
@given(coeff_lists, coeff_lists, st.sampled_from(PRIMES_1000[:30]))
def test_reduce_is_ring_homomorphism(a, b, p):
    a, b = IntPoly(a), IntPoly(b)
    r = lambda f: reduce_mod_p(f, p)
    assert r(a + b) == r(a) + r(b)
    assert r(a * b) == r(a) * r(b)
    assert r(compose(a, b)) == compose(r(a), r(b))


@given(coeff_lists)
def test_text_format_roundtrip(coeffs):
    f = IntPoly(coeffs)
    assert parse_poly(format_poly(f)) == f


def test_text_format_example():
    assert format_poly(IntPoly([12, 0, 6, 0, 1])) == "12,0,6,0,1"
    assert parse_poly("12,0,6,0,1") == IntPoly([12, 0, 6, 0, 1])
    assert parse_poly("4,1,1", p=5) == ModPoly([4, 1, 1], 5)
    assert format_poly(IntPoly()) == "0"
    with pytest.raises(ValueError):
        parse_poly("1,x,2")
