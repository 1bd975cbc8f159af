import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacyclic.algebra import (
    CrtImage,
    FieldScalar,
    RingElement,
    batch_multiplier,
    batch_ring_mul,
    circulant_block,
    circulant_to_element,
    crt_decompose,
    crt_recombine,
    field_mul,
    field_multiplier,
    field_pow,
    multiplier,
    norm_one_subgroup,
    poly_mod,
    poly_mul,
    primitive_element,
    split,
)
from metacyclic.errors import ParameterError, PreconditionError
from metacyclic.numtheory import iter_primes, mult_order

from conftest import all_elements, poly, x_pow


def elements(q, m):
    return st.lists(st.integers(0, q - 1), min_size=m, max_size=m).map(lambda c: RingElement(tuple(c), q, m))


# -- ring arithmetic ------------------------------------------------------------


def test_ring_mul_examples():
    q, m = 2, 5
    assert x_pow(1, q, m) * x_pow(4, q, m) == RingElement.one(q, m)
    assert poly([1, 1], q, m) * RingElement.one(q, m) == poly([1, 1], q, m)
    e = RingElement.all_ones(q, m)
    # convolution by hand: every coefficient of e*e is 5 = 1 mod 2
    assert e * e == e


def test_ring_mul_mismatch():
    with pytest.raises(ParameterError):
        RingElement.one(2, 5) * RingElement.one(3, 5)


def test_ring_element_validation():
    with pytest.raises(ParameterError):
        RingElement((0, 1), 2, 3)
    with pytest.raises(ParameterError):
        RingElement((0, 2, 0), 2, 3)
    assert RingElement.from_coeffs([0, 0, 0, 0, 0, 3], 2, 5) == poly([1], 2, 5)


def test_ring_mul_matches_polynomial_reduction():
    # independent route: full product then fold x^(m+i) -> x^i
    rnd = random.Random(7)
    for q, m in [(2, 5), (3, 7), (5, 11)]:
        for _ in range(50):
            a = [rnd.randrange(q) for _ in range(m)]
            b = [rnd.randrange(q) for _ in range(m)]
            full = poly_mul(a, b, q)
            xm1 = [q - 1] + [0] * (m - 1) + [1]
            expected = poly_mod(full, xm1, q)
            assert (poly(a, q, m) * poly(b, q, m)).coeffs == tuple(expected) + (0,) * (m - len(expected))


@settings(max_examples=60, deadline=None)
@given(elements(3, 7), elements(3, 7), elements(3, 7))
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


def test_batch_ring_mul_matches_scalar():
    rnd = np.random.default_rng(3)
    q, m = 3, 7
    f = rnd.integers(0, q, size=(40, m))
    g = rnd.integers(0, q, size=(40, m))
    out = batch_ring_mul(f, g, q)
    for i in range(40):
        assert tuple(out[i]) == (poly(f[i], q, m) * poly(g[i], q, m)).coeffs
        assert tuple(batch_multiplier(f, 2)[i]) == multiplier(poly(f[i], q, m), 2).coeffs


# -- multipliers -------------------------------------------------------------------


def test_multiplier_examples():
    q, m = 2, 5
    f = poly([1, 1, 0, 1], q, m)
    assert multiplier(f, 1) == f
    assert multiplier(x_pow(1, q, m), 4) == x_pow(4, q, m)
    assert multiplier(f, 4) == poly([1, 0, 1, 0, 1], q, m)


def test_multiplier_rejects_non_unit():
    with pytest.raises(ParameterError):
        multiplier(RingElement.one(2, 6), 2)


@settings(max_examples=60, deadline=None)
@given(elements(3, 7), elements(3, 7), st.integers(1, 6), st.integers(1, 6))
def test_multiplier_is_automorphism(f, g, r, r2):
    assert multiplier(f + g, r) == multiplier(f, r) + multiplier(g, r)
    assert multiplier(f * g, r) == multiplier(f, r) * multiplier(g, r)
    assert multiplier(multiplier(f, r), r2) == multiplier(f, r * r2 % 7)
    assert multiplier(f, r).evaluate_at_one() == f.evaluate_at_one()


# -- split and CRT -----------------------------------------------------------------


@pytest.mark.parametrize("q, m, irreducible", [(2, 5, True), (2, 7, False), (3, 7, True), (2, 11, True), (2, 13, True), (5, 7, True)])
def test_split_examples(q, m, irreducible):
    f = split(q, m)
    assert f.h == (1,) * m
    assert f.irreducible is irreducible
    prod = poly_mul(f.linear, f.h, q)
    assert prod == [q - 1] + [0] * (m - 1) + [1]


def test_split_rejects():
    with pytest.raises(ParameterError):
        split(5, 5)
    with pytest.raises(ParameterError):
        split(2, 9)
    with pytest.raises(ParameterError):
        split(2, 7, s=4)


def ben_or_irreducible(h, q):
    """h irreducible iff gcd(h, x^(q^k) - x) = 1 for k <= deg/2."""

    def gcd(a, b):
        while b:
            a, b = b, poly_mod(a, b, q)
        return a

    n = len(h) - 1
    xk = [0, 1]
    for k in range(1, n // 2 + 1):
        acc = [1]
        for _ in range(q):
            acc = poly_mod(poly_mul(acc, xk, q), h, q)
        xk = acc
        diff = list(xk) + [0] * max(0, 2 - len(xk))
        diff[1] = (diff[1] - 1) % q
        while diff and diff[-1] == 0:
            diff.pop()
        if len(gcd(list(h), diff)) > 1:
            return False
    return True


@pytest.mark.parametrize("q", [2, 3, 5])
def test_split_irreducibility_flag_vs_order(q):
    for m in iter_primes(3, 200):
        if m == q:
            continue
        order = 1
        while pow(q, order, m) != 1:
            order += 1
        assert split(q, m).irreducible is (order == m - 1)


@pytest.mark.parametrize("q", [2, 3])
def test_split_irreducibility_flag_vs_ben_or(q):
    for m in iter_primes(3, 40):
        if m != q:
            assert split(q, m).irreducible is ben_or_irreducible((1,) * m, q), m


def test_crt_examples():
    f = split(2, 5)
    img = crt_decompose(RingElement.zero(2, 5), f)
    assert img.scalar.value == 0 and not any(img.field_part)
    e = RingElement.all_ones(2, 5)
    img = crt_decompose(e, f)
    assert img.scalar.value == 1 and not any(img.field_part)
    assert crt_recombine(CrtImage(FieldScalar(1, 2), (0, 0, 0, 0)), f) == e
    img = crt_decompose(x_pow(1, 2, 5), f)
    assert img.scalar.value == 1 and img.field_part == (0, 1, 0, 0)
    assert crt_recombine(CrtImage(FieldScalar(0, 2), (0,) * 4), f).is_zero()


def test_crt_exhaustive_q2_m5():
    f = split(2, 5)
    elems = list(all_elements(2, 5))
    images = {}
    for a in elems:
        img = crt_decompose(a, f)
        assert crt_recombine(img, f) == a
        assert img.field_part == tuple(poly_mod(a.coeffs, f.h, 2)) + (0,) * (4 - len(poly_mod(a.coeffs, f.h, 2)))
        images[a] = img
    assert len(set(images.values())) == 32
    for a, b in itertools.product(elems, repeat=2):
        ia, ib, iab = images[a], images[b], images[a * b]
        assert iab.scalar.value == ia.scalar.value * ib.scalar.value % 2
        assert iab.field_part == field_mul(ia.field_part, ib.field_part, f)


def test_crt_random_q3_m7(rng):
    q, m = 3, 7
    f = split(q, m)
    coeffs = rng.integers(0, q, size=(10_000, 2, m))
    for a_c, b_c in coeffs:
        a, b = RingElement(tuple(int(c) for c in a_c), q, m), RingElement(tuple(int(c) for c in b_c), q, m)
        ia, ib = crt_decompose(a, f), crt_decompose(b, f)
        assert crt_recombine(ia, f) == a
        iab = crt_decompose(a * b, f)
        assert iab.scalar.value == ia.scalar.value * ib.scalar.value % q
        assert iab.field_part == field_mul(ia.field_part, ib.field_part, f)


def test_crt_mismatch():
    with pytest.raises(ParameterError):
        crt_decompose(RingElement.one(2, 7), split(2, 5))


# -- F_Q and its norm-one subgroup -------------------------------------------------------


def test_primitive_element_generates():
    f = split(2, 5)
    g = primitive_element(f)
    seen = set()
    z = field_pow(g, 0, f)
    for _ in range(15):
        seen.add(z)
        z = field_mul(z, g, f)
    assert len(seen) == 15


def test_multiplier_acts_as_frobenius_power():
    # mu_r on F_Q equals z -> z^(q^k) where q^k = r mod m
    for q, m, r in [(2, 5, 4), (3, 7, 2), (2, 13, 3)]:
        f = split(q, m)
        k = next(k for k in range(m - 1) if pow(q, k, m) == r)
        rnd = random.Random(q * m)
        for _ in range(20):
            z = tuple(rnd.randrange(q) for _ in range(m - 1))
            assert field_multiplier(z, r, f) == field_pow(z, q**k, f)


@pytest.mark.parametrize("q, m, s, size", [(2, 5, 2, 5), (3, 7, 3, 91), (2, 11, 2, 33), (2, 13, 3, 273), (3, 5, 2, 10), (3, 7, 2, 28)])
def test_norm_one_subgroup(q, m, s, size):
    f = split(q, m, s)
    by_gen = norm_one_subgroup(f, s, method="generator")
    by_filter = norm_one_subgroup(f, s, method="filter")
    assert by_gen == by_filter
    assert len(by_gen) == size == (f.t**s - 1) // (f.t - 1)
    one = field_pow((1,), 0, f)
    assert one in by_gen
    sample = sorted(by_gen)[:20]
    for a in sample:
        for b in sample:
            assert field_mul(a, b, f) in by_gen


def test_norm_one_requires_irreducible():
    with pytest.raises(PreconditionError):
        norm_one_subgroup(split(2, 7, 3), 3)


# -- circulants ----------------------------------------------------------------------


def test_circulant_example_from_double_circulant_matrix():
    mat = np.array([[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 1, 1, 0]])
    left = circulant_to_element(mat[:, :3], 2)
    right = circulant_to_element(mat[:, 3:], 2)
    assert left == RingElement.one(2, 3)
    assert right == poly([0, 1, 1], 2, 3)
    assert np.array_equal(circulant_block(right), mat[:, 3:])


def test_circulant_basic():
    assert np.array_equal(circulant_block(RingElement.one(3, 4)), np.eye(4, dtype=int))
    assert np.array_equal(circulant_block(x_pow(1, 2, 3)), np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    with pytest.raises(ParameterError):
        circulant_to_element(np.array([[1, 0], [1, 0]]), 2)


@settings(max_examples=40, deadline=None)
@given(elements(3, 5), elements(3, 5))
def test_circulant_is_ring_isomorphism(f, g):
    assert np.array_equal(circulant_block(f) @ circulant_block(g) % 3, circulant_block(f * g))


# -- all-ones identity -------------------------------------------------------------


def test_all_ones_power_identity_randomized():
    rnd = random.Random(11)
    primes = list(iter_primes(2, 40))
    for _ in range(50):
        q = rnd.choice(primes)
        m = rnd.randrange(2, 20)
        s = rnd.randrange(1, 7)
        e = RingElement.all_ones(q, m)
        assert e**s == e * pow(m, s - 1, q), (q, m, s)
