import math

import pytest
from hypothesis import given, strategies as st

from triplexp.modular import (PrimeContext, distance_to_multiple, factorize, is_prime,
                              mod_pow, multiplicative_order, primitive_roots, root_table,
                              unit_root)

from conftest import brute_order


@pytest.mark.parametrize("n, expected", [(7, True), (1, False), (561, False), (0, False),
                                         (2, True), (3, True), (4, False), (2147483647, True)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve():
    limit = 5000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    assert [is_prime(n) for n in range(limit)] == sieve


@pytest.mark.parametrize("n, expected", [(12, [2, 2, 3]), (1, []), (100, [2, 2, 5, 5]),
                                         (97, [97]), (2 * 3 * 5 * 7 * 11 * 13, [2, 3, 5, 7, 11, 13])])
def test_factorize(n, expected):
    assert factorize(n) == expected


@given(st.integers(1, 10**7))
def test_factorize_product_and_primality(n):
    fs = factorize(n)
    assert math.prod(fs) == n
    assert all(is_prime(q) for q in fs)
    assert fs == sorted(fs)


@pytest.mark.parametrize("b, e, p, expected", [(2, 3, 7, 1), (5, 0, 11, 1), (3, 6, 7, 1)])
def test_mod_pow_examples(b, e, p, expected):
    assert mod_pow(b, e, p) == expected


@given(st.integers(-10**6, 10**6), st.integers(0, 20), st.integers(2, 2**31 - 1))
def test_mod_pow_iterated(b, e, p):
    acc = 1
    for _ in range(e):
        acc = acc * b % p
    assert mod_pow(b, e, p) == acc % p


@pytest.mark.parametrize("g, p, expected", [(1, 7, 1), (2, 7, 3), (3, 7, 6)])
def test_order_examples(g, p, expected):
    assert multiplicative_order(g, p) == expected


def test_order_rejects_zero():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


def test_order_exhaustive_small_primes():
    for p in range(3, 500):
        if not is_prime(p):
            continue
        for g in range(1, p):
            T = multiplicative_order(g, p)
            assert (p - 1) % T == 0
            assert T == brute_order(g, p)


def test_primitive_roots_count():
    # phi(p - 1) generators
    assert len(primitive_roots(11)) == 4
    assert len(primitive_roots(13)) == 4
    assert primitive_roots(7) == [3, 5]


@pytest.mark.parametrize("h, x, expected", [(4, 1, 1j), (5, 0, 1), (7, 7, 1), (4, 2, -1),
                                            (4, -1, -1j)])
def test_unit_root_examples(h, x, expected):
    assert unit_root(h, x) == expected


@given(st.integers(1, 10**6), st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_unit_root_homomorphism(h, x, y):
    z = unit_root(h, x) * unit_root(h, y)
    w = unit_root(h, x + y)
    assert abs(z.real - w.real) <= 1e-10 and abs(z.imag - w.imag) <= 1e-10
    assert abs(abs(unit_root(h, x)) - 1) <= 1e-12
    assert unit_root(h, x) == unit_root(h, x + h)


def test_root_table_matches_unit_root():
    for h in (1, 2, 3, 4, 12, 101):
        t = root_table(h)
        assert max(abs(t[k] - unit_root(h, k)) for k in range(h)) < 1e-15
        assert not t.flags.writeable


@pytest.mark.parametrize("u, r, expected", [(0, 5, 0), (7, 5, 2), (9, 5, 1), (-9, 5, 1), (5, 10, 5)])
def test_distance_examples(u, r, expected):
    assert distance_to_multiple(u, r) == expected


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_distance_properties(u, r):
    d = distance_to_multiple(u, r)
    assert 0 <= d <= r // 2
    assert d == distance_to_multiple(u + r, r) == distance_to_multiple(-u, r)
    assert d == min(abs(u - k * r) for k in (u // r, u // r + 1))


def test_prime_context_invariants():
    ctx = PrimeContext.create(13, 4)
    assert ctx.T == 6
    assert list(ctx.powers()[:7]) == [pow(4, x, 13) for x in range(7)]
    assert ctx.power(ctx.T + 2) == pow(4, 2, 13)
    with pytest.raises(ValueError):
        PrimeContext(13, 4, 3)  # 4^3 != 1 mod 13
    with pytest.raises(ValueError):
        PrimeContext(13, 4, 12)  # 12 is a multiple of the true order
    with pytest.raises(ValueError):
        PrimeContext.create(15, 2)
    with pytest.raises(ValueError):
        PrimeContext.create(7, 14)
