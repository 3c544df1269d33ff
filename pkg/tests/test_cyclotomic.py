from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from e6weyl.cyclotomic import (
    I, OMEGA, ONE, XI, ZERO, ZETA, CycloScalar, default_primes, is_prime,
    modular_image, primitive_root_36, root_of_unity,
)

coeff = st.integers(-5, 5)
scalars = st.builds(
    lambda cs, d: CycloScalar([Fraction(c, d) for c in cs]),
    st.lists(coeff, min_size=1, max_size=14),
    st.integers(1, 4),
)


def test_zeta_has_order_36():
    assert ZETA ** 36 == ONE
    assert all(ZETA ** k != ONE for k in range(1, 36))


def test_cube_roots_sum_to_zero():
    assert ONE + OMEGA + OMEGA * OMEGA == ZERO


def test_i_squared():
    assert I * I == -ONE


@pytest.mark.parametrize("k, order", [(12, 3), (9, 4), (4, 9)])
def test_root_of_unity_orders(k, order):
    z = root_of_unity(k)
    assert z ** order == ONE
    assert all(z ** m != ONE for m in range(1, order))


def test_named_roots():
    assert root_of_unity(12) == OMEGA
    assert root_of_unity(9) == I
    assert XI ** 9 == ONE and XI ** 3 != ONE
    assert root_of_unity(-1) == ZETA.inv()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_modular_image_basics():
    p = default_primes(1)[0]
    r = primitive_root_36(p)
    assert modular_image(ONE, p, r) == 1
    assert modular_image(ZETA, p, r) == r


def test_modular_image_rejects_bad_denominator():
    p = 37
    with pytest.raises(ZeroDivisionError):
        modular_image(CycloScalar.rational(Fraction(1, 37)), p, primitive_root_36(p))


def test_default_primes():
    ps = default_primes(3)
    assert len(set(ps)) == 3
    assert all(is_prime(p) and p % 36 == 1 and p >= 2**30 for p in ps)


def test_primitive_root_rejects_wrong_prime():
    with pytest.raises(ValueError):
        primitive_root_36(41)


@given(scalars, scalars)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a


@given(scalars, scalars, scalars)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_modular_image_is_a_ring_map(a, b):
    p = default_primes(1)[0]
    r = primitive_root_36(p)
    m = lambda x: modular_image(x, p, r)
    assert m(a * b) == m(a) * m(b) % p
    assert m(a + b) == (m(a) + m(b)) % p


@given(scalars)
def test_text_round_trip(a):
    assert CycloScalar.from_text(a.to_text()) == a


@given(scalars)
def test_equal_means_equal_hash(a):
    b = CycloScalar.from_text(a.to_text())
    assert hash(a) == hash(b)
