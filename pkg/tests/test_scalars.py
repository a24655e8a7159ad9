from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from smallq.scalars import (BadPrime, DivisionByZero, EvenOrSmallL, default_prime, make_field, q_binom,
                            q_binom_lucas, q_int, smallest_primitive_root, to_prime_field)

q = sympy.Symbol("q")


def sympy_value(x, l):
    """A cyclotomic scalar as a polynomial in q reduced mod Phi_l."""
    return sum(sympy.Rational(c, x.den) * q ** k for k, c in enumerate(x.num))


def gauss_binom_poly(a, b):
    # [a choose b] in the symmetric normalization, as a Laurent polynomial times q^(b(a-b))
    num = sympy.prod([1 - q ** (2 * (a - i)) for i in range(b)])
    den = sympy.prod([1 - q ** (2 * (i + 1)) for i in range(b)])
    return sympy.cancel(num / den), b * (a - b)


def reduce_mod_phi(expr, shift, l):
    """expr * q^(-shift), reduced modulo Phi_l(q), as a polynomial in q."""
    phi = sympy.cyclotomic_poly(l, q)
    inv = sympy.invert(q ** shift, phi, q) if shift else 1
    return sympy.rem(sympy.expand(expr * inv), phi, q)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_q_binom_against_polynomial_oracle(l):
    F = make_field(l)
    for a in range(0, 2 * l + 2):
        for b in range(0, a + 1):
            poly, shift = gauss_binom_poly(a, b)
            want = reduce_mod_phi(poly, shift, l)
            got = sympy_value(q_binom(F, a, b), l)
            assert sympy.expand(got - want) == 0, (a, b)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_q_int_vanishes_at_l(l):
    F = make_field(l)
    assert not q_int(F, l)
    assert all(q_int(F, m) for m in range(1, l))
    assert q_int(F, 1) == 1


@pytest.mark.parametrize("mode", ["cyclotomic", "prime"])
@pytest.mark.parametrize("l", [3, 5])
def test_pascal_matches_q_lucas(l, mode):
    F = make_field(l, mode)
    for a in range(3 * l + 1):
        for b in range(a + 1):
            assert q_binom(F, a, b) == q_binom_lucas(F, a, b)


def test_default_primes():
    assert default_prime(3) == 1000003
    assert default_prime(5) == 1000081
    for l in (3, 5, 7, 9):
        p = default_prime(l)
        assert sympy.isprime(p) and p % l == 1 and p > 10 ** 6
        assert not any(sympy.isprime(n) and n % l == 1 for n in range(10 ** 6 + 1, p))


def test_prime_mode_eps():
    F = make_field(3, "prime", 7)
    assert smallest_primitive_root(7) == 3
    assert F.eps == 2
    assert F.eps ** 3 == 1
    G = make_field(5, "prime")
    e = G.eps
    assert e ** 5 == 1 and e != 1
    assert sympy.n_order(smallest_primitive_root(G.p), G.p) == G.p - 1


def test_field_errors():
    with pytest.raises(EvenOrSmallL):
        make_field(4)
    with pytest.raises(EvenOrSmallL):
        make_field(1)
    with pytest.raises(BadPrime):
        make_field(3, "prime", 11)
    with pytest.raises(BadPrime):
        make_field(3, "prime", 9)
    F = make_field(3)
    with pytest.raises(DivisionByZero):
        F.zero.inv()


def test_cyclotomic_relations_and_printing():
    F = make_field(3)
    e = F.eps
    assert e ** 3 == 1
    assert e * e + e + 1 == 0
    assert str(e * e) == "-1 - eps"
    assert F(Fraction(1, 2)) * 2 == 1


coeffs = st.lists(st.integers(-50, 50), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_field_axioms_l5(a, b):
    F = make_field(5)
    x = sum((F.eps_pow(k) * c for k, c in enumerate(a)), F.zero)
    y = sum((F.eps_pow(k) * c for k, c in enumerate(b)), F.zero)
    assert x * y == y * x
    assert (x + y) - y == x
    if x:
        assert x * x.inv() == 1
        assert (y / x) * x == y


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_reduction_to_prime_field_is_a_homomorphism(a):
    F = make_field(5)
    G = make_field(5, "prime")
    x = sum((F.eps_pow(k) * c for k, c in enumerate(a)), F.zero)
    y = x * F.eps + 3
    assert to_prime_field(x * y, G) == to_prime_field(x, G) * to_prime_field(y, G)
    assert to_prime_field(F.eps, G) == G.eps
