from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclodarboux.arith import (
    CyclotomicNumber,
    cyclotomic_field,
    cyclotomic_polynomial,
    format_cyclotomic,
    geometric_sum,
    zeta_pow,
)

X = sympy.Symbol("X")


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    expected = sympy.Poly(sympy.cyclotomic_poly(n, X), X).all_coeffs()[::-1]
    assert cyclotomic_polynomial(n) == [int(c) for c in expected]


def test_small_cyclotomic_values():
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]
    assert zeta_pow(cyclotomic_field(2), 1) == -1
    assert zeta_pow(cyclotomic_field(4), 2) == -1


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 9, 12, 13, 21])
def test_zeta_has_exact_order(N):
    F = cyclotomic_field(N)
    z = F.zeta()
    powers = [z ** k for k in range(1, N + 1)]
    assert powers[-1] == 1
    assert all(p != 1 for p in powers[:-1])


def test_inverse_example():
    F = cyclotomic_field(3)
    z = F.zeta()
    assert (1 + z).inverse() == -z
    assert (1 + z) * (1 + z).inverse() == 1


def field_elements(N):
    F = cyclotomic_field(N)
    return st.lists(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)),
                    min_size=F.degree, max_size=F.degree).map(F.element)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 8, 12]).flatmap(
    lambda N: st.tuples(field_elements(N), field_elements(N), field_elements(N))))
def test_field_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def test_division_by_zero():
    F = cyclotomic_field(5)
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


@pytest.mark.parametrize("N", [2, 3, 4, 7, 13])
def test_geometric_sum_against_literal_sum(N):
    F = cyclotomic_field(N)
    z = F.zeta()
    for e in range(-N, 2 * N + 1):
        literal = sum((z ** (e * m) for m in range(N)), F.zero())
        assert geometric_sum(F, e) == literal
        assert (literal == 0) == (e % N != 0)


def test_rational_embedding_and_hash():
    F = cyclotomic_field(7)
    a = F.embed(Fraction(3, 4))
    assert a.is_rational() and a.to_rational() == Fraction(3, 4)
    assert a == Fraction(3, 4)
    assert hash(a) == hash(Fraction(3, 4))
    assert not F.zeta().is_rational()


def test_formatting():
    F = cyclotomic_field(3)
    z = F.zeta()
    assert format_cyclotomic(z) == "zeta"
    assert isinstance(z * z, CyclotomicNumber)
    assert format_cyclotomic(z * z) == "-1 - zeta"
