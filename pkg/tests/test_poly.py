from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from cyclodarboux.arith import cyclotomic_field
from cyclodarboux.poly import (
    ContextMismatch,
    DiagonalAutomorphism,
    Polynomial,
    VariableContext,
    apply_automorphism,
    diff,
    divide_exact,
    evaluate,
    format_polynomial,
    homogeneous_components,
    is_homogeneous,
    monomial_basis,
    substitute,
)

from conftest import XYZ, polynomials

x, y, z = (Polynomial.variable(XYZ, i) for i in range(3))
SX, SY, SZ = sympy.symbols("x y z")


def to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * SX ** e[0] * SY ** e[1] * SZ ** e[2]
                for e, c in p.terms.items()), sympy.Integer(0))


@settings(max_examples=80, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(XYZ)


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials())
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(max_terms=3))
def test_divide_exact_recovers_factor(a, b):
    if b.is_zero():
        return
    assert divide_exact(a * b, b) == a


def test_divide_exact_rejects_non_divisors():
    assert divide_exact(x ** 2 + y, x) is None
    assert divide_exact(x ** 3 - y ** 3, x - y) == x ** 2 + x * y + y ** 2
    with pytest.raises(ZeroDivisionError):
        divide_exact(x, Polynomial.zero(XYZ))


def test_monomial_basis_order_and_size():
    basis = monomial_basis(VariableContext(("x", "y")), 2)
    assert basis == [(2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(XYZ, 3)) == 10


def test_homogeneity():
    f = x ** 2 + x * y + 3 * z
    assert is_homogeneous(x ** 2 + y * z) == 2
    assert is_homogeneous(f) is None
    comps = homogeneous_components(f)
    assert comps == {1: 3 * z, 2: x ** 2 + x * y}
    with pytest.raises(ValueError):
        is_homogeneous(Polynomial.zero(XYZ))


@settings(max_examples=40, deadline=None)
@given(polynomials())
def test_diff_matches_sympy(a):
    for i, s in enumerate((SX, SY, SZ)):
        assert sympy.expand(to_sympy(diff(a, i)) - sympy.diff(to_sympy(a), s)) == 0


def test_substitute_and_evaluate():
    f = x ** 2 * y + z
    assert substitute(f, 0, y + 1) == (y + 1) ** 2 * y + z
    assert evaluate(f, {0: Fraction(2), 2: Fraction(-1)}) == 4 * y - 1


def test_floats_rejected():
    with pytest.raises(TypeError):
        Polynomial(XYZ, {(1, 0, 0): 0.5})


def test_context_mismatch():
    other = Polynomial.variable(VariableContext(("u",)), 0)
    with pytest.raises(ContextMismatch):
        x + other


def test_diagonal_automorphism():
    F = cyclotomic_field(3)
    z3 = F.zeta()
    sigma = DiagonalAutomorphism(XYZ, (F.one(), z3, z3 * z3))
    f = (x + y + z).lift(F)
    assert apply_automorphism(sigma.power(3), f) == f
    assert apply_automorphism(sigma.inverse(), apply_automorphism(sigma, f)) == f
    assert sigma.power(3).is_identity()
    assert not sigma.is_identity()


def test_formatting():
    assert format_polynomial(x ** 3 - y ** 3) == "x^3 - y^3"
    assert format_polynomial(-x - y) == "-x - y"
    assert format_polynomial(Fraction(1, 2) * x * y + 3) == "1/2*x*y + 3"
    assert format_polynomial(Polynomial.zero(XYZ)) == "0"
    F = cyclotomic_field(3)
    assert format_polynomial((x - y).lift(F).scale(F.zeta())) == "zeta*x - zeta*y"
