import random
from fractions import Fraction

import pytest
import sympy

from cyclodarboux.linalg import (
    DimensionError,
    RationalMatrix,
    canonical_span,
    char_poly,
    determinant,
    nullspace,
    rank,
    rank_mod_p,
    rational_roots,
    rref,
)


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    if not rows:
        return Fraction(1)
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def random_matrix(rng, rows, cols, low_rank=False):
    if low_rank and rows > 1:
        r = rng.randint(1, min(rows, cols) - 1) if min(rows, cols) > 1 else 1
        B = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(r)] for _ in range(rows)]
        C = [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(r)]
        return [[sum(B[i][t] * C[t][j] for t in range(r)) for j in range(cols)] for i in range(rows)]
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]


def test_determinant_against_cofactor_expansion():
    rng = random.Random(1)
    for _ in range(150):
        n = rng.randint(1, 5)
        rows = random_matrix(rng, n, n, low_rank=rng.random() < 0.3)
        assert determinant(RationalMatrix.from_rows(rows)) == cofactor_det(rows)


def test_exponent_matrix_determinants():
    # A for Jouanolou(3,2) and for the four-variable example
    assert determinant(RationalMatrix.from_rows([[-1, 2, 0], [0, -1, 2], [2, 0, -1]])) == 7
    four = [[-1, 0, 0, 2], [0, -1, 1, 1], [0, 2, -1, 0], [1, 1, 0, -1]]
    assert determinant(RationalMatrix.from_rows(four)) == 0
    assert cofactor_det([[Fraction(x) for x in r] for r in four]) == 0


def test_rank_rref_nullspace_against_sympy():
    rng = random.Random(2)
    for _ in range(120):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        rows = random_matrix(rng, r, c, low_rank=rng.random() < 0.5)
        M = RationalMatrix.from_rows(rows)
        S = sympy.Matrix(rows)
        assert rank(M) == S.rank()
        red, piv = rref(M)
        sred, spiv = S.rref()
        assert tuple(piv) == spiv
        assert [list(map(sympy.Rational, row)) for row in red] == sred.tolist()[:len(piv)]
        ns = nullspace(M)
        assert len(ns) == c - S.rank()
        for v in ns:
            assert all(x == 0 for x in M.apply(v))


def test_canonical_span_is_basis_independent():
    v1 = [Fraction(1), Fraction(2), Fraction(0)]
    v2 = [Fraction(0), Fraction(1), Fraction(1)]
    mix = [[a + 3 * b for a, b in zip(v1, v2)], [2 * a - b for a, b in zip(v1, v2)]]
    assert canonical_span([v1, v2]) == canonical_span(mix)


def test_char_poly_against_sympy():
    rng = random.Random(3)
    t = sympy.Symbol("t")
    for _ in range(60):
        n = rng.randint(1, 5)
        rows = random_matrix(rng, n, n)
        expected = sympy.Matrix(rows).charpoly(t).all_coeffs()[::-1]
        assert char_poly(RationalMatrix.from_rows(rows)) == [Fraction(str(c)) for c in expected]


def test_char_poly_small_examples():
    # E = [[0,1],[0,0]] has char poly t^2
    assert char_poly(RationalMatrix.from_rows([[0, 1], [0, 0]])) == [0, 0, 1]
    assert char_poly(RationalMatrix.from_rows([[2, 0], [0, 3]])) == [6, -5, 1]


def test_rational_roots():
    # (2t - 1)(t + 3)^2 t = 2t^4 + 11t^3 + 12t^2 - 9t
    assert rational_roots([0, -9, 12, 11, 2]) == [-3, -3, 0, Fraction(1, 2)]
    assert rational_roots([1, 0, 1]) == []  # t^2 + 1
    assert rational_roots([Fraction(1, 3), 1]) == [Fraction(-1, 3)]
    assert rational_roots([5]) == []
    with pytest.raises(ValueError):
        rational_roots([0, 0])


def test_rational_roots_against_sympy_roots():
    rng = random.Random(4)
    t = sympy.Symbol("t")
    for _ in range(50):
        roots = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        p = sympy.Poly(sympy.prod([t - sympy.Rational(r.numerator, r.denominator) for r in roots])
                       * (t ** 2 + rng.randint(1, 3)), t)
        coeffs = [Fraction(str(c)) for c in p.all_coeffs()[::-1]]
        assert rational_roots(coeffs) == sorted(roots)


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, -1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, -1]], 3) == 2


def test_shape_errors():
    with pytest.raises(DimensionError):
        determinant(RationalMatrix.from_rows([[1, 2, 3]]))
    with pytest.raises(DimensionError):
        RationalMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        RationalMatrix.identity(2) @ RationalMatrix.zeros(3, 1)
