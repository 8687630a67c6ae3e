import random
from fractions import Fraction

import pytest

from cyclodarboux.darboux import (
    NotAConstant,
    Status,
    UnsupportedDerivation,
    derivation_matrix,
    general_cofactor_search,
    modular_obstruction,
    monomial_cofactor_search,
    rational_constant_to_darboux,
    resultant,
    search_up_to,
    verify_darboux,
)
from cyclodarboux.deriv import apply, from_images, gen_jouanolou
from cyclodarboux.linalg import RationalMatrix
from cyclodarboux.poly import Polynomial, VariableContext, monomial_basis

J22 = gen_jouanolou(2, 2, names="xy")
J21 = gen_jouanolou(2, 1, names="xy")
J32 = gen_jouanolou(3, 2)
x, y = (Polynomial.variable(J22.context, i) for i in range(2))


def pair_set(result):
    return {(f, lam) for lam, basis in result.found.items() for f in basis}


def test_derivation_matrix_small():
    assert derivation_matrix(J22, 1) == RationalMatrix.from_rows([[0, 1], [0, 0], [1, 0]])


def test_derivation_matrix_columns_are_images():
    rng = random.Random(7)
    d = from_images("xyz", [(0, 1, 1), (2, 0, 0), (0, 2, 0)])
    for m in (1, 2, 3):
        M = derivation_matrix(d, m)
        cols = monomial_basis(d.context, m)
        rows = monomial_basis(d.context, m + 1)
        for j in rng.sample(range(len(cols)), min(4, len(cols))):
            img = apply(d, Polynomial.monomial(d.context, cols[j]))
            assert M.column(j) == img.coefficient_vector(rows)


def test_degree_three_images():
    M = derivation_matrix(J22, 3)
    rows = monomial_basis(J22.context, 4)
    images = {
        (3, 0): {(2, 2): 3},
        (2, 1): {(1, 3): 2, (4, 0): 1},
        (1, 2): {(0, 4): 1, (3, 1): 2},
        (0, 3): {(2, 2): 3},
    }
    for j, e in enumerate(monomial_basis(J22.context, 3)):
        assert M.column(j) == Polynomial(J22.context, images[e]).coefficient_vector(rows)


def test_verify_darboux():
    assert verify_darboux(J22, x - y, -x - y)
    assert not verify_darboux(J22, x - y, x + y)
    assert verify_darboux(J21, x + y, Polynomial.constant(J21.context, 1))
    with pytest.raises(ValueError):
        verify_darboux(J22, Polynomial.constant(J22.context, 3), x)


def test_monomial_search_examples():
    assert monomial_cofactor_search(J22, 1) == []
    zero = [p for p in monomial_cofactor_search(J22, 3) if p.cofactor.is_zero()]
    assert [p.f for p in zero] == [x ** 3 - y ** 3]


def test_general_search_jouanolou_22():
    r1 = general_cofactor_search(J22, 1)
    assert r1.status is Status.FOUND
    assert pair_set(r1) == {(x - y, -x - y)}
    r2 = general_cofactor_search(J22, 2)
    assert (x ** 2 + x * y + y ** 2, x + y) in pair_set(r2)
    r3 = general_cofactor_search(J22, 3)
    assert r3.found[Polynomial.zero(J22.context)] == [x ** 3 - y ** 3]


def test_jouanolou_21():
    r = general_cofactor_search(J21, 1)
    one = Polynomial.constant(J21.context, 1)
    assert (x + y, one) in pair_set(r)


@pytest.mark.parametrize("m", [1, 2])
def test_jouanolou_32_none_by_elimination(m):
    r = general_cofactor_search(J32, m, method="elimination")
    assert r.status is Status.NONE and not r.residuals


def test_search_up_to_is_deterministic():
    a = search_up_to(J22, 3).summary()
    b = search_up_to(J22, 3).summary()
    assert a == b
    assert [r.status for r in search_up_to(J22, 3).degrees] == [Status.FOUND] * 3


def test_every_found_pair_verifies():
    for d in (J22, J21, from_images("xyz", [(0, 1, 0), (0, 0, 1), (1, 0, 0)])):
        for pair in search_up_to(d, 2).pairs():
            assert verify_darboux(d, pair.f, pair.cofactor)


def test_branch_cap_gives_undecided_not_none():
    r = general_cofactor_search(J32, 2, branch_cap=1, method="elimination")
    assert r.status is Status.UNDECIDED


def test_monomial_only_mode_never_claims_none():
    report = search_up_to(J32, 1, monomial_cofactors_only=True)
    assert report.status(1) is Status.UNDECIDED


def test_non_homogeneous_rejected():
    d = from_images("xy", [(0, 2), (1, 0)])
    with pytest.raises(UnsupportedDerivation):
        search_up_to(d, 1)


def test_resultant_eliminates():
    ctx = VariableContext(("a", "b"))
    a, b = (Polynomial.variable(ctx, i) for i in range(2))
    # common root a = b = 1 survives elimination of a
    r = resultant(a * b - 1, a - b, 0)
    assert r == b ** 2 - 1 or r == -(b ** 2 - 1)


def test_modular_obstruction_is_sound_on_a_found_case():
    # a case with Darboux polynomials can never be closed modulo any prime
    for p in (2, 3, 5, 7):
        assert not modular_obstruction(J22, 1, p)


def test_rational_constant_to_darboux():
    d = from_images("xy", [(1, 0), (0, 1)])
    X, Y = (Polynomial.variable(d.context, i) for i in range(2))
    one = Polynomial.constant(d.context, 1)
    pp, pq = rational_constant_to_darboux(d, X, Y)
    assert (pp.f, pp.cofactor, pq.f, pq.cofactor) == (X, one, Y, one)
    pp, pq = rational_constant_to_darboux(J22, x ** 3 - y ** 3, Polynomial.constant(J22.context, 1))
    assert pp.cofactor.is_zero() and pq is None
    with pytest.raises(NotAConstant):
        rational_constant_to_darboux(J22, x, y)
    with pytest.raises(ValueError):
        rational_constant_to_darboux(J22, Polynomial.constant(J22.context, 2),
                                     Polynomial.constant(J22.context, Fraction(1, 3)))
