import random

import pytest
from hypothesis import given, settings

from cyclodarboux.deriv import (
    CyclotomicPartition,
    apply,
    detect_cyclotomic_partition,
    direct_sum,
    exponent_matrix_and_wd,
    feasible_partitions,
    from_images,
    gen_four_variable_example,
    gen_generalized_cyclotomic,
    gen_jouanolou,
    homogeneity_degree,
    is_valid_partition,
    partition_violations,
)
from cyclodarboux.poly import Polynomial, diff

from conftest import polynomials

J33 = from_images("xyz", [(0, 3, 0), (0, 0, 3), (3, 0, 0)])


def leibniz_oracle(d, p):
    """sum_i d(x_i) * dp/dx_i, independent of the term-by-term rule."""
    out = Polynomial.zero(p.context)
    for i in range(d.n):
        out = out + d.image(i) * diff(p, i)
    return out


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials())
def test_apply_is_a_derivation(a, b):
    d = from_images("xyz", [(2, (0, 1, 1)), (1, 0, 0), (-1, (0, 0, 2))])
    assert apply(d, a) == leibniz_oracle(d, a)
    assert apply(d, a * b) == apply(d, a) * b + a * apply(d, b)
    assert apply(d, a + b) == apply(d, a) + apply(d, b)


def test_jouanolou_images():
    d = gen_jouanolou(3, 2)
    assert str(d) == "d(x1) = x2^2; d(x2) = x3^2; d(x3) = x1^2"
    assert homogeneity_degree(d) == 1
    with pytest.raises(ValueError):
        gen_jouanolou(1, 2)


def test_wd_values():
    assert exponent_matrix_and_wd(gen_jouanolou(3, 2))[1] == 7
    assert exponent_matrix_and_wd(gen_four_variable_example())[1] == 0
    # A = [[-1, 2], [2, -1]]
    assert exponent_matrix_and_wd(gen_jouanolou(2, 2))[1] == -3


def test_wd_warns_on_non_unit_coefficients():
    d = from_images("xy", [(2, (0, 1)), (1, (1, 0))])
    with pytest.warns(UserWarning):
        exponent_matrix_and_wd(d)


def test_four_variable_partition():
    d = gen_four_variable_example()
    assert str(d) == "d(x) = w^2; d(y) = z*w; d(z) = y^2; d(w) = x*y"
    part = detect_cyclotomic_partition(d)
    assert part.k == 2
    assert part.blocks() == [[0, 1], [2, 3]]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_jouanolou_partition(n, s):
    part = detect_cyclotomic_partition(gen_jouanolou(n, s))
    assert part.k == n
    assert part.classes == tuple(range(1, n + 1))


def test_all_feasible_k():
    assert sorted(feasible_partitions(gen_jouanolou(4, 2))) == [2, 4]
    assert sorted(feasible_partitions(gen_jouanolou(6, 1))) == [2, 3, 6]


def test_no_partition_for_self_loop():
    assert detect_cyclotomic_partition(from_images("xy", [(2, 0), (1, 0)])) is None


def test_partition_violations_are_reported():
    d = gen_jouanolou(3, 2)
    bad = CyclotomicPartition(3, (1, 3, 2))
    assert not is_valid_partition(d, bad)
    assert partition_violations(d, CyclotomicPartition(2, (1, 1, 2)))
    assert "class 3 is empty" in partition_violations(d, CyclotomicPartition(3, (1, 2, 1)))


def test_detected_partitions_are_valid_on_random_cyclotomic_derivations():
    rng = random.Random(5)
    for _ in range(60):
        k = rng.randint(2, 4)
        sizes = [rng.randint(1, 2) for _ in range(k)]
        s = rng.randint(1, 3)
        tables = []
        for i in range(k):
            nxt = sizes[(i + 1) % k]
            rows = []
            for _ in range(sizes[i]):
                row = [0] * nxt
                for _ in range(s):
                    row[rng.randrange(nxt)] += 1
                rows.append(row)
            tables.append(rows)
        d = gen_generalized_cyclotomic(sizes, tables)
        parts = feasible_partitions(d)
        assert parts, (sizes, tables)
        assert all(is_valid_partition(d, p) for p in parts.values())


def test_direct_sum_restricts_to_summands():
    d1 = gen_jouanolou(2, 2, names="xy")
    d2 = gen_jouanolou(2, 2, names="uv")
    d = direct_sum(d1, d2)
    assert d.names == ("x", "y", "u", "v")
    with pytest.raises(ValueError):
        direct_sum(d1, d1)
    for p in (Polynomial.variable(d1.context, 0) ** 2 * Polynomial.variable(d1.context, 1),
              Polynomial.variable(d2.context, 1) ** 3 - 2):
        left = p.context == d1.context
        emb = embed(p, d.context, 0 if left else 2)
        assert apply(d, emb) == embed(apply(d1 if left else d2, p), d.context, 0 if left else 2)


def embed(p, ctx, offset):
    """Place p's variables at positions offset.. of ctx."""
    n = ctx.arity
    out = {}
    for e, c in p.terms.items():
        full = [0] * n
        full[offset:offset + len(e)] = e
        out[tuple(full)] = c
    return Polynomial(ctx, out)
