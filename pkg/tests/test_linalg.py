"""Exact matrix and polynomial helpers."""

from fractions import Fraction
from random import Random

import pytest

from wittpoint.linalg import (
    GaussianRational,
    Mat,
    QI_I,
    QI_ONE,
    i_power,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_squarefree_part,
    primitive_integer_column,
)


def test_gaussian_arithmetic():
    z = GaussianRational.of(1, 2)
    w = GaussianRational.of(3, -1)
    assert z * w == GaussianRational.of(5, 5)
    assert (z / w) * w == z
    assert z.conjugate().im == -z.im
    assert QI_I * QI_I == -QI_ONE
    assert [i_power(k) for k in range(4)] == [QI_ONE, QI_I, -QI_ONE, -QI_I]


def test_zero_dimensional_matrices():
    empty = Mat.zeros(0, 0)
    assert empty.rank() == 0
    assert empty.det() == 1
    assert (empty * empty).m == 0
    tall = Mat.zeros(3, 0)
    assert tall.hstack(Mat.identity(3)).n == 3
    assert Mat.zeros(0, 3).nullspace().n == 3


def test_solve_and_inverse():
    a = Mat.from_rows([[2, 1], [1, 1]])
    b = Mat.from_rows([[1], [0]])
    x = a.solve(b)
    assert a * x == b
    assert a * a.inv() == Mat.identity(2)
    singular = Mat.from_rows([[1, 2], [2, 4]])
    assert singular.solve(Mat.from_rows([[1], [0]])) is None
    with pytest.raises(ValueError):
        singular.inv()


def test_nullspace_and_column_space():
    a = Mat.from_rows([[1, 2, 3], [2, 4, 6]])
    ns = a.nullspace()
    assert ns.n == 2
    assert (a * ns).is_zero()
    assert a.column_space_basis().n == 1


def test_rref_pivots():
    a = Mat.from_rows([[0, 1], [1, 0]])
    r, pivots = a.rref()
    assert pivots == [0, 1]
    assert r == Mat.identity(2)


def test_charpoly_companion():
    # companion matrix of t^3 - 2t + 5
    a = Mat.from_rows([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
    assert a.charpoly() == [Fraction(5), Fraction(-2), Fraction(0), Fraction(1)]


def test_charpoly_random_cayley_hamilton():
    rng = Random(0)
    for _ in range(10):
        n = rng.randint(1, 4)
        a = Mat.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        p = a.charpoly()
        from wittpoint.linalg import poly_eval_matrix

        assert poly_eval_matrix(p, a).is_zero()


def test_integer_fast_path_matches_generic():
    rng = Random(1)
    a = Mat.from_rows([[rng.randint(-5, 5) for _ in range(3)] for _ in range(4)])
    b = Mat.from_rows([[rng.randint(-5, 5) for _ in range(2)] for _ in range(3)])
    prod = a * b
    expected = Mat.from_rows(
        [[sum(a[i, k] * b[k, j] for k in range(3)) for j in range(2)] for i in range(4)]
    )
    assert prod == expected
    half = b.scale(Fraction(1, 2))
    assert (a * half).scale(2) == prod


def test_primitive_integer_column():
    col = [Fraction(-1, 2), Fraction(1, 2), Fraction(0)]
    assert primitive_integer_column(col) == [Fraction(-1), Fraction(1), Fraction(0)]
    assert primitive_integer_column([Fraction(4), Fraction(6)]) == [Fraction(2), Fraction(3)]


def test_poly_helpers():
    # (t - 1)^2 (t + 2)
    p = [Fraction(2), Fraction(-3), Fraction(0), Fraction(1)]
    q, r = poly_divmod(p, [Fraction(-1), Fraction(1)])
    assert not r
    assert poly_eval(p, Fraction(1)) == 0
    g = poly_gcd(p, [Fraction(-1), Fraction(1)])
    assert g == [Fraction(-1), Fraction(1)]
    sf = poly_squarefree_part(p)
    assert poly_eval(sf, Fraction(1)) == 0 and poly_eval(sf, Fraction(-2)) == 0
    assert len(sf) == 3  # degree 2
