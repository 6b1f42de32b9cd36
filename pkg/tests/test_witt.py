"""Witt classes: canonical forms, residue maps, group law, equality oracles."""

from fractions import Fraction
from itertools import product
from random import Random

import pytest
from hypothesis import given, strategies as st

from wittpoint.cobordism import random_invertible, random_nondegenerate_form
from wittpoint.forms import HYPERBOLIC_PLANE, BilinearForm, diagonalize
from wittpoint.witt import (
    WittClassFp,
    WittClassQ,
    classes_equal_hasse_route,
    classes_equal_residue_route,
    equivalent,
    fp_class_of,
    fp_group_table,
    group_law,
    psi,
    witt_class_of,
)


def fp_isometric_by_search(entries_a, entries_b, p):
    """Exhaustive congruence search over GL_2(F_p); independent oracle."""
    ga = [[entries_a[0], 0], [0, entries_a[1]]]
    gb = [[entries_b[0], 0], [0, entries_b[1]]]
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p == 0:
            continue
        # P^T G_a P with P = [[a, b], [c, d]]
        m00 = (a * a * ga[0][0] + c * c * ga[1][1]) % p
        m01 = (a * b * ga[0][0] + c * d * ga[1][1]) % p
        m11 = (b * b * ga[0][0] + d * d * ga[1][1]) % p
        if (m00, m01, m11) == (gb[0][0] % p, 0, gb[1][1] % p):
            return True
    return False


def test_fp_class_spec_examples():
    one3 = fp_class_of([1], 3)
    assert one3.payload == 1 and one3.order() == 4

    two5 = fp_class_of([1, 1], 5)
    assert two5.payload == (0, True) and two5.is_zero()
    # cross-check: <1,1> is congruent to the hyperbolic <1,-1> over F_5
    assert fp_isometric_by_search([1, 1], [1, -1], 5)

    two3 = fp_class_of([1, 1], 3)
    assert two3.payload == 2 and not two3.is_zero() and two3.order() == 2
    # and over F_3 no congruence takes <1,1> to <1,-1>
    assert not fp_isometric_by_search([1, 1], [1, -1], 3)


def test_fp_class_errors():
    with pytest.raises(ValueError, match="rank parity"):
        fp_class_of([1], 2)
    with pytest.raises(ValueError, match="nonzero"):
        fp_class_of([3], 3)


def test_fp_group_tables_all_primes_below_100():
    for p in range(2, 100):
        try:
            table = fp_group_table(p)
        except ValueError:
            continue  # not prime
        if p == 2:
            assert (table["cardinality"], table["exponent"], table["order_of_one"]) == (2, 2, 2)
        elif p % 4 == 3:
            assert (table["cardinality"], table["exponent"], table["order_of_one"]) == (4, 4, 4)
        else:
            assert (table["cardinality"], table["exponent"], table["order_of_one"]) == (4, 2, 2)


def test_psi_spec_examples():
    assert not psi([Fraction(-2)], 2, 1).is_zero()
    c = psi([Fraction(-2)], 3, 0)
    assert c == fp_class_of([1], 3)
    assert psi([Fraction(3)], 3, 0).is_zero()
    assert psi([Fraction(5)], 5, 0).is_zero()


def test_psi_additive_and_rediagonalization_invariant():
    rng = Random(2)
    for _ in range(25):
        f = random_nondegenerate_form(rng, rng.randint(1, 3))
        g = random_nondegenerate_form(rng, rng.randint(1, 3))
        for p in (2, 3, 5):
            for k in (0, 1):
                left = psi(f.direct_sum(g), p, k)
                right = psi(f, p, k) + psi(g, p, k)
                assert left == right
        # invariance under re-diagonalization
        moved = f.congruent_by(random_invertible(rng, f.gram.n, bound=1))
        for p in (2, 3, 5, 7):
            for k in (0, 1):
                assert psi(f, p, k) == psi(moved, p, k)


def test_witt_class_spec_examples():
    assert witt_class_of(HYPERBOLIC_PLANE).is_zero()
    cls = witt_class_of(BilinearForm.from_diagonal([-2]))
    assert cls.signature == -1
    assert not cls.residue_at(2).is_zero()
    cls = witt_class_of(BilinearForm.from_diagonal([1, 1]))
    assert cls == WittClassQ(2, ())


def test_witt_class_degenerate_and_skew():
    degenerate = BilinearForm.from_diagonal([1, 0, -2])
    assert witt_class_of(degenerate) == witt_class_of(BilinearForm.from_diagonal([1, -2]))
    skew = BilinearForm.from_rows([[0, 3], [-3, 0]], symmetry=-1)
    assert witt_class_of(skew).is_zero()


@given(a=st.integers(min_value=-20, max_value=20).filter(lambda x: x != 0))
def test_group_law_inverse(a):
    x = witt_class_of(BilinearForm.from_diagonal([a]))
    y = witt_class_of(BilinearForm.from_diagonal([-a]))
    assert (x + y).is_zero()
    assert -(-x) == x


def test_group_law_dispatch():
    x = witt_class_of(BilinearForm.from_diagonal([-2]))
    y = witt_class_of(BilinearForm.from_diagonal([1]))
    total = group_law(x, y, "add")
    assert not group_law(total, total, "is_zero")
    assert group_law(x, x, "eq")
    assert group_law(x, y, "neg") == -x
    with pytest.raises(ValueError):
        group_law(x, y, "frobnicate")


def test_double_point_sum_is_nonzero_both_ways():
    total = witt_class_of(BilinearForm.from_diagonal([-2, 1]))
    assert not total.is_zero()
    assert not total.residue_at(2).is_zero()
    route3 = psi([Fraction(-2), Fraction(1)], 3, 0)
    assert route3.payload == 2 and route3.order() == 2


def test_witt_class_square_scaling_and_stabilization():
    rng = Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        f = random_nondegenerate_form(rng, n)
        entries = diagonalize(f).entries
        c = Fraction(rng.choice([1, 4, 9, Fraction(1, 4), Fraction(9, 16)]))
        scaled = BilinearForm.from_diagonal([c * e for e in entries])
        assert witt_class_of(scaled) == witt_class_of(BilinearForm.from_diagonal(entries))
        assert witt_class_of(f.direct_sum(HYPERBOLIC_PLANE)) == witt_class_of(f)
        moved = f.congruent_by(random_invertible(rng, n, bound=1))
        assert witt_class_of(moved) == witt_class_of(f)


def test_two_oracle_agreement_random_rank_up_to_6():
    rng = Random(13)
    agree = 0
    for _ in range(60):
        f = random_nondegenerate_form(rng, rng.randint(1, 6), bound=4)
        if rng.random() < 0.5:
            g = f.direct_sum(HYPERBOLIC_PLANE).congruent_by(
                random_invertible(rng, f.gram.n + 2, bound=1))
        else:
            g = random_nondegenerate_form(rng, rng.randint(1, 6), bound=4)
        r = classes_equal_residue_route(f, g)
        h = classes_equal_hasse_route(f, g)
        assert r == h
        assert equivalent(f, g) == r
        agree += 1
    assert agree == 60


def test_equivalent_spec_example():
    assert equivalent(HYPERBOLIC_PLANE, BilinearForm.from_diagonal([1, -1]))
    assert not equivalent(HYPERBOLIC_PLANE, BilinearForm.from_diagonal([-2]))


def test_canonical_form_stores_sorted_nonzero_residues():
    cls = witt_class_of(BilinearForm.from_diagonal([30, 2, 3]))
    primes = [p for p, _ in cls.residues]
    assert primes == sorted(primes)
    assert all(not c.is_zero() for _, c in cls.residues)
    with pytest.raises(ValueError, match="nonzero"):
        WittClassQ(0, ((3, WittClassFp.zero(3)),))
    with pytest.raises(ValueError, match="sorted"):
        WittClassQ(0, ((5, fp_class_of([1], 5)), (3, fp_class_of([1], 3))))


def test_fp_payload_validation():
    with pytest.raises(ValueError):
        WittClassFp(4, 1)  # not prime
    with pytest.raises(ValueError):
        WittClassFp(5, (2, True))  # bad parity
