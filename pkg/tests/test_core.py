"""Scalar substrate: square classes, p-adic splitting, Hilbert symbols, Sturm.

The Hilbert symbol is checked against an independent solubility oracle:
exhaustive primitive search for z^2 = a x^2 + b y^2 modulo p^N, with a
Newton/Hensel lifting certificate on the found solution.  The oracle never
looks at the valuation formulas it is checking.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittpoint.core import (
    REAL_PLACE,
    FactorBoundExceeded,
    SquareClass,
    factor,
    hilbert_symbol,
    is_prime,
    p_adic_split,
    relevant_places,
    square_class,
    sturm_positive_real_roots,
)

nonzero_rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=30
).filter(lambda x: x != 0)

small_nonzero_ints = st.integers(min_value=-30, max_value=30).filter(lambda x: x != 0)


# -- independent solubility oracle ---------------------------------------


def _vp(n: int, p: int):
    if n == 0:
        return None  # infinity
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hilbert_oracle(a: int, b: int, p: int, exponent: int) -> int:
    """Decide (a, b)_p by brute force modulo p^exponent.

    Returns +1 when a primitive solution with a Hensel-liftable coordinate
    exists, -1 when there is no primitive solution at all (any Z_p solution
    would reduce to one), and raises if the search is inconclusive.
    """
    mod = p**exponent
    squares: dict[int, list[int]] = {}
    for z in range(mod):
        squares.setdefault(z * z % mod, []).append(z)
    liftable = False
    found_any = False
    for x in range(mod):
        for y in range(mod):
            target = (a * x * x + b * y * y) % mod
            for z in squares.get(target, ()):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                found_any = True
                if a * x * x + b * y * y == z * z:
                    return 1  # exact integer solution, no lifting needed
                grads = [2 * a * x, 2 * b * y, -2 * z]
                ts = [_vp(g, p) for g in grads if _vp(g, p) is not None]
                if ts and 2 * min(ts) < exponent:
                    liftable = True
    if liftable:
        return 1
    if not found_any:
        return -1
    raise RuntimeError(f"oracle inconclusive for ({a}, {b}) at {p}; raise the exponent")


@pytest.mark.parametrize("a,b,p,n", [(2, 2, 2, 6), (3, 3, 3, 3), (1, 7, 2, 6)])
def test_hilbert_symbol_matches_oracle_on_named_cases(a, b, p, n):
    assert hilbert_symbol(a, b, p) == hilbert_oracle(a, b, p, n)


def test_hilbert_spec_values():
    assert hilbert_symbol(1, 5, 7) == 1
    assert hilbert_symbol(2, 2, 2) == 1
    assert hilbert_symbol(3, 3, 3) == -1
    assert hilbert_symbol(-1, -1, REAL_PLACE) == -1
    assert hilbert_symbol(-1, 2, REAL_PLACE) == 1


def test_hilbert_dyadic_formula_against_oracle_grid():
    values = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6]
    for a in values:
        for b in values:
            assert hilbert_symbol(a, b, 2) == hilbert_oracle(a, b, 2, 6), (a, b)


def test_hilbert_odd_formula_against_oracle_grid():
    values = [1, -1, 2, -2, 3, -3, 5, 15]
    for a in values:
        for b in values:
            assert hilbert_symbol(a, b, 3) == hilbert_oracle(a, b, 3, 4), (a, b)
            assert hilbert_symbol(a, b, 5) == hilbert_oracle(a, b, 5, 3), (a, b)


# -- square classes -------------------------------------------------------


def test_square_class_spec_values():
    assert square_class(Fraction(1, 2)).representative == 2
    assert square_class(-2).representative == -2
    assert square_class(18).representative == 2


def test_square_class_rejects_zero():
    with pytest.raises(ValueError, match="zero has no square class"):
        square_class(0)


@given(a=nonzero_rationals, c=nonzero_rationals)
def test_square_class_mod_squares(a, c):
    assert square_class(a * c * c) == square_class(a)


@given(a=nonzero_rationals, b=nonzero_rationals)
def test_square_class_multiplicative(a, b):
    assert square_class(a) * square_class(b) == square_class(a * b)


def test_square_class_type_invariant():
    with pytest.raises(ValueError):
        SquareClass(12)  # not squarefree
    with pytest.raises(ValueError):
        SquareClass(0)


# -- p-adic splitting ------------------------------------------------------


def test_p_adic_split_spec_values():
    d = p_adic_split(-2, 2)
    assert (d.prime, d.valuation, d.unit, d.unit_residue) == (2, 1, Fraction(-1), 1)
    d = p_adic_split(-2, 3)
    assert (d.valuation, d.unit_residue) == (0, 1)
    d = p_adic_split(Fraction(9, 4), 3)
    assert (d.valuation, d.unit_residue) == (2, 1)  # 1/4 = 1 mod 3


def test_p_adic_split_rejects_bad_input():
    with pytest.raises(ValueError):
        p_adic_split(0, 3)
    with pytest.raises(ValueError, match="not prime"):
        p_adic_split(5, 6)


@given(a=nonzero_rationals, p=st.sampled_from([2, 3, 5, 7, 11]))
def test_p_adic_split_reassembles(a, p):
    d = p_adic_split(a, p)
    assert d.reconstruct() == a
    assert d.unit.numerator % p != 0 and d.unit.denominator % p != 0
    assert 1 <= d.unit_residue < p
    # same square class at p: valuation parity and unit residue class agree
    again = p_adic_split(a * p * p, p)
    assert again.valuation == d.valuation + 2
    assert again.unit_residue == d.unit_residue


# -- hilbert symbol properties ---------------------------------------------


@given(a=nonzero_rationals, b=nonzero_rationals)
@settings(max_examples=60)
def test_hilbert_symmetric_and_self_negative(a, b):
    for place in relevant_places([a, b]):
        assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
        assert hilbert_symbol(a, -a, place) == 1


@given(a=small_nonzero_ints, b=small_nonzero_ints, c=small_nonzero_ints)
@settings(max_examples=60)
def test_hilbert_bimultiplicative(a, b, c):
    for place in relevant_places([a, b, c]):
        assert hilbert_symbol(a * b, c, place) == hilbert_symbol(a, c, place) * hilbert_symbol(b, c, place)


@given(a=nonzero_rationals, b=nonzero_rationals)
@settings(max_examples=80)
def test_hilbert_product_formula(a, b):
    product = 1
    for place in relevant_places([a, b]):
        product *= hilbert_symbol(a, b, place)
    assert product == 1


def test_hilbert_trivial_first_argument():
    for place in [2, 3, 7, REAL_PLACE]:
        assert hilbert_symbol(1, Fraction(-7, 3), place) == 1


# -- factoring / primality ---------------------------------------------------


def test_factor_bound_error():
    n = 999979 * 999983  # both prime, below the default bound
    with pytest.raises(FactorBoundExceeded, match="trial division bound"):
        factor(n, bound=1000)
    assert factor(n) == {999979: 1, 999983: 1}


def test_set_trial_division_bound_validation():
    from wittpoint.core import set_trial_division_bound

    with pytest.raises(ValueError, match="at least 2"):
        set_trial_division_bound(1)


def test_is_prime_small():
    primes = {p for p in range(2, 200) if is_prime(p)}
    sieve = set()
    for n in range(2, 200):
        if all(n % d for d in range(2, n)):
            sieve.add(n)
    assert primes == sieve


# -- sturm ------------------------------------------------------------------


def test_sturm_spec_values():
    cert = sturm_positive_real_roots([-3, 1])  # t - 3
    assert (cert.positive_roots, cert.all_real, cert.squarefree) == (1, True, True)
    cert = sturm_positive_real_roots([5, -5, 1])  # t^2 - 5t + 5
    assert (cert.positive_roots, cert.all_real, cert.squarefree) == (2, True, True)
    cert = sturm_positive_real_roots([1, 0, 1])  # t^2 + 1
    assert (cert.positive_roots, cert.all_real, cert.squarefree) == (0, False, True)


def test_sturm_zero_polynomial():
    with pytest.raises(ValueError):
        sturm_positive_real_roots([0, 0])


def test_sturm_root_at_zero_excluded():
    cert = sturm_positive_real_roots([0, -1, 1])  # t(t - 1)
    assert cert.positive_roots == 1
    assert cert.real_roots == 2


def test_sturm_with_multiplicities():
    # (t - 2)^2 (t + 1): distinct roots 2, positive 1, not squarefree
    cert = sturm_positive_real_roots([4, 0, -3, 1])
    assert cert.positive_roots == 1
    assert cert.real_roots == 2
    assert cert.all_real is True
    assert cert.squarefree is False


@given(roots=st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5))
@settings(max_examples=60)
def test_sturm_counts_constructed_roots(roots):
    poly = [Fraction(1)]
    for r in roots:
        poly = [Fraction(0)] + poly
        for k in range(len(poly) - 1):
            poly[k] -= r * poly[k + 1]
    cert = sturm_positive_real_roots(poly)
    distinct = set(roots)
    assert cert.positive_roots == sum(1 for r in distinct if r > 0)
    assert cert.real_roots == len(distinct)
    assert cert.all_real is True
    assert cert.squarefree == (len(distinct) == len(roots))
