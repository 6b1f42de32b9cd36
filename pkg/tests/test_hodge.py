"""Hodge structures at a point: Weil operator, polarizations, comparison."""

from fractions import Fraction
from random import Random

import pytest

from wittpoint.forms import BilinearForm
from wittpoint.hodge import (
    HodgePiece,
    HodgeStructure,
    compare_polarizations,
    is_polarization,
    pol_class,
    random_polarization_pair,
    standard_structure,
    weil_operator,
)
from wittpoint.linalg import GaussianRational, Mat, QI_ONE, QI_ZERO
from wittpoint.witt import witt_class_of


def elliptic_curve_structure():
    """Weight 1, dimension 2, H^{1,0} spanned by (1, i)."""
    v = [QI_ONE, GaussianRational.of(0, 1)]
    return HodgeStructure(1, 2, [
        HodgePiece(1, 0, Mat.from_columns([v], m=2)),
        HodgePiece(0, 1, Mat.from_columns([[x.conjugate() for x in v]], m=2)),
    ])


def test_weil_operator_weight0_identity():
    h, _ = standard_structure(0, 2)
    assert weil_operator(h) == Mat.identity(2)


def test_weil_operator_elliptic_curve():
    c = weil_operator(elliptic_curve_structure())
    assert c == Mat.from_rows([[0, 1], [-1, 0]])


def test_weil_operator_weight2_blocks():
    h, _ = standard_structure(2, 4)
    c = weil_operator(h)
    assert c == Mat.diag([-1, -1, 1, 1])  # i^(p-q) = -1, -1 on (2,0)+(0,2), +1 on (1,1)


def test_weil_square_is_plus_minus_one():
    for weight, dim in [(0, 3), (1, 4), (2, 5), (3, 4)]:
        h, _ = standard_structure(weight, dim)
        c = weil_operator(h)
        assert c * c == Mat.identity(dim).scale(Fraction((-1) ** weight))


def test_is_polarization_weight0():
    h, s = standard_structure(0, 2)
    assert is_polarization(h, s).ok
    bad = is_polarization(h, BilinearForm.from_diagonal([1, -1]))
    assert not bad.ok
    assert any("positive definite" in p for p in bad.problems)


def test_is_polarization_elliptic_curve_both_signs():
    h = elliptic_curve_structure()
    good = BilinearForm.from_rows([[0, -1], [1, 0]], symmetry=-1)
    bad = BilinearForm.from_rows([[0, 1], [-1, 0]], symmetry=-1)
    chk = is_polarization(h, good)
    assert chk.ok
    assert chk.s_c == Mat.identity(2)
    chk = is_polarization(h, bad)
    assert not chk.ok  # S_C negative definite
    assert chk.s_c == Mat.identity(2).scale(Fraction(-1))


def test_is_polarization_wrong_symmetry():
    h = elliptic_curve_structure()
    sym = BilinearForm.from_diagonal([1, 1])
    chk = is_polarization(h, sym)
    assert not chk.ok
    assert any("skew" in p for p in chk.problems)


def test_is_polarization_first_bilinear_relation():
    # weight 2 structure; a symmetric pairing coupling (2,0) with (1,1)
    h, s = standard_structure(2, 4)
    gram = [list(r) for r in s.gram.rows]
    gram[0][2] = Fraction(1)
    gram[2][0] = Fraction(1)
    chk = is_polarization(h, BilinearForm.from_rows(gram))
    assert not chk.ok
    assert any("orthogonal" in p for p in chk.problems)


def test_sc_symmetry_identity_given_first_relation():
    # (SC)^T = SC holds whenever S is (-1)^w-symmetric and piece-orthogonal
    rng = Random(19)
    for weight, dim in [(0, 4), (1, 4), (2, 4), (3, 4)]:
        h, s, s2 = random_polarization_pair(rng, weight, dim)
        c = weil_operator(h)
        for form in (s, s2):
            sc = form.gram * c
            assert sc == sc.T


def test_compare_polarizations_spec_example():
    h, s = standard_structure(0, 2)
    s_prime = BilinearForm.from_rows([[2, 1], [1, 3]])
    pair = compare_polarizations(h, s, s_prime)
    assert pair.phi == s_prime.gram
    assert pair.char_poly == [Fraction(5), Fraction(-5), Fraction(1)]
    assert pair.sturm.positive_roots == 2 and pair.sturm.all_real_positive
    assert pair.sturm.squarefree
    assert pair.eigenspaces is None  # irreducible over Q
    assert pair.certified


def test_compare_polarizations_scaling():
    h, s = standard_structure(1, 4)
    pair = compare_polarizations(h, s, s.scaled(2))
    assert pair.phi == Mat.identity(4).scale(Fraction(2))
    assert pair.eigenspaces is not None
    assert [e.eigenvalue for e in pair.eigenspaces] == [Fraction(2)]
    assert pair.certified


def test_compare_polarizations_rational_failure_witness():
    h, _ = standard_structure(0, 1)
    s = BilinearForm.from_diagonal([1])
    s3 = BilinearForm.from_diagonal([3])
    pair = compare_polarizations(h, s, s3)
    assert pair.phi == Mat.from_rows([[3]])
    assert pair.signatures_equal and pair.real_witt_classes_equal
    assert witt_class_of(s) != witt_class_of(s3)  # the rational classes differ


def test_compare_polarizations_rejects_non_polarization():
    h, s = standard_structure(0, 2)
    with pytest.raises(ValueError, match="not a polarization"):
        compare_polarizations(h, s, BilinearForm.from_diagonal([1, -1]))


def test_compare_polarizations_split_spectrum_orthogonal_eigenspaces():
    h, s = standard_structure(0, 2)
    s_prime = BilinearForm.from_diagonal([2, 5])
    pair = compare_polarizations(h, s, s_prime)
    assert pair.eigenspaces is not None
    assert [e.eigenvalue for e in pair.eigenspaces] == [Fraction(2), Fraction(5)]
    for e in pair.eigenspaces:
        assert (pair.phi * e.basis) == e.basis.scale(e.eigenvalue)


def test_random_pairs_certified_across_weights():
    rng = Random(29)
    for weight, dim in [(0, 1), (0, 5), (1, 2), (1, 6), (2, 3), (2, 6), (3, 4)]:
        for _ in range(3):
            h, s, s2 = random_polarization_pair(rng, weight, dim)
            pair = compare_polarizations(h, s, s2)
            assert pair.certified, (weight, dim)
            assert pair.signature_s == pair.signature_s_prime


def test_pol_class_spec_examples():
    h, _ = standard_structure(0, 1)
    s = BilinearForm.from_diagonal([1])
    assert pol_class(h, s) == witt_class_of(s)  # eps_0 = +1

    h2, s2 = standard_structure(2, 4)
    assert pol_class(h2, s2) == witt_class_of(s2.scaled(-1))  # eps_2 = -1

    h1, s1 = standard_structure(1, 2)
    assert pol_class(h1, s1).is_zero()  # skew sector


def test_pol_class_rejects_non_polarization():
    h, _ = standard_structure(0, 2)
    with pytest.raises(ValueError, match="not a polarization"):
        pol_class(h, BilinearForm.from_diagonal([1, -1]))


def test_pol_class_signature_invariance_under_second_polarization():
    rng = Random(37)
    for weight, dim in [(0, 3), (2, 4), (2, 5)]:
        h, s, s2 = random_polarization_pair(rng, weight, dim)
        assert pol_class(h, s).signature == pol_class(h, s2).signature


def test_invalid_structure_rejected():
    # conjugate of (1,0) must span (0,1); give an unrelated basis instead
    v = [QI_ONE, GaussianRational.of(0, 1)]
    w = [QI_ONE, QI_ZERO]
    h = HodgeStructure(1, 2, [
        HodgePiece(1, 0, Mat.from_columns([v], m=2)),
        HodgePiece(0, 1, Mat.from_columns([w], m=2)),
    ])
    problems = h.validate()
    assert problems
    with pytest.raises(ValueError, match="invalid Hodge structure"):
        weil_operator(h)
