"""Forms: diagonalization, invariants, radical, symplectic and metabolic reduction."""

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from wittpoint.core import hilbert_symbol, relevant_places
from wittpoint.forms import (
    HYPERBOLIC_PLANE,
    RATIONAL,
    BilinearForm,
    BlockMetabolicForm,
    diagonalize,
    hasse_of_entries,
    invariants,
    metabolic_reduce,
    radical_split,
    standard_symplectic_gram,
    symplectic_reduce,
    transvection,
)
from wittpoint.linalg import Mat
from wittpoint.cobordism import random_invertible, random_nondegenerate_form


def symmetric_matrices(n_max=4, bound=4):
    def build(draw):
        n = draw(st.integers(min_value=0, max_value=n_max))
        entries = draw(st.lists(
            st.integers(min_value=-bound, max_value=bound),
            min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
        m = Mat.zeros(n, n)
        it = iter(entries)
        for i in range(n):
            for j in range(i + 1):
                v = Fraction(next(it))
                m.rows[i][j] = v
                m.rows[j][i] = v
        return BilinearForm(RATIONAL, 1, m)

    return st.composite(build)()


def test_diagonalize_spec_examples():
    d = diagonalize(BilinearForm.from_rows([[5]]))
    assert d.entries == (Fraction(5),)
    assert d.congruence == Mat.identity(1)

    d = diagonalize(HYPERBOLIC_PLANE)
    assert d.entries == (Fraction(2), Fraction(-2))
    p = d.congruence
    assert p.T * HYPERBOLIC_PLANE.gram * p == Mat.diag([2, -2])

    d = diagonalize(BilinearForm.from_rows([[1, 2], [2, 1]]))
    assert d.entries == (Fraction(1), Fraction(-3))


def test_diagonalize_rejects_skew():
    skew = BilinearForm.from_rows([[0, 1], [-1, 0]], symmetry=-1)
    with pytest.raises(ValueError, match="requires symmetric"):
        diagonalize(skew)


@given(f=symmetric_matrices())
@settings(max_examples=80)
def test_diagonalize_congruence_exact(f):
    d = diagonalize(f)
    n = f.gram.n
    expected = Mat.diag(list(d.entries) + [Fraction(0)] * d.radical_dim)
    assert d.congruence.T * f.gram * d.congruence == expected
    assert d.rank + d.radical_dim == n
    assert all(e != 0 for e in d.entries)


def test_diagonalize_fp():
    f = BilinearForm.from_rows([[0, 1], [1, 0]], field=5)
    d = diagonalize(f)
    assert len(d.entries) == 2
    p = d.congruence
    prod = p.T * f.gram * p
    assert all(int(prod[i, j]) % 5 == 0 for i in range(2) for j in range(2) if i != j)
    assert [int(prod[i, i]) % 5 for i in range(2)] == [int(e) % 5 for e in d.entries]


def test_invariants_spec_examples():
    inv = invariants(BilinearForm.from_diagonal([1, 1]))
    assert (inv.rank, inv.signature, inv.discriminant.representative) == (2, (2, 0), 1)
    assert all(v == 1 for v in inv.hasse.values())

    inv = invariants(BilinearForm.from_diagonal([-2]))
    assert (inv.rank, inv.signature, inv.discriminant.representative) == (1, (0, 1), -2)
    assert all(v == 1 for v in inv.hasse.values())  # singleton products are empty

    inv = invariants(BilinearForm.from_diagonal([3, 3]))
    assert inv.discriminant.representative == 1
    assert inv.hasse[3] == -1


def test_invariants_requires_nondegenerate():
    with pytest.raises(ValueError, match="radical"):
        invariants(BilinearForm.from_diagonal([1, 0]))


def test_invariants_congruence_invariant():
    rng = Random(11)
    for _ in range(30):
        n = rng.randint(1, 5)
        f = random_nondegenerate_form(rng, n)
        g = f.congruent_by(random_invertible(rng, n, bound=1))
        inv_f, inv_g = invariants(f), invariants(g)
        assert inv_f.rank == inv_g.rank
        assert inv_f.signature == inv_g.signature
        assert inv_f.discriminant == inv_g.discriminant
        places = sorted(set(inv_f.hasse) | set(inv_g.hasse), key=str)
        ef = diagonalize(f).entries
        eg = diagonalize(g).entries
        assert hasse_of_entries(ef, places) == hasse_of_entries(eg, places)


def test_direct_sum_invariant_cocycle():
    rng = Random(5)
    for _ in range(25):
        f = random_nondegenerate_form(rng, rng.randint(1, 3))
        g = random_nondegenerate_form(rng, rng.randint(1, 3))
        s = f.direct_sum(g)
        inv_f, inv_g, inv_s = invariants(f), invariants(g), invariants(s)
        assert inv_s.signature == (inv_f.signature[0] + inv_g.signature[0],
                                   inv_f.signature[1] + inv_g.signature[1])
        assert inv_s.discriminant == inv_f.discriminant * inv_g.discriminant
        df = Fraction(inv_f.discriminant.representative)
        dg = Fraction(inv_g.discriminant.representative)
        ef, eg = diagonalize(f).entries, diagonalize(g).entries
        places = relevant_places(list(ef) + list(eg))
        hf = hasse_of_entries(ef, places)
        hg = hasse_of_entries(eg, places)
        hs = hasse_of_entries(diagonalize(s).entries, places)
        for v in places:
            assert hs[v] == hf[v] * hg[v] * hilbert_symbol(df, dg, v)


def test_radical_split_spec_examples():
    r = radical_split(BilinearForm.from_rows([[0, 0], [0, 0]]))
    assert (r.nondegenerate.gram.n, r.radical_dim) == (0, 2)
    r = radical_split(BilinearForm.from_diagonal([1, 0]))
    assert (r.nondegenerate.gram.rows, r.radical_dim) == ([[Fraction(1)]], 1)
    r = radical_split(BilinearForm.from_rows([[1, 1], [1, 1]]))
    assert (r.nondegenerate.gram.rows, r.radical_dim) == ([[Fraction(1)]], 1)
    # the returned basis exhibits the block decomposition
    f = BilinearForm.from_rows([[1, 1], [1, 1]])
    r = radical_split(f)
    moved = r.basis.T * f.gram * r.basis
    assert moved == Mat.diag([1, 0])


def test_symplectic_reduce_spec_examples():
    assert symplectic_reduce(BilinearForm.from_rows([[0, 1], [-1, 0]], symmetry=-1)).hyperbolic_count == 1
    assert symplectic_reduce(BilinearForm.from_rows([[0, 2], [-2, 0]], symmetry=-1)).hyperbolic_count == 1
    rng = Random(3)
    for _ in range(15):
        f = random_nondegenerate_form(rng, 4, symmetry=-1)
        red = symplectic_reduce(f)
        assert red.hyperbolic_count == 2
        assert red.congruence.T * f.gram * red.congruence == standard_symplectic_gram(2)


def test_symplectic_reduce_errors():
    odd = BilinearForm(RATIONAL, -1, Mat.zeros(3, 3))
    with pytest.raises(ValueError, match="even rank"):
        symplectic_reduce(odd)
    degenerate = BilinearForm(RATIONAL, -1, Mat.zeros(2, 2))
    with pytest.raises(ValueError, match="degenerate"):
        symplectic_reduce(degenerate)
    with pytest.raises(ValueError, match="skew"):
        symplectic_reduce(BilinearForm.from_diagonal([1, 1]))


def test_metabolic_reduce_spec_examples():
    s = BilinearForm.from_diagonal([1])
    block = BlockMetabolicForm(s, Mat.zeros(1, 1), Mat.zeros(1, 1))
    red = metabolic_reduce(block)
    assert red.core.gram == s.gram and red.hyperbolic_count == 1
    assert red.transvections == ()

    block = BlockMetabolicForm(s, Mat.from_rows([[4]]), Mat.from_rows([[2]]))
    red = metabolic_reduce(block)
    assert red.core.gram == s.gram and red.hyperbolic_count == 1
    from wittpoint.witt import witt_class_of

    assert witt_class_of(block.assemble()) == witt_class_of(s.direct_sum(HYPERBOLIC_PLANE))

    rng = Random(9)
    core = BilinearForm.from_diagonal([1, -1])
    a = Mat.from_rows([[rng.randint(-3, 3)]])
    b = Mat(2, 1, [[Fraction(rng.randint(-3, 3))] for _ in range(2)])
    red = metabolic_reduce(BlockMetabolicForm(core, a, b))
    assert red.core.gram == core.gram and red.hyperbolic_count == 1


def test_metabolic_reduce_replay_and_congruence():
    rng = Random(21)
    for _ in range(10):
        m = rng.randint(1, 3)
        k = rng.randint(1, 2)
        core = random_nondegenerate_form(rng, m)
        a = Mat.zeros(k, k)
        for i in range(k):
            for j in range(i + 1):
                v = Fraction(rng.randint(-3, 3))
                a.rows[i][j] = v
                a.rows[j][i] = v
        b = Mat(m, k, [[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(m)])
        block = BlockMetabolicForm(core, a, b)
        red = metabolic_reduce(block)
        replayed = red.replay(block)
        cleared = BlockMetabolicForm(core, Mat.zeros(k, k), Mat.zeros(m, k)).assemble().gram
        assert replayed == cleared
        g = block.assemble().gram
        assert red.congruence.T * g * red.congruence == cleared


def test_metabolic_block_shape_errors():
    s = BilinearForm.from_diagonal([1])
    with pytest.raises(ValueError, match="B must be"):
        BlockMetabolicForm(s, Mat.zeros(1, 1), Mat.zeros(2, 1))
    with pytest.raises(ValueError, match="symmetric"):
        BlockMetabolicForm(s, Mat.from_rows([[0, 1], [0, 0]]), Mat.zeros(1, 2))
    with pytest.raises(ValueError, match="nondegenerate"):
        BlockMetabolicForm(BilinearForm.from_diagonal([0]), Mat.zeros(1, 1), Mat.zeros(1, 1))


def test_transvection_matches_definition():
    e = transvection(3, Fraction(5), 0, 2)
    expected = Mat.identity(3)
    expected.rows[0][2] = Fraction(5)
    assert e == expected


def test_form_symmetry_validation():
    with pytest.raises(ValueError, match="symmetry"):
        BilinearForm.from_rows([[0, 1], [2, 0]])
    with pytest.raises(ValueError, match="odd prime"):
        BilinearForm.from_rows([[1]], field=2)
    with pytest.raises(ValueError, match="odd prime"):
        BilinearForm.from_rows([[1]], field=6)
