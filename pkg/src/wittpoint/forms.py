"""Epsilon-symmetric bilinear forms over Q and over F_p (p odd).

Diagonalization, the classical invariant system (rank, signature,
discriminant, Hasse symbols), radical splitting, symplectic reduction of
skew forms, and the block-metabolic reduction that splits hyperbolic planes
off a form written against a half-rank isotropic subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    REAL_PLACE,
    SquareClass,
    hilbert_symbol,
    is_prime,
    square_class,
)
from .linalg import Mat, extend_to_complement, primitive_integer_column

RATIONAL = "Q"

SYMMETRIC = 1
SKEW = -1


@dataclass(frozen=True)
class BilinearForm:
    """An epsilon-symmetric bilinear form given by its Gram matrix.

    ``field`` is ``"Q"`` or an odd prime p; F_2 forms are deliberately not
    materialized (their Witt classes live in the witt module as rank
    parities, and bilinear-form theory in characteristic 2 is not needed).
    """

    field: object  # RATIONAL or an odd prime int
    symmetry: int  # +1 symmetric, -1 skew
    gram: Mat

    def __post_init__(self):
        if self.symmetry not in (SYMMETRIC, SKEW):
            raise ValueError("symmetry must be +1 or -1")
        if self.field != RATIONAL:
            p = self.field
            if not isinstance(p, int) or not is_prime(p) or p == 2:
                raise ValueError("prime field forms require an odd prime")
        g = self.gram
        if g.m != g.n:
            raise ValueError("Gram matrix must be square")
        if self.field == RATIONAL:
            if g.T != (g if self.symmetry == SYMMETRIC else -g):
                raise ValueError("Gram matrix does not match the declared symmetry")
        else:
            p = self.field
            for i in range(g.m):
                for j in range(g.n):
                    lhs = int(g[j, i]) % p
                    rhs = self.symmetry * int(g[i, j]) % p
                    if lhs != rhs:
                        raise ValueError("Gram matrix does not match the declared symmetry mod p")

    @property
    def rank_of_space(self) -> int:
        return self.gram.n

    @property
    def is_symmetric(self) -> bool:
        return self.symmetry == SYMMETRIC

    @staticmethod
    def from_diagonal(entries, field=RATIONAL) -> "BilinearForm":
        return BilinearForm(field, SYMMETRIC, Mat.diag([Fraction(e) if field == RATIONAL else e for e in entries]))

    @staticmethod
    def from_rows(rows, symmetry=SYMMETRIC, field=RATIONAL) -> "BilinearForm":
        return BilinearForm(field, symmetry, Mat.from_rows(rows))

    def direct_sum(self, other: "BilinearForm") -> "BilinearForm":
        if self.field != other.field or self.symmetry != other.symmetry:
            raise ValueError("direct sum needs matching field and symmetry")
        n, m = self.gram.n, other.gram.n
        top = self.gram.hstack(Mat.zeros(n, m))
        bot = Mat.zeros(m, n).hstack(other.gram)
        return BilinearForm(self.field, self.symmetry, top.vstack(bot))

    def congruent_by(self, p: Mat) -> "BilinearForm":
        """The form with Gram matrix P^T G P (same class, new basis)."""
        g = p.T * self.gram * p
        if self.field != RATIONAL:
            g = g.map(lambda x: Fraction(int(x) % self.field))
        return BilinearForm(self.field, self.symmetry, g)

    def scaled(self, c) -> "BilinearForm":
        return BilinearForm(self.field, self.symmetry, self.gram.scale(Fraction(c)))

    def restrict(self, basis: Mat) -> "BilinearForm":
        return BilinearForm(self.field, self.symmetry, basis.T * self.gram * basis)

    def is_nondegenerate(self) -> bool:
        return bool(self.gram.det()) if self.field == RATIONAL else (self._fp_det() % self.field != 0)

    def _fp_det(self) -> int:
        p = self.field
        a = [[int(x) % p for x in r] for r in self.gram.rows]
        n = self.gram.n
        d = 1
        for c in range(n):
            pivot = next((i for i in range(c, n) if a[i][c] % p), None)
            if pivot is None:
                return 0
            if pivot != c:
                a[c], a[pivot] = a[pivot], a[c]
                d = -d
            d = d * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] * inv % p
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
        return d % p


HYPERBOLIC_PLANE = BilinearForm.from_rows([[0, 1], [1, 0]])


@dataclass(frozen=True)
class Diagonalization:
    """Congruence P with P^T G P = diag(entries, 0...0), radical trailing."""

    entries: tuple
    radical_dim: int
    congruence: Mat

    @property
    def rank(self) -> int:
        return len(self.entries)

    def signature(self) -> tuple[int, int]:
        pos = sum(1 for e in self.entries if e > 0)
        neg = sum(1 for e in self.entries if e < 0)
        return pos, neg


def diagonalize(f: BilinearForm) -> Diagonalization:
    """Symmetric Gaussian congruence diagonalization.

    Pivot policy (fixed for golden-test determinism): prefer the first
    nonzero diagonal entry; on an all-zero diagonal add basis vector j to
    basis vector i for the lexicographically first (i, j) with G[i][j] != 0.
    Over Q each cleared basis column is rescaled to a primitive integer
    vector, which keeps reported entries integral for integral input.
    """
    if not f.is_symmetric:
        raise ValueError("diagonalization requires symmetric form")
    if f.field == RATIONAL:
        return _diagonalize_q(f)
    return _diagonalize_fp(f)


def _diagonalize_q(f: BilinearForm) -> Diagonalization:
    n = f.gram.n
    m = [list(r) for r in f.gram.rows]
    basis = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    # basis[k] is column k of the congruence; m is kept in sync as B^T G B
    # by mirrored row/column operations.
    def add_multiple(i, j, c):
        basis[i] = [a + c * b for a, b in zip(basis[i], basis[j])]
        for t in range(n):
            m[i][t] = m[i][t] + c * m[j][t]
        for t in range(n):
            m[t][i] = m[t][i] + c * m[t][j]

    def swap(i, j):
        basis[i], basis[j] = basis[j], basis[i]
        m[i], m[j] = m[j], m[i]
        for t in range(n):
            m[t][i], m[t][j] = m[t][j], m[t][i]

    def rescale(i, c):
        basis[i] = [c * a for a in basis[i]]
        for t in range(n):
            m[i][t] = c * m[i][t]
        for t in range(n):
            m[t][i] = c * m[t][i]

    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if m[i][i] != 0), None)
        if pivot is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(k, n) if j != i and m[i][j] != 0),
                None,
            )
            if off is None:
                break  # trailing block is zero: the radical
            i, j = off
            add_multiple(i, j, Fraction(1))
            pivot = i
        if pivot != k:
            swap(k, pivot)
        d = m[k][k]
        for i in range(k + 1, n):
            if m[k][i] != 0:
                add_multiple(i, k, -m[k][i] / d)
        for i in range(k + 1, n):
            prim = primitive_integer_column(basis[i])
            scale = next((a / b for a, b in zip(prim, basis[i]) if b != 0), Fraction(1))
            if scale != 1:
                rescale(i, scale)
        k += 1
    rank = k
    entries = tuple(m[i][i] for i in range(rank))
    congruence = Mat.from_columns(basis, m=n) if n else Mat.zeros(0, 0)
    assert congruence.T * f.gram * congruence == Mat.diag(list(entries) + [Fraction(0)] * (n - rank))
    return Diagonalization(entries=entries, radical_dim=n - rank, congruence=congruence)


def _diagonalize_fp(f: BilinearForm) -> Diagonalization:
    p = f.field
    n = f.gram.n
    m = [[int(x) % p for x in r] for r in f.gram.rows]
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def add_multiple(i, j, c):
        basis[i] = [(a + c * b) % p for a, b in zip(basis[i], basis[j])]
        for t in range(n):
            m[i][t] = (m[i][t] + c * m[j][t]) % p
        for t in range(n):
            m[t][i] = (m[t][i] + c * m[t][j]) % p

    def swap(i, j):
        basis[i], basis[j] = basis[j], basis[i]
        m[i], m[j] = m[j], m[i]
        for t in range(n):
            m[t][i], m[t][j] = m[t][j], m[t][i]

    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if m[i][i] % p), None)
        if pivot is None:
            off = next(((i, j) for i in range(k, n) for j in range(k, n) if j != i and m[i][j] % p), None)
            if off is None:
                break
            i, j = off
            add_multiple(i, j, 1)
            pivot = i
        if pivot != k:
            swap(k, pivot)
        d = m[k][k]
        dinv = pow(d, -1, p)
        for i in range(k + 1, n):
            if m[k][i] % p:
                add_multiple(i, k, -(m[k][i] * dinv) % p)
        k += 1
    rank = k
    entries = tuple(m[i][i] % p for i in range(rank))
    congruence = (
        Mat.from_columns([[Fraction(x) for x in col] for col in basis], m=n) if n else Mat.zeros(0, 0)
    )
    return Diagonalization(entries=entries, radical_dim=n - rank, congruence=congruence)


@dataclass(frozen=True)
class FormInvariants:
    """Complete rational-equivalence invariants of a nondegenerate form."""

    rank: int
    signature: tuple[int, int]
    discriminant: SquareClass
    hasse: dict

    @property
    def signature_int(self) -> int:
        return self.signature[0] - self.signature[1]


def hasse_of_entries(entries, places=None) -> dict:
    """prod_{i<j} (a_i, a_j)_v over the relevant finite place set."""
    entries = [Fraction(e) for e in entries]
    if places is None:
        from .core import relevant_places

        places = relevant_places(entries) if entries else [2, REAL_PLACE]
    out = {}
    for v in places:
        s = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                s *= hilbert_symbol(entries[i], entries[j], v)
        out[v] = s
    return out


def invariants(f: BilinearForm) -> FormInvariants:
    """Rank, signature, discriminant, and Hasse symbols of a nondegenerate
    symmetric form over Q."""
    if f.field != RATIONAL:
        raise ValueError("invariants are computed over Q")
    if not f.is_symmetric:
        raise ValueError("invariants require a symmetric form")
    diag = diagonalize(f)
    if diag.radical_dim:
        raise ValueError("split off radical first")
    entries = diag.entries
    disc = square_class(1)
    for e in entries:
        disc = disc * square_class(e)
    return FormInvariants(
        rank=len(entries),
        signature=diag.signature(),
        discriminant=disc,
        hasse=hasse_of_entries(entries),
    )


@dataclass(frozen=True)
class RadicalSplit:
    nondegenerate: BilinearForm
    radical_dim: int
    basis: Mat  # columns: complement basis then radical basis


def radical_split(f: BilinearForm) -> RadicalSplit:
    """Split V = W + rad(f) and return f restricted to W (nondegenerate)."""
    if f.field != RATIONAL:
        raise ValueError("radical_split operates over Q")
    g = f.gram
    n = g.n
    kernel = g.nullspace()
    picked = extend_to_complement(kernel, Mat.identity(n))
    complement = Mat.from_columns([Mat.identity(n).col(j) for j in picked], m=n)
    basis = complement.hstack(kernel)
    nondeg = f.restrict(complement)
    assert nondeg.is_nondegenerate() or complement.n == 0
    return RadicalSplit(nondegenerate=nondeg, radical_dim=kernel.n, basis=basis)


@dataclass(frozen=True)
class SymplecticReduction:
    hyperbolic_count: int
    congruence: Mat  # P with P^T G P the standard symplectic Gram


def standard_symplectic_gram(k: int) -> Mat:
    blocks = Mat.zeros(2 * k, 2 * k)
    for t in range(k):
        blocks.rows[2 * t][2 * t + 1] = Fraction(1)
        blocks.rows[2 * t + 1][2 * t] = Fraction(-1)
    return blocks


def symplectic_reduce(f: BilinearForm) -> SymplecticReduction:
    """Reduce a nondegenerate skew form over Q to the standard symplectic Gram.

    Every such form is a sum of hyperbolic planes, so its Witt class is zero.
    """
    if f.symmetry != SKEW:
        raise ValueError("symplectic reduction requires a skew form")
    if f.field != RATIONAL:
        raise ValueError("symplectic_reduce operates over Q")
    g = f.gram
    n = g.n
    if n % 2:
        raise ValueError("skew nondegenerate forms have even rank; odd rank given")
    if n and not g.det():
        raise ValueError("skew form is degenerate")

    def pair(u, v):
        return (Mat.from_columns([u], m=n).T * g * Mat.from_columns([v], m=n))[0, 0]

    remaining = Mat.identity(n).columns()
    basis = []
    while remaining:
        u = remaining.pop(0)
        j = next((t for t in range(len(remaining)) if pair(u, remaining[t]) != 0), None)
        if j is None:
            raise ValueError("skew form is degenerate")
        v = remaining.pop(j)
        c = pair(u, v)
        v = [x / c for x in v]
        reduced = []
        for w in remaining:
            a = pair(u, w)
            b = pair(v, w)
            # w - b*u ... sign chosen so w' pairs to zero with both u and v
            w2 = [wi - a * vi + b * ui for wi, ui, vi in zip(w, u, v)]
            reduced.append(w2)
        remaining = reduced
        basis.extend([u, v])
    congruence = Mat.from_columns(basis, m=n) if n else Mat.zeros(0, 0)
    assert congruence.T * g * congruence == standard_symplectic_gram(n // 2)
    return SymplecticReduction(hyperbolic_count=n // 2, congruence=congruence)


@dataclass(frozen=True)
class BlockMetabolicForm:
    """Symmetric form written against a half-rank isotropic block:

        [[0, 0, I], [0, S, B], [I, B^T, A]]

    with S symmetric nondegenerate, A symmetric, B of shape (m, k).
    """

    s: BilinearForm
    a: Mat
    b: Mat

    def __post_init__(self):
        if not self.s.is_symmetric or self.s.field != RATIONAL:
            raise ValueError("core S must be a symmetric form over Q")
        if not self.s.is_nondegenerate():
            raise ValueError("core S must be nondegenerate")
        k = self.a.n
        m = self.s.gram.n
        if self.a.m != k or not self.a.is_symmetric():
            raise ValueError("block A must be symmetric k x k")
        if self.b.m != m or self.b.n != k:
            raise ValueError(f"block B must be {m} x {k}")

    @property
    def isotropic_rank(self) -> int:
        return self.a.n

    def assemble(self) -> BilinearForm:
        k = self.isotropic_rank
        m = self.s.gram.n
        ident = Mat.identity(k)
        top = Mat.zeros(k, k).hstack(Mat.zeros(k, m)).hstack(ident)
        mid = Mat.zeros(m, k).hstack(self.s.gram).hstack(self.b)
        bot = ident.hstack(self.b.T).hstack(self.a)
        gram = top.vstack(mid).vstack(bot)
        form = BilinearForm(RATIONAL, SYMMETRIC, gram)
        if not form.is_nondegenerate():
            raise ValueError("assembled block matrix is degenerate")
        return form


def transvection(n: int, alpha: Fraction, p: int, q: int) -> Mat:
    """Elementary matrix E with E - I having single entry alpha at (p, q)."""
    e = Mat.identity(n)
    e.rows[p][q] = e.rows[p][q] + Fraction(alpha)
    return e


@dataclass(frozen=True)
class MetabolicReduction:
    core: BilinearForm
    hyperbolic_count: int
    transvections: tuple  # (alpha, p, q) congruences, replayable in order
    congruence: Mat

    def replay(self, block: BlockMetabolicForm) -> Mat:
        g = block.assemble().gram
        for alpha, p, q in self.transvections:
            e = transvection(g.n, alpha, p, q)
            g = e.T * g * e
        return g


def metabolic_reduce(block: BlockMetabolicForm) -> MetabolicReduction:
    """Clear B, then A, by elementary congruences E(alpha, p, q).

    The result is S plus ``k`` split hyperbolic planes; the recorded
    transvection sequence replays to the reduced Gram matrix exactly.
    """
    form = block.assemble()
    g = form.gram
    k = block.isotropic_rank
    m = block.s.gram.n
    n = g.n
    moves = []

    def apply(alpha, p, q):
        nonlocal g
        e = transvection(n, alpha, p, q)
        g = e.T * g * e
        moves.append((Fraction(alpha), p, q))

    # clear B: basis vector k+j (middle) += alpha * basis vector l (isotropic)
    for j in range(m):
        for l in range(k):
            val = g[k + j, k + m + l]
            if val:
                apply(-val, l, k + j)
    # clear A: basis vector k+m+l += alpha * basis vector i (isotropic)
    for l in range(k):
        diag = g[k + m + l, k + m + l]
        if diag:
            apply(-diag / 2, l, k + m + l)
        for i in range(l + 1, k):
            val = g[k + m + l, k + m + i]
            if val:
                apply(-val, l, k + m + i)
    expected = BlockMetabolicForm(block.s, Mat.zeros(k, k), Mat.zeros(m, k)).assemble().gram if k or m else g
    assert g == expected, "metabolic reduction failed to clear A and B"
    congruence = Mat.identity(n)
    for alpha, p, q in moves:
        congruence = congruence * transvection(n, alpha, p, q)
    return MetabolicReduction(
        core=block.s,
        hyperbolic_count=k,
        transvections=tuple(moves),
        congruence=congruence,
    )
