"""Exact dense linear algebra over Q and Q(i).

Everything here is plain Gaussian elimination on fractions.  Matrices are
small (desk scale), so no attempt is made at fraction-free or blocked
algorithms; correctness and exactness are the whole point.  Zero-row and
zero-column matrices occur constantly (empty forms, zero complexes), so the
shape is carried explicitly instead of being inferred from nested lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i), kept exact for Hodge bigrading arithmetic."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))

    def __add__(self, other):
        other = _promote(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _promote(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _promote(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _promote(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _promote(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return _promote(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"{self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i"


def _promote(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x), Fraction(0))


QI_ZERO = GaussianRational(Fraction(0), Fraction(0))
QI_ONE = GaussianRational(Fraction(1), Fraction(0))
QI_I = GaussianRational(Fraction(0), Fraction(1))


def i_power(k: int) -> GaussianRational:
    return (QI_ONE, QI_I, -QI_ONE, -QI_I)[k % 4]


class Mat:
    """Dense matrix with explicit shape; entries are Fraction or GaussianRational."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, m: int, n: int, rows):
        self.m = m
        self.n = n
        self.rows = [list(r) for r in rows]
        if len(self.rows) != m or any(len(r) != n for r in self.rows):
            raise ValueError(f"shape mismatch: declared {m}x{n}")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "Mat":
        rows = [[_coerce(x) for x in r] for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        return Mat(m, n, rows)

    @staticmethod
    def zeros(m: int, n: int, zero=Fraction(0)) -> "Mat":
        return Mat(m, n, [[zero] * n for _ in range(m)])

    @staticmethod
    def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> "Mat":
        return Mat(n, n, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def diag(entries) -> "Mat":
        entries = [_coerce(x) for x in entries]
        n = len(entries)
        rows = [[entries[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        return Mat(n, n, rows)

    @staticmethod
    def column(vec) -> "Mat":
        vec = [_coerce(x) for x in vec]
        return Mat(len(vec), 1, [[x] for x in vec])

    @staticmethod
    def from_columns(cols, m: int | None = None) -> "Mat":
        if not cols:
            if m is None:
                raise ValueError("need row count for empty column list")
            return Mat(m, 0, [[] for _ in range(m)])
        m = len(cols[0])
        return Mat(m, len(cols), [[_coerce(c[i]) for c in cols] for i in range(m)])

    def copy(self) -> "Mat":
        return Mat(self.m, self.n, [list(r) for r in self.rows])

    # -- basic algebra ------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.m == other.m
            and self.n == other.n
            and all(self.rows[i][j] == other.rows[i][j] for i in range(self.m) for j in range(self.n))
        )

    def __hash__(self):
        return hash((self.m, self.n, tuple(tuple(r) for r in self.rows)))

    def __add__(self, other):
        _same_shape(self, other)
        return Mat(self.m, self.n, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        _same_shape(self, other)
        return Mat(self.m, self.n, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.m, self.n, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Mat":
        return Mat(self.m, self.n, [[c * a for a in r] for r in self.rows])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.n != other.m:
            raise ValueError(f"cannot multiply {self.m}x{self.n} by {other.m}x{other.n}")
        if self._is_integral() and other._is_integral():
            # integer fast path: avoids per-term gcd normalization in Fraction
            a = [[x.numerator for x in r] for r in self.rows]
            bt = [[other.rows[k][j].numerator for k in range(other.m)] for j in range(other.n)]
            out = [
                [Fraction(sum(map(lambda x, y: x * y, ra, bc))) for bc in bt]
                for ra in a
            ]
            return Mat(self.m, other.n, out)
        ot = other.rows
        out = []
        for r in self.rows:
            row = []
            for j in range(other.n):
                acc = None
                for k in range(self.n):
                    term = r[k] * ot[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else Fraction(0))
            out.append(row)
        return Mat(self.m, other.n, out)

    def _is_integral(self) -> bool:
        for r in self.rows:
            for x in r:
                if type(x) is not Fraction or x.denominator != 1:
                    return False
        return True

    @property
    def T(self) -> "Mat":
        return Mat(self.n, self.m, [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)])

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.m == self.n and self == self.T

    def map(self, f) -> "Mat":
        return Mat(self.m, self.n, [[f(x) for x in r] for r in self.rows])

    def col(self, j) -> list:
        return [self.rows[i][j] for i in range(self.m)]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.n)]

    def hstack(self, other: "Mat") -> "Mat":
        if self.m != other.m:
            raise ValueError("hstack row mismatch")
        return Mat(self.m, self.n + other.n, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other: "Mat") -> "Mat":
        if self.n != other.n:
            raise ValueError("vstack column mismatch")
        return Mat(self.m + other.m, self.n, [list(r) for r in self.rows] + [list(r) for r in other.rows])

    def submatrix(self, rows, cols) -> "Mat":
        return Mat(len(rows), len(cols), [[self.rows[i][j] for j in cols] for i in rows])

    def trace(self):
        if self.m != self.n:
            raise ValueError("trace of a non-square matrix")
        acc = Fraction(0)
        for i in range(self.m):
            acc = acc + self.rows[i][i]
        return acc

    def __repr__(self):
        return f"Mat({self.m}x{self.n}, {self.rows})"

    # -- elimination --------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot column indices."""
        a = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.n):
            if r == self.m:
                break
            pivot = next((i for i in range(r, self.m) if a[i][c]), None)
            if pivot is None:
                continue
            a[r], a[pivot] = a[pivot], a[r]
            inv = a[r][c]
            a[r] = [x / inv for x in a[r]]
            for i in range(self.m):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return Mat(self.m, self.n, a), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Mat":
        """Columns form a basis of the kernel (the standard rref basis)."""
        R, pivots = self.rref()
        free = [j for j in range(self.n) if j not in pivots]
        cols = []
        zero, one = _zero_one_like(self)
        for f in free:
            v = [zero] * self.n
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -R.rows[r][f]
            cols.append(v)
        return Mat.from_columns(cols, m=self.n)

    def column_space_basis(self) -> "Mat":
        _, pivots = self.rref()
        return Mat.from_columns([self.col(j) for j in pivots], m=self.m)

    def solve(self, b: "Mat") -> "Mat | None":
        """One solution of self @ X = b, or None if inconsistent."""
        if b.m != self.m:
            raise ValueError("solve shape mismatch")
        aug = self.hstack(b)
        R, pivots = aug.rref()
        pivots_in_a = [p for p in pivots if p < self.n]
        if len(pivots_in_a) != len(pivots):
            return None  # pivot in the augmented block: inconsistent
        zero, _ = _zero_one_like(self, b)
        out = [[zero] * b.n for _ in range(self.n)]
        for r, p in enumerate(pivots_in_a):
            for j in range(b.n):
                out[p][j] = R.rows[r][self.n + j]
        return Mat(self.n, b.n, out)

    def inv(self) -> "Mat":
        if self.m != self.n:
            raise ValueError("inverse of a non-square matrix")
        zero, one = _zero_one_like(self)
        x = self.solve(Mat.identity(self.n, one=one, zero=zero))
        if x is None or (self * x) != Mat.identity(self.n, one=one, zero=zero):
            raise ValueError("matrix is singular")
        return x

    def det(self):
        if self.m != self.n:
            raise ValueError("determinant of a non-square matrix")
        zero, one = _zero_one_like(self)
        a = [list(r) for r in self.rows]
        d = one
        for c in range(self.n):
            pivot = next((i for i in range(c, self.n) if a[i][c]), None)
            if pivot is None:
                return zero
            if pivot != c:
                a[c], a[pivot] = a[pivot], a[c]
                d = -d
            d = d * a[c][c]
            inv = a[c][c]
            for i in range(c + 1, self.n):
                if a[i][c]:
                    f = a[i][c] / inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def charpoly(self) -> list[Fraction]:
        """Coefficients of det(t*I - A), ascending in t (Faddeev-LeVerrier)."""
        if self.m != self.n:
            raise ValueError("characteristic polynomial of a non-square matrix")
        n = self.n
        coeffs_desc = [Fraction(1)]
        M = Mat.identity(n)
        for k in range(1, n + 1):
            AM = self * M
            c = -AM.trace() / k
            coeffs_desc.append(c)
            M = AM + Mat.identity(n).scale(c)
        return list(reversed(coeffs_desc))


def _coerce(x):
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    return Fraction(x)


def _same_shape(a: Mat, b: Mat):
    if a.m != b.m or a.n != b.n:
        raise ValueError(f"shape mismatch: {a.m}x{a.n} vs {b.m}x{b.n}")


def _zero_one_like(*mats):
    for mat in mats:
        for r in mat.rows:
            for x in r:
                if isinstance(x, GaussianRational):
                    return QI_ZERO, QI_ONE
    return Fraction(0), Fraction(1)


def extend_to_complement(base: Mat, candidates: Mat) -> list[int]:
    """Indices of candidate columns greedily extending base to a spanning set.

    Deterministic: candidates are scanned left to right and kept whenever the
    rank grows.  Used for quotient sections and cohomology representatives.
    """
    current = base
    picked = []
    r = current.rank()
    for j in range(candidates.n):
        trial = current.hstack(Mat.from_columns([candidates.col(j)], m=candidates.m))
        tr = trial.rank()
        if tr > r:
            picked.append(j)
            current = trial
            r = tr
    return picked


def primitive_integer_column(vec: list[Fraction]) -> list[Fraction]:
    """Rescale by a positive rational so entries are coprime integers."""
    if all(x == 0 for x in vec):
        return list(vec)
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [x * denom_lcm for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, int(x))
    return [x / g for x in ints]


# -- polynomials over Q (ascending coefficient lists) ------------------


def poly_normalize(coeffs) -> list[Fraction]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_degree(p: list[Fraction]) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: list[Fraction]) -> list[Fraction]:
    return poly_normalize([k * p[k] for k in range(1, len(p))])


def poly_divmod(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv_lead
        q[k] = c
        if c:
            for j in range(len(b)):
                a[k + j] -= c * b[j]
    return poly_normalize(q), poly_normalize(a)


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = poly_normalize(a), poly_normalize(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_squarefree_part(p: list[Fraction]) -> list[Fraction]:
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(p, g)
    assert not r
    lead = q[-1]
    return [c / lead for c in q]


def poly_eval_matrix(p: list[Fraction], a: Mat) -> Mat:
    acc = Mat.zeros(a.m, a.n)
    for c in reversed(p):
        acc = acc * a + Mat.identity(a.n).scale(c)
    return acc


def poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_normalize(out)
