"""Exact scalar arithmetic: square classes, p-adic splitting, Hilbert symbols,
and Sturm root counting.

This is the numeric substrate for every Witt invariant in the package.  All
arithmetic is exact; nothing here ever touches a float.  Factoring is trial
division with a configurable bound: inputs are desk scale and the bound gives
a clear failure mode instead of an open-ended search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import (
    poly_degree,
    poly_derivative,
    poly_divmod,
    poly_gcd,
    poly_normalize,
    poly_squarefree_part,
)

REAL_PLACE = "real"

DEFAULT_TRIAL_DIVISION_BOUND = 1_000_000

_trial_division_bound = DEFAULT_TRIAL_DIVISION_BOUND


class FactorBoundExceeded(ValueError):
    """Raised when trial division up to the configured bound cannot finish."""


def set_trial_division_bound(bound: int) -> None:
    global _trial_division_bound
    if bound < 2:
        raise ValueError("trial division bound must be at least 2")
    _trial_division_bound = bound


def get_trial_division_bound() -> int:
    return _trial_division_bound


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _factor_cached(n: int, bound: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    while d * d <= n and d <= bound:
        for p in (d, d + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        d += 6
    if n > 1:
        if n <= bound * bound or is_prime(n):
            out.append((n, 1))
        else:
            raise FactorBoundExceeded(
                f"cofactor {n} is composite with no prime factor below the "
                f"trial division bound {bound}; raise --trial-division-bound"
            )
    return tuple(out)


def factor(n: int, bound: int | None = None) -> dict[int, int]:
    """Prime factorization of |n| by trial division; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor zero")
    return dict(_factor_cached(abs(n), bound if bound is not None else _trial_division_bound))


@dataclass(frozen=True)
class SquareClass:
    """A nonzero rational modulo squares, stored as a signed squarefree integer."""

    representative: int

    def __post_init__(self):
        if self.representative == 0:
            raise ValueError("zero has no square class")
        for p, e in factor(self.representative).items():
            if e > 1:
                raise ValueError(f"{self.representative} is not squarefree (p={p})")

    @staticmethod
    def of(a) -> "SquareClass":
        return square_class(a)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return square_class(self.representative * other.representative)

    def __neg__(self) -> "SquareClass":
        return SquareClass(-self.representative)

    def prime_support(self) -> list[int]:
        return sorted(factor(self.representative))

    def __str__(self):
        return str(self.representative)


def square_class(a) -> SquareClass:
    """Class of a nonzero rational modulo (Q*)^2, as a signed squarefree integer."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no square class")
    n = a.numerator * a.denominator  # a and n*d differ by the square d^2
    rep = -1 if n < 0 else 1
    for p, e in factor(n).items():
        if e % 2:
            rep *= p
    return SquareClass(rep)


@dataclass(frozen=True)
class LocalUnitData:
    """p-adic splitting a = unit * p^valuation with the unit's residue mod p."""

    prime: int
    valuation: int
    unit: Fraction
    unit_residue: int

    def reconstruct(self) -> Fraction:
        return self.unit * Fraction(self.prime) ** self.valuation


def p_adic_valuation(a: Fraction, p: int) -> int:
    if a == 0:
        raise ValueError("zero has no p-adic valuation")
    v = 0
    n = a.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = a.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def p_adic_split(a, p: int) -> LocalUnitData:
    """Split a nonzero rational as u * p^i with u a p-adic unit."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no p-adic splitting")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = p_adic_valuation(a, p)
    unit = a / Fraction(p) ** v
    num, den = unit.numerator, unit.denominator
    residue = num % p * pow(den % p, -1, p) % p
    return LocalUnitData(prime=p, valuation=v, unit=unit, unit_residue=residue)


def is_residue(u: int, p: int) -> bool:
    """Is u a nonzero square mod the odd prime p?"""
    u %= p
    if u == 0:
        raise ValueError("zero is neither residue nor nonresidue")
    return pow(u, (p - 1) // 2, p) == 1


def legendre(u: int, p: int) -> int:
    return 1 if is_residue(u, p) else -1


def _eps2(u: int) -> int:
    # (u - 1)/2 mod 2 for odd u
    return (u - 1) // 2 % 2


def _omega2(u: int) -> int:
    # (u^2 - 1)/8 mod 2 for odd u
    return (u * u - 1) // 8 % 2


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at a prime or at the real place.

    +1 iff z^2 = a*x^2 + b*y^2 has a nontrivial solution over the completion.
    The p = 2 case uses the classical epsilon/omega residue formulas.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == REAL_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = place
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"place must be a prime or {REAL_PLACE!r}, got {place!r}")
    # replace by integers in the same square classes
    ai = a.numerator * a.denominator
    bi = b.numerator * b.denominator
    sa, sb = p_adic_split(ai, p), p_adic_split(bi, p)
    alpha, u = sa.valuation, sa.unit
    beta, v = sb.valuation, sb.unit
    if p == 2:
        # units mod 8 determine epsilon and omega
        u8 = (u.numerator * pow(u.denominator % 8, -1, 8)) % 8
        v8 = (v.numerator * pow(v.denominator % 8, -1, 8)) % 8
        e = _eps2(u8) * _eps2(v8) + alpha * _omega2(v8) + beta * _omega2(u8)
        return -1 if e % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
        sign = -sign
    if beta % 2:
        sign *= legendre(sa.unit_residue, p)
    if alpha % 2:
        sign *= legendre(sb.unit_residue, p)
    return sign


def relevant_places(values) -> list:
    """Places where a Hilbert symbol of the given rationals can be nontrivial:
    2, the odd primes in some square class, and the real place."""
    primes = {2}
    for a in values:
        primes.update(square_class(a).prime_support())
    primes.discard(1)
    return sorted(primes) + [REAL_PLACE]


# -- Sturm sequences ----------------------------------------------------


@dataclass(frozen=True)
class SturmCertificate:
    """Exact real-root counts of a rational polynomial (distinct roots)."""

    positive_roots: int
    real_roots: int
    distinct_roots: int
    all_real: bool
    squarefree: bool

    @property
    def all_real_positive(self) -> bool:
        return self.all_real and self.positive_roots == self.distinct_roots


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s * t < 0)


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [p, poly_derivative(p)]
    while chain[-1]:
        r = poly_divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations_at_zero(chain) -> int:
    return _sign_variations([_sign(q[0]) if q else 0 for q in chain])


def _variations_at_inf(chain, sign: int) -> int:
    # sign = +1 for +infinity, -1 for -infinity
    out = []
    for q in chain:
        if not q:
            out.append(0)
        else:
            s = _sign(q[-1])
            out.append(s if sign > 0 else s * (-1) ** poly_degree(q))
    return _sign_variations(out)


def sturm_positive_real_roots(coeffs) -> SturmCertificate:
    """Count distinct real roots in (0, inf) and overall, with flags.

    The counts are taken on the squarefree part, so multiplicities are
    ignored; ``all_real`` means every complex root of the input is real.
    """
    p = poly_normalize(coeffs)
    if not p:
        raise ValueError("the zero polynomial has no Sturm certificate")
    squarefree = poly_degree(poly_gcd(p, poly_derivative(p))) <= 0
    q = poly_squarefree_part(p)
    distinct = poly_degree(q)
    if distinct == 0:
        return SturmCertificate(0, 0, 0, True, squarefree)
    # strip the root at 0 so the open interval (0, inf) is counted correctly
    q_pos = q
    if q_pos[0] == 0:
        q_pos = poly_normalize(q_pos[1:])
    chain_pos = _sturm_chain(q_pos)
    positive = _variations_at_zero(chain_pos) - _variations_at_inf(chain_pos, +1)
    chain = _sturm_chain(q)
    real = _variations_at_inf(chain, -1) - _variations_at_inf(chain, +1)
    return SturmCertificate(
        positive_roots=positive,
        real_roots=real,
        distinct_roots=distinct,
        all_real=(real == distinct),
        squarefree=squarefree,
    )
