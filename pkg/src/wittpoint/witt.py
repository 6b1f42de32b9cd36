"""Witt classes over Q and F_p in canonical form.

A class over Q is stored as (signature, second residues), where the residue
at p reads off the odd-valuation diagonal entries' unit residues in W(F_p).
Together these are a complete invariant (Milnor's residue exact sequence);
the structured F_p payloads follow the classical group tables

    W(F_2) = Z/2,   W(F_p) = Z/4 (p = 3 mod 4),   Z/2 x Z/2 (p = 1 mod 4).

The residue at p = 2 (uniformizer 2, rank-parity payload) is kept for
nonvanishing certificates; form equality additionally consults the Hasse
invariant at 2 through the stabilized-invariant oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import REAL_PLACE, is_prime, is_residue, p_adic_split, square_class
from .forms import (
    RATIONAL,
    SKEW,
    BilinearForm,
    diagonalize,
    hasse_of_entries,
    radical_split,
    symplectic_reduce,
)


@dataclass(frozen=True)
class WittClassFp:
    """Element of W(F_p), payload depending on p mod 4.

    p = 2: payload = rank parity in {0, 1}.
    p = 3 mod 4: payload = coefficient of the generator [<1>] in Z/4.
    p = 1 mod 4: payload = (rank parity, discriminant-is-residue bit).
    """

    p: int
    payload: object

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2 or self.p % 4 == 3:
            if not isinstance(self.payload, int):
                raise ValueError("integer payload expected")
        else:
            r, d = self.payload
            if r not in (0, 1) or not isinstance(d, bool):
                raise ValueError("payload must be (rank parity, residue bit)")

    @staticmethod
    def zero(p: int) -> "WittClassFp":
        if p == 2:
            return WittClassFp(2, 0)
        if p % 4 == 3:
            return WittClassFp(p, 0)
        return WittClassFp(p, (0, True))

    @staticmethod
    def rank_parity(p: int, parity: int) -> "WittClassFp":
        if p != 2:
            raise ValueError("rank-parity payload is the p = 2 case")
        return WittClassFp(2, parity % 2)

    def is_zero(self) -> bool:
        return self == WittClassFp.zero(self.p)

    def __add__(self, other: "WittClassFp") -> "WittClassFp":
        if self.p != other.p:
            raise ValueError("cannot add classes over different primes")
        p = self.p
        if p == 2:
            return WittClassFp(2, (self.payload + other.payload) % 2)
        if p % 4 == 3:
            return WittClassFp(p, (self.payload + other.payload) % 4)
        r1, d1 = self.payload
        r2, d2 = other.payload
        return WittClassFp(p, ((r1 + r2) % 2, not (d1 ^ d2)))

    def __neg__(self) -> "WittClassFp":
        if self.p % 4 == 3:
            return WittClassFp(self.p, (-self.payload) % 4)
        return self  # exponent-2 groups for p = 2 and p = 1 mod 4

    def order(self) -> int:
        if self.is_zero():
            return 1
        if self.p % 4 == 3 and self.payload % 2 == 1:
            return 4
        return 2


def fp_class_of(entries, p: int) -> WittClassFp:
    """Class of the diagonal form <entries> in W(F_p) for odd p."""
    if p == 2:
        raise ValueError("use rank parity directly for p = 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    residues = []
    for e in entries:
        e = int(e) % p
        if e == 0:
            raise ValueError("diagonal entries must be nonzero mod p")
        residues.append(is_residue(e, p))
    if p % 4 == 3:
        value = sum(1 if r else -1 for r in residues) % 4
        return WittClassFp(p, value)
    parity = len(residues) % 2
    disc_is_residue = sum(1 for r in residues if not r) % 2 == 0
    return WittClassFp(p, (parity, disc_is_residue))


def _diagonal_entries(f: BilinearForm) -> list[Fraction]:
    split = radical_split(f)
    return list(diagonalize(split.nondegenerate).entries)


def psi(form_or_entries, p: int, k: int) -> WittClassFp:
    """Residue map into W(F_p): keep diagonal entries with valuation = k mod 2
    and read their unit residues (rank parity for p = 2)."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(form_or_entries, BilinearForm):
        if not form_or_entries.is_symmetric:
            raise ValueError("residues of skew forms are not defined; class is zero")
        entries = _diagonal_entries(form_or_entries)
    else:
        entries = [Fraction(e) for e in form_or_entries]
        if any(e == 0 for e in entries):
            raise ValueError("diagonal entries must be nonzero")
    kept = []
    for e in entries:
        data = p_adic_split(e, p)
        if data.valuation % 2 == k:
            kept.append(data.unit_residue)
    if p == 2:
        return WittClassFp.rank_parity(2, len(kept))
    return fp_class_of(kept, p)


@dataclass(frozen=True)
class WittClassQ:
    """Canonical form of a Witt class over Q: signature plus the nonzero
    second residues, sorted by prime."""

    signature: int
    residues: tuple  # ((p, WittClassFp), ...) nonzero entries only

    def __post_init__(self):
        primes = [p for p, _ in self.residues]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("residues must be sorted by prime with no repeats")
        if any(c.is_zero() for _, c in self.residues):
            raise ValueError("canonical form stores only nonzero residues")

    @staticmethod
    def zero() -> "WittClassQ":
        return WittClassQ(0, ())

    @staticmethod
    def make(signature: int, residues: dict) -> "WittClassQ":
        items = tuple(sorted((p, c) for p, c in residues.items() if not c.is_zero()))
        return WittClassQ(signature, items)

    def residue_at(self, p: int) -> WittClassFp:
        for q, c in self.residues:
            if q == p:
                return c
        return WittClassFp.zero(p)

    def is_zero(self) -> bool:
        return self.signature == 0 and not self.residues

    def __add__(self, other: "WittClassQ") -> "WittClassQ":
        primes = {p for p, _ in self.residues} | {p for p, _ in other.residues}
        residues = {p: self.residue_at(p) + other.residue_at(p) for p in primes}
        return WittClassQ.make(self.signature + other.signature, residues)

    def __neg__(self) -> "WittClassQ":
        return WittClassQ.make(-self.signature, {p: -c for p, c in self.residues})

    def __sub__(self, other: "WittClassQ") -> "WittClassQ":
        return self + (-other)


def witt_class_of(f: BilinearForm) -> WittClassQ:
    """Witt class of a bilinear form over Q.

    Degenerate forms are accepted (the radical does not change the class);
    skew forms land in the zero class, certified by symplectic reduction.
    """
    if f.field != RATIONAL:
        raise ValueError("witt_class_of computes classes over Q")
    if f.symmetry == SKEW:
        split = radical_split(f)
        symplectic_reduce(split.nondegenerate)  # certificate that the class is zero
        return WittClassQ.zero()
    entries = _diagonal_entries(f)
    signature = sum(1 if e > 0 else -1 for e in entries)
    primes = set()
    for e in entries:
        primes.update(square_class(e).prime_support())
    residues = {p: psi(entries, p, 1) for p in sorted(primes)}
    return WittClassQ.make(signature, residues)


def group_law(a: WittClassQ, b: WittClassQ, op: str):
    """CLI-facing dispatch over the abelian group structure."""
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    if op == "is_zero":
        return a.is_zero()
    raise ValueError(f"unknown group operation {op!r}")


# -- equality oracles ---------------------------------------------------


def _stabilized_entries(f: BilinearForm, g: BilinearForm):
    ef = _diagonal_entries(f)
    eg = _diagonal_entries(g)
    if (len(ef) - len(eg)) % 2:
        return None
    pad = [Fraction(1), Fraction(-1)] * (abs(len(ef) - len(eg)) // 2)
    if len(ef) < len(eg):
        ef = ef + pad
    else:
        eg = eg + pad
    return ef, eg


def classes_equal_hasse_route(f: BilinearForm, g: BilinearForm) -> bool:
    """Witt equality via the complete invariant system of equal-rank forms:
    pad with hyperbolic planes, then compare rank, signature, discriminant,
    and every Hasse symbol (including the place 2 and the real place)."""
    stab = _stabilized_entries(f, g)
    if stab is None:
        return False
    ef, eg = stab
    sig_f = sum(1 if e > 0 else -1 for e in ef)
    sig_g = sum(1 if e > 0 else -1 for e in eg)
    if sig_f != sig_g:
        return False
    disc_f = square_class(1)
    for e in ef:
        disc_f = disc_f * square_class(e)
    disc_g = square_class(1)
    for e in eg:
        disc_g = disc_g * square_class(e)
    if disc_f != disc_g:
        return False
    places = {2, REAL_PLACE}
    for e in ef + eg:
        places.update(square_class(e).prime_support())
    ordered = sorted(p for p in places if p != REAL_PLACE) + [REAL_PLACE]
    hf = hasse_of_entries(ef, ordered)
    hg = hasse_of_entries(eg, ordered)
    return hf == hg


def classes_equal_residue_route(f: BilinearForm, g: BilinearForm) -> bool:
    return witt_class_of(f) == witt_class_of(g)


def equivalent(f: BilinearForm, g: BilinearForm) -> bool:
    """Decide Witt equality of two symmetric forms over Q.

    Runs both the residue-based canonical comparison and the Hasse-based
    stabilized comparison; disagreement would be an internal error.
    """
    by_residues = classes_equal_residue_route(f, g)
    by_hasse = classes_equal_hasse_route(f, g)
    if by_residues != by_hasse:
        raise AssertionError(
            "residue and Hasse equality oracles disagree; this is a bug: "
            f"{witt_class_of(f)} vs {witt_class_of(g)}"
        )
    return by_hasse


def fp_group_table(p: int) -> dict:
    """Structure of W(F_p) computed by closing {classes of <u>} under addition."""
    if p == 2:
        elements = {WittClassFp.rank_parity(2, 0), WittClassFp.rank_parity(2, 1)}
        generator = WittClassFp.rank_parity(2, 1)
    else:
        generators = {fp_class_of([u], p) for u in range(1, p)}
        elements = {WittClassFp.zero(p)} | generators
        frontier = list(elements)
        while frontier:
            x = frontier.pop()
            for gcls in generators:
                y = x + gcls
                if y not in elements:
                    elements.add(y)
                    frontier.append(y)
        generator = fp_class_of([1], p)
    exponent = 1
    for x in elements:
        exponent = _lcm(exponent, x.order())
    return {
        "p": p,
        "cardinality": len(elements),
        "exponent": exponent,
        "order_of_one": generator.order(),
    }


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)
