"""Classical (zeroth) Fitting ideals over the supported commutative rings.

Supported rings are Z, Z/mZ and the localized integers Z_(p); all three
are gcd-normalizable, so every finitely generated ideal has a canonical
single generator and ideal equality is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .intlinalg import det_bareiss, det_fraction
from .parallel import ordered_map
from .rationals import vp


@dataclass(frozen=True)
class CommRing:
    """Z, Z/mZ or Z_(p), tagged with its parameter."""

    kind: str  # "Z" | "Zmod" | "Zloc"
    param: int = 0

    @staticmethod
    def integers() -> "CommRing":
        return CommRing("Z")

    @staticmethod
    def integers_mod(m: int) -> "CommRing":
        if m < 2:
            raise ValueError("modulus must be at least 2")
        return CommRing("Zmod", m)

    @staticmethod
    def localized_integers(p: int) -> "CommRing":
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        return CommRing("Zloc", p)

    def coerce(self, x):
        if self.kind == "Z":
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        if self.kind == "Zmod":
            x = Fraction(x)
            if gcd(x.denominator, self.param) != 1:
                raise ValueError(f"{x} has no lift to Z/{self.param}")
            return (x.numerator * pow(x.denominator, -1, self.param)) % self.param
        x = Fraction(x)
        if x.denominator % self.param == 0:
            raise ValueError(f"{x} is not {self.param}-integral")
        return x

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "Zmod":
            return f"Z/{self.param}"
        return f"Z_({self.param})"


class IdealFG:
    """Finitely generated ideal with a gcd-based canonical generator."""

    __slots__ = ("ring", "generator")

    def __init__(self, ring: CommRing, generators):
        self.ring = ring
        self.generator = self._normalize(ring, generators)

    @staticmethod
    def _normalize(ring, generators):
        gens = [ring.coerce(g) for g in generators]
        if ring.kind == "Z":
            g = 0
            for x in gens:
                g = gcd(g, abs(x))
            return g
        if ring.kind == "Zmod":
            m = ring.param
            g = m
            for x in gens:
                g = gcd(g, x)
            return g % m
        p = ring.param
        best = None
        for x in gens:
            if x == 0:
                continue
            v = vp(x, p)
            best = v if best is None else min(best, v)
        if best is None:
            return Fraction(0)
        return Fraction(p) ** best

    @property
    def is_zero(self) -> bool:
        return self.generator == 0

    @property
    def is_unit(self) -> bool:
        if self.ring.kind == "Zmod":
            return gcd(int(self.generator), self.ring.param) == 1
        return self.generator == 1

    def __eq__(self, other):
        if not isinstance(other, IdealFG):
            return NotImplemented
        return self.ring == other.ring and self.generator == other.generator

    __hash__ = None

    def __mul__(self, other):
        if self.ring != other.ring:
            raise ValueError("ideal product across different rings")
        return IdealFG(self.ring, [self.generator * other.generator])

    def contains(self, x) -> bool:
        x = self.ring.coerce(x)
        g = self.generator
        if self.ring.kind == "Z":
            return x == 0 if g == 0 else x % g == 0
        if self.ring.kind == "Zmod":
            m = self.ring.param
            gg = gcd(int(g), m) if g != 0 else m
            return x % gg == 0 if gg != m else x % m == 0
        if g == 0:
            return x == 0
        return x == 0 or vp(x, self.ring.param) >= vp(g, self.ring.param)

    def contains_ideal(self, other: "IdealFG") -> bool:
        if self.ring != other.ring:
            raise ValueError("ideal comparison across different rings")
        return self.contains(other.generator)

    def __repr__(self):
        return f"({self.generator}) over {self.ring}"


def ideal_mul(x: IdealFG, y: IdealFG) -> IdealFG:
    return x * y


def ideal_eq(x: IdealFG, y: IdealFG) -> bool:
    if x.ring != y.ring:
        raise ValueError("ideal comparison across different rings")
    return x == y


def ideal_contains(x: IdealFG, element) -> bool:
    return x.contains(element)


@dataclass(frozen=True)
class Presentation:
    """R^a -> R^b -> M -> 0, the map given by an a x b matrix (rows map in)."""

    ring: CommRing
    a: int
    b: int
    matrix: tuple

    @staticmethod
    def make(ring: CommRing, matrix) -> "Presentation":
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in matrix)
        a = len(rows)
        b = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != b:
                raise ValueError("ragged presentation matrix")
        return Presentation(ring, a, b, rows)


def _lift_matrix(pres: Presentation):
    """Integer/rational lift used for determinant work."""
    if pres.ring.kind == "Zmod":
        return [[int(x) for x in row] for row in pres.matrix]
    return [list(row) for row in pres.matrix]


def _minor_det(ring, lifted, rows_idx):
    sub = [lifted[i] for i in rows_idx]
    if ring.kind == "Zloc":
        return det_fraction(sub)
    return det_bareiss(sub)


def fitting_ideal(pres: Presentation) -> IdealFG:
    """Ideal of all b x b minors of the presentation matrix (zero if a < b).

    Minors are enumerated lexicographically over row-index subsets; the
    running gcd short-circuits once the ideal is everything.
    """
    ring = pres.ring
    if pres.b == 0:
        return IdealFG(ring, [1])
    if pres.a < pres.b:
        return IdealFG(ring, [0])
    lifted = _lift_matrix(pres)
    subsets = list(combinations(range(pres.a), pres.b))
    acc = IdealFG(ring, [0])
    chunk = 64
    for start in range(0, len(subsets), chunk):
        dets = ordered_map(
            lambda idx: _minor_det(ring, lifted, idx), subsets[start : start + chunk]
        )
        acc = IdealFG(ring, [acc.generator, *dets])
        if acc.is_unit:
            break
    return acc
