"""Fitting invariants over matrix rings M_n(R) via explicit Morita reduction.

A block matrix over M_n(R), with its entries reread in R, presents the
same module after the column-slice equivalence; Fitting invariants over
the matrix ring reduce to classical Fitting ideals of that flattening.
"""

from __future__ import annotations

from dataclasses import dataclass

from .commring import CommRing, IdealFG, Presentation, fitting_ideal


class MatRingElem:
    """Element of M_n(R) for one of the supported commutative rings."""

    __slots__ = ("n", "ring", "entries")

    def __init__(self, n: int, ring: CommRing, entries):
        self.n = n
        self.ring = ring
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected an {n} x {n} matrix")
        self.entries = rows

    @staticmethod
    def basis_matrix(n: int, ring: CommRing, i: int, j: int) -> "MatRingElem":
        """The matrix unit e_ij."""
        return MatRingElem(
            n, ring, [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)]
        )

    @staticmethod
    def identity(n: int, ring: CommRing) -> "MatRingElem":
        return MatRingElem(n, ring, [[1 if r == c else 0 for c in range(n)] for r in range(n)])

    @staticmethod
    def scalar(n: int, ring: CommRing, s) -> "MatRingElem":
        s = ring.coerce(s)
        return MatRingElem(n, ring, [[s if r == c else 0 for c in range(n)] for r in range(n)])

    def _check(self, other):
        if self.n != other.n or self.ring != other.ring:
            raise ValueError("mixed matrix-ring arithmetic")

    def __add__(self, other):
        self._check(other)
        return MatRingElem(
            self.n,
            self.ring,
            [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __mul__(self, other):
        self._check(other)
        n = self.n
        out = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return MatRingElem(n, self.ring, out)

    def __eq__(self, other):
        return (
            isinstance(other, MatRingElem)
            and self.n == other.n
            and self.ring == other.ring
            and self.entries == other.entries
        )

    __hash__ = None

    def __repr__(self):
        return f"MatRingElem(n={self.n}, {self.ring}, {self.entries})"


@dataclass(frozen=True)
class MatRingPresentation:
    """Lambda^a -> Lambda^b -> M over Lambda = M_n(R), blocks row-major."""

    ring: CommRing
    n: int
    a: int
    b: int
    blocks: tuple

    @staticmethod
    def make(blocks) -> "MatRingPresentation":
        rows = tuple(tuple(row) for row in blocks)
        a = len(rows)
        b = len(rows[0]) if a else 0
        first = rows[0][0]
        for row in rows:
            if len(row) != b:
                raise ValueError("ragged block matrix")
            for x in row:
                if x.n != first.n or x.ring != first.ring:
                    raise ValueError("blocks must share size and ring")
        return MatRingPresentation(first.ring, first.n, a, b, rows)


def flatten(pres: MatRingPresentation) -> Presentation:
    """The na x nb matrix over R with the block entries reread in R."""
    n = pres.n
    flat = []
    for k in range(pres.a):
        for i in range(n):
            row = []
            for l in range(pres.b):
                row.extend(pres.blocks[k][l].entries[i])
            flat.append(row)
    if not flat:
        flat = []
    return Presentation.make(pres.ring, flat) if flat else Presentation(pres.ring, 0, 0, ())


def fit_matrix_ring(pres: MatRingPresentation) -> IdealFG:
    """Fitting invariant over M_n(R); equals the classical Fitting ideal of
    one column slice of the cokernel, computed from the flattening."""
    return fitting_ideal(flatten(pres))


def fit_left_ideal_quotient(generators) -> IdealFG:
    """Fitting invariant of Lambda/I for I generated by the given elements.

    Equal to the R-ideal of determinants of elements of I; every n x n
    submatrix of the flattened generator stack is such a determinant and
    they exhaust the ideal, so this reduces to the stacked flattening.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    stack = MatRingPresentation.make([[g] for g in gens])
    return fitting_ideal(flatten(stack))
