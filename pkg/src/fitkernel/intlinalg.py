"""Exact linear algebra over Z, Q and the localized integers Z_(p).

Provides Hermite/Smith normal forms, saturated integer kernels, Bareiss
determinants, and the IntLattice type used for conductor lattices,
membership tests and index computations.  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .rationals import vp_int

# ---------------------------------------------------------------------------
# rational Gaussian elimination


def solve_left(rows, target):
    """Solve sum_i y_i * rows[i] = target over Q; None if inconsistent.

    The rows are assumed linearly independent, so the solution is unique
    when it exists.
    """
    r = len(rows)
    if r == 0:
        return [] if all(x == 0 for x in target) else None
    d = len(rows[0])
    # augmented system: columns are equations
    A = [[Fraction(rows[i][j]) for i in range(r)] + [Fraction(target[j])] for j in range(d)]
    piv_of_col = {}
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, d) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        for i in range(d):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        piv_of_col[col] = row
        row += 1
    for i in range(row, d):
        if A[i][r] != 0:
            return None
    y = [Fraction(0)] * r
    for col, piv in piv_of_col.items():
        y[col] = A[piv][r]
    return y


def det_fraction(M) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = A[r][col] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det


def det_bareiss(M) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form over Z


def hnf_int(M, with_transform=False):
    """Row HNF of an integer matrix.

    Canonical form: nonzero rows first, pivot columns strictly increasing
    left to right, positive pivots, entries above each pivot reduced into
    [0, pivot).  Zero rows are kept at the bottom (so the transform stays
    square); callers who want the basis only should drop them.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if with_transform else None
    row = 0
    for col in range(n):
        if row >= m:
            break
        # Euclid on the column below `row`
        while True:
            nz = [r for r in range(row, m) if A[r][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: (abs(A[r][col]), r))
            if piv != row:
                A[row], A[piv] = A[piv], A[row]
                if U:
                    U[row], U[piv] = U[piv], U[row]
            if A[row][col] < 0:
                A[row] = [-x for x in A[row]]
                if U:
                    U[row] = [-x for x in U[row]]
            done = True
            for r in range(row + 1, m):
                if A[r][col] != 0:
                    q = A[r][col] // A[row][col]
                    if q:
                        A[r] = [x - q * y for x, y in zip(A[r], A[row])]
                        if U:
                            U[r] = [x - q * y for x, y in zip(U[r], U[row])]
                    if A[r][col] != 0:
                        done = False
            if done:
                break
        if A[row][col] != 0:
            # reduce the entries above the pivot
            for r in range(row):
                q = A[r][col] // A[row][col]
                if q:
                    A[r] = [x - q * y for x, y in zip(A[r], A[row])]
                    if U:
                        U[r] = [x - q * y for x, y in zip(U[r], U[row])]
            row += 1
    if with_transform:
        return A, U
    return A


def hnf_basis(M):
    """Nonzero rows of the integer HNF."""
    return [row for row in hnf_int(M) if any(row)]


def kernel_int(M):
    """Saturated basis of {x in Z^m : x M = 0} for an integer matrix M."""
    H, U = hnf_int(M, with_transform=True)
    return [U[i] for i in range(len(H)) if not any(H[i])]


def smith_normal_form(M):
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    Returns a list of length min(rows, cols), padded with zeros when the
    rank is deficient; entries are nonnegative.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    k = min(m, n)
    diag = []
    s = 0
    while s < k:
        # locate a nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[s], A[i0] = A[i0], A[s]
        for row in A:
            row[s], row[j0] = row[j0], row[s]
        # clear row and column s; restart if a remainder pops up
        while True:
            for i in range(s + 1, m):
                if A[i][s] != 0:
                    q = A[i][s] // A[s][s]
                    A[i] = [x - q * y for x, y in zip(A[i], A[s])]
            for j in range(s + 1, n):
                if A[s][j] != 0:
                    q = A[s][j] // A[s][s]
                    for row in A:
                        row[j] -= q * row[s]
            col_clear = all(A[i][s] == 0 for i in range(s + 1, m))
            row_clear = all(A[s][j] == 0 for j in range(s + 1, n))
            if col_clear and row_clear:
                break
            # a nonzero remainder is strictly smaller; move it into the pivot
            cand = None
            for i in range(s + 1, m):
                if A[i][s] != 0:
                    cand = ("r", i)
                    break
            if cand is None:
                for j in range(s + 1, n):
                    if A[s][j] != 0:
                        cand = ("c", j)
                        break
            kind, idx = cand
            if kind == "r":
                A[s], A[idx] = A[idx], A[s]
            else:
                for row in A:
                    row[s], row[idx] = row[idx], row[s]
        # enforce divisibility of the remaining block by the pivot
        viol = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if A[i][j] % A[s][s] != 0:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            A[s] = [x + y for x, y in zip(A[s], A[viol])]
            continue  # redo this pivot
        diag.append(abs(A[s][s]))
        s += 1
    while len(diag) < k:
        diag.append(0)
    return diag


# ---------------------------------------------------------------------------
# Z_(p)-canonical Hermite form (p-power pivots)


def _vp_frac(x: Fraction, p: int):
    if x == 0:
        return None
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def _canonical_residue(x: Fraction, p: int, k: int) -> int:
    """The integer t in [0, p^k) with x = t mod p^k Z_(p)."""
    mod = p**k
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise ValueError("entry is not p-integral")
    return (num * pow(den, -1, mod)) % mod


def hnf_local(M, p: int):
    """Canonical echelon basis of the Z_(p)-row span of M.

    Pivots are p-powers, entries above a pivot p^k are canonical residues
    in [0, p^k) (scaled when the lattice is fractional), and zero rows are
    dropped.  The result depends only on the Z_(p)-span.
    """
    A = [[Fraction(x) for x in row] for row in M]
    # clear p-power denominators by a global scaling, undone at the end
    shift = 0
    for row in A:
        for x in row:
            v = _vp_frac(x, p)
            if v is not None and v < -shift:
                shift = -v
    if shift:
        s = Fraction(p) ** shift
        basis = hnf_local([[x * s for x in row] for row in A], p)
        return [[x / s for x in row] for row in basis]
    for row in A:
        for x in row:
            if x.denominator % p == 0:
                raise ValueError("matrix is not p-integral")
    m = len(A)
    n = len(A[0]) if m else 0
    row = 0
    for col in range(n):
        if row >= m:
            break
        vals = [(r, _vp_frac(A[r][col], p)) for r in range(row, m)]
        vals = [(r, v) for r, v in vals if v is not None]
        if not vals:
            continue
        piv, k = min(vals, key=lambda t: (t[1], t[0]))
        if piv != row:
            A[row], A[piv] = A[piv], A[row]
        unit = A[row][col] / p**k
        A[row] = [x / unit for x in A[row]]
        for r in range(row + 1, m):
            if A[r][col] != 0:
                f = A[r][col] / A[row][col]  # p-integral by pivot minimality
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        row += 1
    basis = A[:row]
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in basis]
    # entries above pivot p^k become canonical residues in [0, p^k);
    # increasing j keeps already-canonical columns intact since rows
    # below j vanish at column pivots[j]
    for j in range(len(basis)):
        kj = _vp_frac(basis[j][pivots[j]], p)
        mod = Fraction(p**kj)
        for i in range(j):
            x = basis[i][pivots[j]]
            t = Fraction(_canonical_residue(x, p, kj)) if x != 0 else Fraction(0)
            if x != t:
                f = (x - t) / mod
                basis[i] = [a - f * b for a, b in zip(basis[i], basis[j])]
    return basis


# ---------------------------------------------------------------------------
# lattices over the localized integers


class IntLattice:
    """Finitely generated Z_(p)-lattice in Q^d, given by generator rows.

    The canonical basis (echelon form with p-power pivots) depends only
    on the span, which makes equality and golden-file comparisons exact.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows):
        self.dim = dim
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        for row in self.rows:
            if len(row) != dim:
                raise ValueError("generator row has wrong length")

    def canonical_basis(self, p: int):
        return hnf_local(self.rows, p)

    def rank(self, p: int) -> int:
        return len(self.canonical_basis(p))

    def member(self, v, p: int) -> bool:
        """True iff v lies in the span with denominators prime to p."""
        basis = self.canonical_basis(p)
        v = [Fraction(x) for x in v]
        if len(v) != self.dim:
            raise ValueError("vector has wrong length")
        for b in basis:
            c = next(j for j, x in enumerate(b) if x != 0)
            if v[c] != 0:
                f = v[c] / b[c]
                if f.denominator % p == 0:
                    return False
                v = [x - f * y for x, y in zip(v, b)]
        return all(x == 0 for x in v)

    def contains(self, other: "IntLattice", p: int) -> bool:
        return all(self.member(row, p) for row in other.rows)

    def equals(self, other: "IntLattice", p: int) -> bool:
        return self.canonical_basis(p) == other.canonical_basis(p)

    def sum(self, other: "IntLattice") -> "IntLattice":
        if self.dim != other.dim:
            raise ValueError("ambient dimensions differ")
        return IntLattice(self.dim, self.rows + other.rows)

    def scale(self, s) -> "IntLattice":
        s = Fraction(s)
        return IntLattice(self.dim, [[x * s for x in row] for row in self.rows])

    def __repr__(self):
        return f"IntLattice(dim={self.dim}, {len(self.rows)} generators)"


def lattice_member(v, x: IntLattice, p: int) -> bool:
    return x.member(v, p)


def lattice_index(x: IntLattice, y: IntLattice, p: int) -> int:
    """[x : y] as a p-power, for y a finite-index sublattice of x."""
    bx = x.canonical_basis(p)
    by = y.canonical_basis(p)
    if len(bx) != x.dim or len(by) != y.dim or x.dim != y.dim:
        raise ValueError("lattice_index requires full-rank lattices in a common space")
    if not x.contains(y, p):
        raise ValueError("second lattice is not contained in the first")
    C = []
    for row in by:
        sol = solve_left(bx, row)
        assert sol is not None
        C.append(sol)
    d = det_fraction(C)
    e = _vp_frac(d, p)
    assert e is not None and e >= 0
    return p**e


def lattice_index_exponent(x: IntLattice, y: IntLattice, p: int) -> int:
    return _vp_frac(Fraction(lattice_index(x, y, p)), p)


# spec-facing names ---------------------------------------------------------


def hnf(M, p: int | None = None):
    """Canonical row-reduced form; over Z when p is None, else over Z_(p)."""
    if p is None:
        for row in M:
            for x in row:
                if Fraction(x).denominator != 1:
                    raise ValueError("integer HNF needs integer entries; pass p for Z_(p)")
        return [row for row in hnf_int([[int(x) for x in row] for row in M]) if any(row)]
    for row in M:
        for x in row:
            if Fraction(x).denominator % p == 0:
                raise ValueError("entries must have denominators prime to p")
    return hnf_local(M, p)


def snf(M):
    """Diagonal invariant factors d_1 | d_2 | ... (zeros pad deficient rank)."""
    return smith_normal_form(M)


def express_in_lattice(gen_rows, target, p: int):
    """Coefficients c with sum c_i gen_rows[i] = target and c_i in Z_(p).

    Generator rows and the target must be integer vectors.  Returns None
    when the target is outside the Z_(p)-span.
    """
    G = [[int(x) for x in row] for row in gen_rows]
    t = [int(x) for x in target]
    H, U = hnf_int(G, with_transform=True)
    nonzero = [i for i in range(len(H)) if any(H[i])]
    rows = [H[i] for i in nonzero]
    if not rows:
        return [0] * len(G) if not any(t) else None
    y = solve_left(rows, t)
    if y is None:
        return None
    if any(c.denominator % p == 0 for c in y):
        return None
    coeffs = [Fraction(0)] * len(G)
    for c, i in zip(y, nonzero):
        if c:
            for j in range(len(G)):
                coeffs[j] += c * U[i][j]
    return coeffs
