"""Exact arithmetic in cyclotomic fields Q(zeta_e).

A CycNum stores coordinates with respect to the power basis
1, z, ..., z^(phi(e)-1) of Q(zeta_e), reduced modulo the e-th cyclotomic
polynomial.  Arithmetic between different conductors lifts both operands
to the lcm.  Everything is exact (Fraction coefficients); there is no
floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .rationals import lcm_int

# ---------------------------------------------------------------------------
# integer polynomial layer (ascending coefficient lists)


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_int(a, b):
    # b monic; exact integer division
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    q = [0] * max(da - db + 1, 1)
    for i in range(da - db, -1, -1):
        c = a[i + db]
        if c:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def totient(e: int) -> int:
    assert e >= 1
    result, n, q = e, e, 2
    while q * q <= n:
        if n % q == 0:
            while n % q == 0:
                n //= q
            result -= result // q
        q += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int):
    """Coefficients of Phi_e, ascending, as a tuple of ints."""
    if e == 1:
        return (-1, 1)
    num = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    den = [1]
    for d in range(1, e):
        if e % d == 0:
            den = _poly_mul_int(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod_int(num, den)
    assert r == [0], f"Phi_{e} division not exact"
    return tuple(q)


@lru_cache(maxsize=None)
def _power_table(e: int):
    """zeta_e^m in power-basis coordinates, for 0 <= m < e (integer rows)."""
    phi = totient(e)
    Phi = cyclotomic_polynomial(e)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(e):
        rows.append(tuple(cur))
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            # x^phi = -(Phi - x^phi)
            for j in range(phi):
                nxt[j] -= lead * Phi[j]
        cur = nxt
    return tuple(rows)


def _units_mod(e: int):
    return tuple(k for k in range(1, e + 1) if gcd(k, e) == 1)


# ---------------------------------------------------------------------------


class CycNum:
    """Element of Q(zeta_e) in power-basis coordinates."""

    __slots__ = ("e", "c")
    __hash__ = None  # equality crosses conductors; do not use as dict key

    def __init__(self, e: int, coeffs):
        phi = totient(e)
        # plain ints are kept as ints: integer coefficient paths dominate
        # and Fraction object churn is the main cost of exactness
        c = [x if isinstance(x, int) else Fraction(x) for x in coeffs]
        if len(c) != phi:
            raise ValueError(f"expected {phi} coordinates for conductor {e}")
        self.e = e
        self.c = tuple(c)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "CycNum":
        return CycNum(1, [Fraction(q)])

    @staticmethod
    def zero(e: int = 1) -> "CycNum":
        return CycNum(e, [0] * totient(e))

    @staticmethod
    def one() -> "CycNum":
        return CycNum.from_rational(1)

    @staticmethod
    def root_of_unity(e: int, k: int = 1) -> "CycNum":
        """zeta_e^k."""
        row = _power_table(e)[k % e]
        return CycNum(e, row)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.c[0])

    def lift(self, e2: int) -> "CycNum":
        """Image under Q(zeta_e) -> Q(zeta_e2) for e | e2."""
        if e2 == self.e:
            return self
        if e2 % self.e != 0:
            raise ValueError(f"cannot lift conductor {self.e} into {e2}")
        step = e2 // self.e
        table = _power_table(e2)
        phi2 = totient(e2)
        out = [0] * phi2
        for j, cj in enumerate(self.c):
            if cj:
                row = table[(j * step) % e2]
                for i in range(phi2):
                    if row[i]:
                        out[i] += cj * row[i]
        return CycNum(e2, out)

    def _pair(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rational(other)
        e = lcm_int(self.e, other.e)
        return self.lift(e), other.lift(e)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return CycNum(a.e, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.e, [-x for x in self.c])

    def __sub__(self, other):
        a, b = self._pair(other)
        return CycNum(a.e, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.e, [x * other for x in self.c])
        a, b = self._pair(other)
        phi = totient(a.e)
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a.c):
            if ai:
                for j, bj in enumerate(b.c):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:phi])
        table = _power_table(a.e)
        for m in range(phi, 2 * phi - 1):
            cm = conv[m]
            if cm:
                row = table[m % a.e]
                for i in range(phi):
                    if row[i]:
                        out[i] += cm * row[i]
        return CycNum(a.e, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CycNum.from_rational(1 / self.c[0])
        # extended gcd of the coordinate polynomial with Phi_e in Q[X]
        Phi = [Fraction(x) for x in cyclotomic_polynomial(self.e)]
        a = list(self.c)
        while a and a[-1] == 0:
            a.pop()
        g, s = _poly_xgcd(a, Phi)
        if len(g) != 1:
            raise ZeroDivisionError("not invertible mod Phi_e (impossible in a field)")
        g0 = Fraction(g[0])
        inv = [x / g0 for x in s]
        phi = totient(self.e)
        inv = (inv + [0] * phi)[:phi]
        return CycNum(self.e, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.e, [x / q for x in self.c])
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._pair(other)
        return a.c == b.c

    # -- Galois action ------------------------------------------------------

    def galois(self, k: int) -> "CycNum":
        """Apply the automorphism zeta_e -> zeta_e^k (k coprime to e)."""
        if gcd(k, self.e) != 1:
            raise ValueError(f"{k} is not coprime to the conductor {self.e}")
        table = _power_table(self.e)
        phi = totient(self.e)
        out = [0] * phi
        for j, cj in enumerate(self.c):
            if cj:
                row = table[(j * k) % self.e]
                for i in range(phi):
                    if row[i]:
                        out[i] += cj * row[i]
        return CycNum(self.e, out)

    # -- canonical form -----------------------------------------------------

    def reduced(self) -> "CycNum":
        """Rewrite at the minimal conductor (canonical for serialization)."""
        z = self
        changed = True
        while changed and z.e > 1:
            changed = False
            for q in _prime_factors(z.e):
                d = z.e // q
                down = _try_descend(z, d)
                if down is not None:
                    z = down
                    changed = True
                    break
        return z

    def __repr__(self):
        return f"CycNum(e={self.e}, {list(self.c)})"


def _prime_factors(n: int):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _try_descend(z: CycNum, d: int):
    """Return z rewritten in Q(zeta_d) if it lies there (d | e), else None."""
    e = z.e
    # invariance under Gal(Q(zeta_e)/Q(zeta_d)) = {k coprime to e, k = 1 mod d}
    for k in _units_mod(e):
        if k != 1 and k % d == 1 % d:
            if z.galois(k) != z:
                return None
    # solve for coordinates in the lifted power basis of zeta_d
    basis = [CycNum.root_of_unity(d, j).lift(e) for j in range(totient(d))]
    sol = _solve_in_basis(z, basis)
    if sol is None:
        return None
    return CycNum(d, sol)


def _solve_in_basis(z: CycNum, basis):
    """Coordinates of z in a linearly independent CycNum family, or None."""
    from .intlinalg import solve_left

    e = z.e
    rows = [list(b.lift(e).c) for b in basis]
    target = list(z.c)
    return solve_left(rows, target)


def _poly_xgcd(a, b):
    """(g, s) with s*a = g mod b, over Fraction coefficient lists."""

    def trim(p):
        p = list(p)
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    def pdivmod(num, den):
        num = list(num)
        dd = len(den) - 1
        inv = Fraction(1) / den[-1]
        q = [Fraction(0)] * max(len(num) - dd, 1)
        for i in range(len(num) - dd - 1, -1, -1):
            c = num[i + dd] * inv
            if c:
                q[i] = c
                for j in range(dd + 1):
                    num[i + j] -= c * den[j]
        return trim(q), trim(num)

    def pmul(x, y):
        out = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        out[i + j] += xi * yj
        return trim(out)

    def psub(x, y):
        n = max(len(x), len(y))
        x = list(x) + [0] * (n - len(x))
        y = list(y) + [0] * (n - len(y))
        return trim([u - v for u, v in zip(x, y)])

    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    while r1 != [0]:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
    return r0, s0


# ---------------------------------------------------------------------------
# public operation names matching the kernel surface


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    """Exact product, reduced modulo Phi_lcm."""
    return a * b


def galois_apply(a: CycNum, k: int) -> CycNum:
    """Ring automorphism zeta -> zeta^k; fixes rational scalars."""
    return a.galois(k)


# ---------------------------------------------------------------------------
# matrices over cyclotomic fields (small, dense, exact)


def cyc_identity(n: int):
    return [
        [CycNum.one() if i == j else CycNum.zero() for j in range(n)]
        for i in range(n)
    ]


def cyc_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = CycNum.zero()
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def cyc_mat_scale(A, s):
    return [[x * s for x in row] for row in A]


def cyc_mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def cyc_det(A) -> CycNum:
    """Determinant by fraction-full Gaussian elimination (field arithmetic)."""
    n = len(A)
    if n == 0:
        return CycNum.one()
    M = [row[:] for row in A]
    det = CycNum.one()
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not M[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return CycNum.zero()
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col]
        inv = M[col][col].inverse()
        for r in range(col + 1, n):
            if not M[r][col].is_zero():
                factor = M[r][col] * inv
                for c in range(col, n):
                    M[r][c] = M[r][c] - factor * M[col][c]
    return det


def cyc_charpoly(A):
    """Characteristic polynomial of A, ascending coefficients.

    Faddeev-LeVerrier: exact over a field of characteristic zero, only
    divisions by integers occur.  Returns [c0, ..., c_{n-1}, 1] with
    det(X*I - A) = sum c_j X^j + X^n.
    """
    n = len(A)
    coeffs = [CycNum.zero()] * n + [CycNum.one()]
    M = cyc_identity(n)
    for k in range(1, n + 1):
        AM = cyc_matmul(A, M)
        tr = CycNum.zero()
        for i in range(n):
            tr = tr + AM[i][i]
        ck = tr / Fraction(-k)  # coefficient of X^(n-k)
        coeffs[n - k] = ck
        if k < n:
            M = [
                [AM[i][j] + (ck if i == j else CycNum.zero()) for j in range(n)]
                for i in range(n)
            ]
    return coeffs


def cyc_rank(A) -> int:
    """Rank of a matrix over the cyclotomic field (Gaussian elimination)."""
    if not A:
        return 0
    M = [row[:] for row in A]
    rows, cols = len(M), len(M[0])
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if not M[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = M[rank][col].inverse()
        for r in range(rank + 1, rows):
            if not M[r][col].is_zero():
                f = M[r][col] * inv
                for c in range(col, cols):
                    M[r][c] = M[r][c] - f * M[rank][c]
        rank += 1
        if rank == rows:
            break
    return rank
