"""Subfields of cyclotomic fields with exact p-local data.

A component value field is modeled globally as F = Fix(S) inside
Q(zeta_e) for a subgroup S of (Z/e)^*, together with a working prime p.
Supported fields have a single prime above p (totally ramified
Q_p(zeta_{p^a}) and its subfields, unramified Q_p(zeta_m) with p
generating the right quotient, and mixtures); everything else raises
UnsupportedFieldError rather than guessing a prime.

All p-adic quantities are exact: valuations come from absolute norms,
the inverse different from the derivative of the minimal polynomial of
an integral generator whose p-maximality is verified, and fractional
ideals are materialized as Z_(p)-lattices in integral-basis coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import CycNum, _units_mod, totient
from .errors import UnsupportedFieldError
from .intlinalg import (
    IntLattice,
    hnf_basis,
    hnf_local,
    kernel_int,
    lattice_index,
    solve_left,
)
from .rationals import vp, vp_int


def _closure(e: int, gens):
    """Subgroup of (Z/e)^* generated by gens."""
    seen = {1 % e if e > 1 else 0}
    frontier = list(seen)
    gens = [g % e for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x * g) % e
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def _group_product(e: int, A, B):
    return frozenset((a * b) % e for a in A for b in B)


@lru_cache(maxsize=None)
def local_subgroups(e: int, p: int):
    """(inertia, decomposition) subgroups of (Z/e)^* at the prime p.

    With e = p^a * m: inertia is everything congruent to 1 mod m, and the
    decomposition group adds the Frobenius p mod m.
    """
    if e == 1:
        return frozenset({0}), frozenset({0})
    units = frozenset(_units_mod(e))
    a, m = 0, e
    while m % p == 0:
        m //= p
        a += 1
    inertia = frozenset(k for k in units if k % m == 1 % m)
    if a == 0:
        frob = p % e
    elif m == 1:
        frob = 1
    else:
        pa = p**a
        frob = (p * pa * pow(pa, -1, m) + m * pow(m, -1, pa)) % e
    decomposition = _closure(e, set(inertia) | {frob})
    return inertia, decomposition


@lru_cache(maxsize=None)
def _galois_matrix(e: int, k: int):
    """Row-convention matrix of zeta -> zeta^k on power-basis coordinates."""
    phi = totient(e)
    rows = []
    for j in range(phi):
        z = CycNum.root_of_unity(e, (j * k) % e)
        rows.append([int(x) for x in z.c])
    return rows


class CycloSubfield:
    """F = Fix(S) in Q(zeta_e), with exact local data at p."""

    def __init__(self, e: int, stab, p: int):
        self.e = e
        self.p = p
        units = _units_mod(e) if e > 1 else (0,)
        if e == 1:
            self.S = frozenset({0})
        else:
            S = frozenset(k % e for k in stab) | {1}
            S = _closure(e, S)
            self.S = S
        self.units = frozenset(units) if e > 1 else frozenset({0})
        self.degree = totient(e) // len(self.S) if e > 1 else 1
        self._init_local_subgroups()
        self._basis = None
        self._coords_rows = None
        self._mult_table = None
        self._diff_val = None
        self._prime_lattice = None
        self._ideal_cache = {}

    # -- local structure ----------------------------------------------------

    def _init_local_subgroups(self):
        e, p = self.e, self.p
        if e == 1:
            self.inertia = frozenset({0})
            self.decomposition = frozenset({0})
            self.ramification_index = 1
            self.residue_degree = 1
            self.n_primes = 1
            return
        inertia, D = local_subgroups(e, p)
        self.inertia = inertia
        self.decomposition = D
        SD = _group_product(e, self.S, D)
        self.n_primes = len(self.units) // len(SD)
        IS = self.inertia & self.S
        self.ramification_index = len(self.inertia) // len(IS)
        self.residue_degree = len(SD) // (len(self.S) * self.ramification_index)

    @property
    def single_prime(self) -> bool:
        return self.n_primes == 1

    def require_single_prime(self):
        if not self.single_prime:
            raise UnsupportedFieldError(
                f"field Fix(S) in Q(zeta_{self.e}) has {self.n_primes} primes above {self.p}"
            )

    # -- global structure ----------------------------------------------------

    def coset_reps(self):
        """One representative per coset of S: the embeddings of F."""
        if self.e == 1:
            return [1]
        reps, covered = [], set()
        for k in sorted(self.units):
            if k not in covered:
                reps.append(k)
                covered |= {(k * s) % self.e for s in self.S}
        return reps

    def contains(self, x: CycNum) -> bool:
        z = x if self.e % x.e == 0 else x.reduced()
        if self.e % z.e != 0:
            return False
        y = z.lift(self.e)
        return all(y.galois(k) == y for k in self.S if k != 1)

    def integral_basis(self):
        """Z-basis of O_F = F intersect Z[zeta_e], as CycNums."""
        if self._basis is None:
            if self.e == 1:
                self._basis = [CycNum.one()]
            else:
                phi = totient(self.e)
                cols = []
                for k in sorted(self.S):
                    if k == 1:
                        continue
                    A = _galois_matrix(self.e, k)
                    cols.append([[A[i][j] - (1 if i == j else 0) for j in range(phi)] for i in range(phi)])
                if not cols:
                    rows = [[1 if i == j else 0 for j in range(phi)] for i in range(phi)]
                else:
                    stacked = [sum((cols[t][i] for t in range(len(cols))), []) for i in range(phi)]
                    rows = kernel_int(stacked)
                    rows = hnf_basis(rows)
                assert len(rows) == self.degree
                self._basis = [CycNum(self.e, row) for row in rows]
        return self._basis

    def coords(self, x: CycNum):
        """Coordinates of x in the integral basis (rational vector)."""
        basis = self.integral_basis()
        if self._coords_rows is None:
            self._coords_rows = [list(b.c) for b in basis]
        y = x.lift(self.e)
        sol = solve_left(self._coords_rows, list(y.c))
        if sol is None:
            raise ValueError("element does not lie in the subfield")
        return sol

    def from_coords(self, vec) -> CycNum:
        basis = self.integral_basis()
        acc = CycNum.zero(self.e)
        for c, b in zip(vec, basis):
            if c:
                acc = acc + b * Fraction(c)
        return acc

    # -- norms, traces, valuations -------------------------------------------

    def norm_to_q(self, x: CycNum) -> Fraction:
        acc = CycNum.one()
        y = x.lift(self.e)
        for k in self.coset_reps():
            acc = acc * (y if k == 1 else y.galois(k))
        return acc.rational_value()

    def trace_to_q(self, x: CycNum) -> Fraction:
        acc = CycNum.zero()
        y = x.lift(self.e)
        for k in self.coset_reps():
            acc = acc + (y if k == 1 else y.galois(k))
        return acc.rational_value()

    def v_pi(self, x: CycNum):
        """pi-adic valuation normalized to F; None encodes v(0) = +infinity."""
        self.require_single_prime()
        if x.is_zero():
            return None
        n = self.norm_to_q(x)
        total = vp_int(n.numerator, self.p) - vp_int(n.denominator, self.p)
        q, rem = divmod(total, self.residue_degree)
        assert rem == 0, "norm valuation not divisible by residue degree"
        return q

    # -- multiplication in integral-basis coordinates -------------------------

    def _mult(self, u, v):
        """Product of two coordinate vectors, as a coordinate vector."""
        if self._mult_table is None:
            basis = self.integral_basis()
            d = self.degree
            table = []
            for i in range(d):
                row = []
                for j in range(d):
                    row.append(self.coords(basis[i] * basis[j]))
                table.append(row)
            self._mult_table = table
        d = self.degree
        out = [Fraction(0)] * d
        for i in range(d):
            if u[i]:
                for j in range(d):
                    if v[j]:
                        cij = self._mult_table[i][j]
                        ui_vj = Fraction(u[i]) * Fraction(v[j])
                        for k in range(d):
                            if cij[k]:
                                out[k] += ui_vj * cij[k]
        return out

    # -- prime and fractional ideals ------------------------------------------

    def prime_lattice(self) -> IntLattice:
        """The maximal ideal above p of O_F x Z_(p), in basis coordinates."""
        self.require_single_prime()
        if self._prime_lattice is not None:
            return self._prime_lattice
        d = self.degree
        p = self.p
        if self.ramification_index == 1:
            rows = [[p if i == j else 0 for j in range(d)] for i in range(d)]
            self._prime_lattice = IntLattice(d, rows)
            return self._prime_lattice
        # radical of O/pO = kernel of the iterated Frobenius x -> x^(p^t)
        t = 1
        while p**t < d:
            t += 1
        frob_rows = []
        for i in range(d):
            acc = [Fraction(1 if j == i else 0) for j in range(d)]
            for _ in range(t):
                res = acc
                for _ in range(p - 1):
                    res = self._mult(res, acc)
                # coordinates of integral products are integers; reduce mod p
                acc = [Fraction(c.numerator % p) for c in res]
            frob_rows.append([c.numerator % p for c in acc])
        stacked = frob_rows + [[p if i == j else 0 for j in range(d)] for i in range(d)]
        ker = kernel_int(stacked)
        lifts = [row[:d] for row in ker]
        rows = [[p if i == j else 0 for j in range(d)] for i in range(d)] + lifts
        P = IntLattice(d, rows)
        O = IntLattice(d, [[1 if i == j else 0 for j in range(d)] for i in range(d)])
        assert lattice_index(O, P, p) == p**self.residue_degree
        self._prime_lattice = P
        return P

    def fractional_ideal(self, v: int) -> IntLattice:
        """The lattice pi^v O_F x Z_(p) in integral-basis coordinates."""
        self.require_single_prime()
        if v in self._ideal_cache:
            return self._ideal_cache[v]
        d = self.degree
        e = self.ramification_index
        q, r = divmod(v, e)
        if r == 0:
            base = IntLattice(d, [[1 if i == j else 0 for j in range(d)] for i in range(d)])
        else:
            P = self.prime_lattice()
            base = P
            for _ in range(r - 1):
                rows = []
                for u in base.rows:
                    for w in P.rows:
                        rows.append(self._mult(list(u), list(w)))
                base = IntLattice(d, hnf_local(rows, self.p))
        scaled = base.scale(Fraction(self.p) ** q)
        result = IntLattice(d, hnf_local(scaled.rows, self.p))
        self._ideal_cache[v] = result
        return result

    # -- different -------------------------------------------------------------

    def _generator_candidates(self):
        basis = self.integral_basis()
        zeta_trace = CycNum.zero(self.e)
        for k in sorted(self.S):
            zeta_trace = zeta_trace + CycNum.root_of_unity(self.e, k if self.e > 1 else 0)
        cands = [zeta_trace]
        for b in basis[1:]:
            cands.append(zeta_trace + b)
        for j in range(2, 5):
            cands.append(zeta_trace + j * basis[-1])
        return cands

    def _minpoly(self, theta: CycNum):
        """Monic minimal polynomial over Q if deg = [F:Q], else None."""
        d = self.degree
        powers = [CycNum.one()]
        for _ in range(d):
            powers.append(powers[-1] * theta)
        rows = [self.coords(x) for x in powers[:d]]
        target = self.coords(powers[d])
        sol = solve_left(rows, target)
        if sol is None:
            return None
        # theta^d = sum sol_i theta^i, so minpoly = X^d - sum sol_i X^i
        coeffs = [-c for c in sol] + [Fraction(1)]
        return coeffs, rows

    def different_valuation(self) -> int:
        """v_pi of the different of O_F x Z_(p) over Z_(p).

        Unramified fields have trivial different.  Otherwise: locate an
        integral generator theta with Z_(p)[theta] p-maximal (verified by
        a unit determinant against the integral basis) and evaluate the
        derivative of its minimal polynomial at theta.
        """
        self.require_single_prime()
        if self._diff_val is not None:
            return self._diff_val
        if self.ramification_index == 1:
            self._diff_val = 0
            return 0
        from .intlinalg import det_fraction

        for theta in self._generator_candidates():
            got = self._minpoly(theta)
            if got is None:
                continue
            coeffs, power_rows = got
            det = det_fraction(power_rows)
            if vp(det, self.p) != 0:
                continue  # Z_(p)[theta] is not p-maximal
            deriv = CycNum.zero(self.e)
            for j in range(1, len(coeffs)):
                if coeffs[j]:
                    deriv = deriv + (j * coeffs[j]) * theta ** (j - 1)
            v = self.v_pi(deriv)
            assert v is not None and v >= 0
            self._diff_val = v
            return v
        raise UnsupportedFieldError(
            f"no p-maximal monogenic generator found for Fix(S) in Q(zeta_{self.e})"
        )

    def __repr__(self):
        return (
            f"CycloSubfield(e={self.e}, |S|={len(self.S)}, p={self.p}, "
            f"deg={self.degree}, e_ram={self.ramification_index}, f={self.residue_degree})"
        )


@lru_cache(maxsize=None)
def subfield(e: int, stab, p: int) -> CycloSubfield:
    return CycloSubfield(e, stab, p)


def full_cyclotomic(e: int, p: int) -> CycloSubfield:
    return subfield(e, frozenset({1 % e if e > 1 else 0}), p)


def rational_field(p: int) -> CycloSubfield:
    return subfield(1, frozenset({0}), p)


def p_valuation(a: CycNum, p: int, conductor: int | None = None):
    """Valuation of a at the unique prime above p of Q(zeta_e).

    Normalized to the field Q(zeta_e) where e defaults to the conductor
    the element is stored at; v(0) is None (infinity).  Raises
    UnsupportedFieldError when the prime above p is not unique.
    """
    e = conductor if conductor is not None else a.e
    F = full_cyclotomic(e, p)
    return F.v_pi(a.lift(e) if e != a.e else a)
