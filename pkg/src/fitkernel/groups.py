"""Finite-group catalog, group rings, commutators and niceness.

Groups are explicit multiplication tables built from catalog normal
forms (no generic group-theory engine): cyclic and abelian products,
dihedral, the quaternion group of order 8, the alternating group on 4
letters, and the metacyclic groups F_{p,q}.  Elements are indices
0..|G|-1 with 0 the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import CatalogError
from .rationals import lcm_int


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


class FiniteGroup:
    """Multiplication table with catalog provenance."""

    __slots__ = ("order", "labels", "table", "family", "params", "nf", "_label_to_index", "_inv")

    def __init__(self, labels, table, family, params, nf=None):
        self.order = len(labels)
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.family = family
        self.params = tuple(params)
        self.nf = tuple(nf) if nf is not None else tuple((i,) for i in range(len(labels)))
        self._label_to_index = {lab: i for i, lab in enumerate(self.labels)}
        self._validate()
        self._inv = tuple(self._find_inverse(a) for a in range(self.order))

    # -- construction checks --------------------------------------------------

    def _validate(self):
        n = self.order
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise ValueError("element 0 is not an identity")
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)):
                raise ValueError("multiplication table rows must be permutations")
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    for c in range(n):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise ValueError("multiplication table is not associative")

    def _find_inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == 0:
                return b
        raise ValueError("no inverse found")

    # -- basic operations ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = 0
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            e = lcm_int(e, self.element_order(a))
        return e

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def index_of(self, label: str) -> int:
        try:
            return self._label_to_index[label]
        except KeyError:
            raise CatalogError(f"unknown element label {label!r} in {self.describe()}") from None

    def describe(self) -> str:
        return f"{self.family}{list(self.params)}"

    @property
    def key(self):
        return (self.family, self.params)

    # -- subgroup machinery -----------------------------------------------------

    def closure(self, gens) -> tuple:
        seen = {0}
        frontier = [0]
        gens = sorted(set(gens) | {0})
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul(x, g), self.mul(g, x)):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        # close under products of accumulated elements
        changed = True
        while changed:
            changed = False
            items = sorted(seen)
            for a in items:
                for b in items:
                    y = self.mul(a, b)
                    if y not in seen:
                        seen.add(y)
                        changed = True
        return tuple(sorted(seen))

    def commutator_subgroup(self) -> tuple:
        """Smallest normal subgroup containing all [x, y]."""
        comms = set()
        for x in range(self.order):
            for y in range(self.order):
                c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
                comms.add(c)
        return self.closure(comms)

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, elems) -> bool:
        s = set(elems)
        return all(
            self.mul(self.mul(g, h), self.inv(g)) in s for g in range(self.order) for h in s
        )

    def conjugacy_classes(self):
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = {self.mul(self.mul(g, a), self.inv(g)) for g in range(self.order)}
            seen |= cls
            classes.append(tuple(sorted(cls)))
        return classes

    def transversal(self, subgroup) -> list:
        """Deterministic coset representatives of a subgroup (by index order)."""
        covered = set()
        reps = []
        sub = set(subgroup)
        for g in range(self.order):
            if g in covered:
                continue
            reps.append(g)
            covered |= {self.mul(g, h) for h in sub}
        return reps


# -- catalog constructors --------------------------------------------------------


def _build(labels, mult, family, params) -> FiniteGroup:
    index = {lab: i for i, lab in enumerate(labels)}
    table = [[index[mult(a, b)] for b in labels] for a in labels]
    return FiniteGroup([_label_str(lab, family) for lab in labels], table, family, params)


def _label_str(lab, family) -> str:
    return lab if isinstance(lab, str) else str(lab)


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise CatalogError("cyclic group needs n >= 1")
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(labels, table, "cyclic", (n,), nf=[(i,) for i in range(n)])


@lru_cache(maxsize=None)
def abelian_product(ns: tuple) -> FiniteGroup:
    ns = tuple(int(x) for x in ns)
    if not ns or any(x < 1 for x in ns):
        raise CatalogError("abelian product needs positive factors")
    letters = "abcdefgh"
    if len(ns) > len(letters):
        raise CatalogError("too many abelian factors")
    tuples = [()]
    for m in ns:
        tuples = [t + (i,) for t in tuples for i in range(m)]
    tuples.sort()

    def name(t):
        parts = [
            letters[j] + (f"^{i}" if i > 1 else "")
            for j, i in enumerate(t)
            if i
        ]
        return "*".join(parts) if parts else "1"

    index = {t: k for k, t in enumerate(tuples)}
    table = [
        [index[tuple((x + y) % m for x, y, m in zip(s, t, ns))] for t in tuples]
        for s in tuples
    ]
    return FiniteGroup([name(t) for t in tuples], table, "abelian", ns, nf=tuples)


@lru_cache(maxsize=None)
def dihedral(order: int) -> FiniteGroup:
    if order < 4 or order % 2 != 0:
        raise CatalogError("dihedral group needs even order >= 4")
    n = order // 2
    elems = [(i, s) for s in range(2) for i in range(n)]

    def name(e):
        i, s = e
        a = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if s == 0:
            return a
        return "b" if i == 0 else f"{a}*b"

    def mult(e1, e2):
        i, s = e1
        j, t = e2
        # b a^j = a^(-j) b
        jj = j if s == 0 else (-j) % n
        return ((i + jj) % n, (s + t) % 2)

    index = {e: k for k, e in enumerate(elems)}
    table = [[index[mult(e1, e2)] for e2 in elems] for e1 in elems]
    return FiniteGroup([name(e) for e in elems], table, "dihedral", (order,), nf=elems)


@lru_cache(maxsize=None)
def quaternion8() -> FiniteGroup:
    # x^4 = 1, y^2 = x^2, y x y^-1 = x^-1
    elems = [(i, s) for s in range(2) for i in range(4)]

    def name(e):
        i, s = e
        a = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if s == 0:
            return a
        return "y" if i == 0 else f"{a}*y"

    def mult(e1, e2):
        i, s = e1
        j, t = e2
        jj = j if s == 0 else (-j) % 4
        i2 = (i + jj) % 4
        if s and t:  # y^2 = x^2
            return ((i2 + 2) % 4, 0)
        return (i2, (s + t) % 2)

    index = {e: k for k, e in enumerate(elems)}
    table = [[index[mult(e1, e2)] for e2 in elems] for e1 in elems]
    return FiniteGroup([name(e) for e in elems], table, "quaternion", (8,), nf=elems)


def _perm_mul(s, t):
    return tuple(s[t[i]] for i in range(len(t)))


def _perm_cycles(s) -> str:
    n = len(s)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or s[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = s[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = s[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def alternating4() -> FiniteGroup:
    from itertools import permutations

    def sign(s):
        sgn = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if s[i] > s[j]:
                    sgn = -sgn
        return sgn

    elems = [s for s in permutations(range(4)) if sign(s) == 1]
    ident = (0, 1, 2, 3)
    elems.remove(ident)
    elems = [ident] + sorted(elems)
    index = {s: k for k, s in enumerate(elems)}
    table = [[index[_perm_mul(s, t)] for t in elems] for s in elems]
    return FiniteGroup([_perm_cycles(s) for s in elems], table, "alternating", (4,), nf=elems)


@lru_cache(maxsize=None)
def metacyclic(p: int, q: int, r: int) -> FiniteGroup:
    """F_{p,q} = <x, y | x^p = y^q = 1, y x y^-1 = x^r>."""
    if not _is_prime(p) or not _is_prime(q) or (p - 1) % q != 0:
        raise CatalogError("metacyclic needs primes p, q with q | p-1")
    # r must be a primitive q-th root of 1 mod p
    if pow(r, q, p) != 1 or any(pow(r, k, p) == 1 for k in range(1, q)):
        raise CatalogError(f"{r} is not a primitive {q}-th root of 1 mod {p}")
    elems = [(i, j) for j in range(q) for i in range(p)]

    def name(e):
        i, j = e
        xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        ys = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
        if not xs and not ys:
            return "1"
        if xs and ys:
            return f"{xs}*{ys}"
        return xs or ys

    def mult(e1, e2):
        i, j = e1
        k, l = e2
        # y^j x = x^(r^j) y^j
        return ((i + k * pow(r, j, p)) % p, (j + l) % q)

    index = {e: t for t, e in enumerate(elems)}
    table = [[index[mult(e1, e2)] for e2 in elems] for e1 in elems]
    return FiniteGroup([name(e) for e in elems], table, "metacyclic", (p, q, r), nf=elems)


def from_spec(spec: dict) -> FiniteGroup:
    """Build a catalog group from its JSON description."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise CatalogError(f"group spec must be a dict with a 'family': {spec!r}")
    fam = spec["family"]
    param = spec.get("param")
    if fam == "cyclic":
        return cyclic(int(param))
    if fam == "abelian":
        return abelian_product(tuple(int(x) for x in param))
    if fam == "dihedral":
        return dihedral(int(param))
    if fam == "quaternion8":
        return quaternion8()
    if fam == "alternating4":
        return alternating4()
    if fam == "metacyclic":
        p, q, r = (int(x) for x in param)
        return metacyclic(p, q, r)
    raise CatalogError(f"unknown group family {fam!r}")


# -- group ring elements -----------------------------------------------------------


class GroupRingElem:
    """Formal rational combination of group elements."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs=None):
        self.group = group
        cleaned = {}
        for g, c in (coeffs or {}).items():
            if not isinstance(c, int):
                c = Fraction(c)
                if c.denominator == 1:
                    c = c.numerator
            if c:
                cleaned[int(g)] = c
        self.coeffs = cleaned

    @staticmethod
    def from_element(group, g: int, c=1) -> "GroupRingElem":
        return GroupRingElem(group, {g: c})

    @staticmethod
    def one(group) -> "GroupRingElem":
        return GroupRingElem(group, {0: 1})

    @staticmethod
    def zero(group) -> "GroupRingElem":
        return GroupRingElem(group, {})

    def _check(self, other):
        if self.group.key != other.group.key:
            raise ValueError("mixed group rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.group, {0: other})
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElem(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.group, {0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElem(self.group, {g: c * other for g, c in self.coeffs.items()})
        self._check(other)
        out = {}
        mul = self.group.mul
        for g, c in self.coeffs.items():
            row = self.group.table[g]
            for h, d in other.coeffs.items():
                k = row[h]
                out[k] = out.get(k, 0) + c * d
        return GroupRingElem(self.group, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.group, {0: other})
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.group.key == other.group.key and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_central(self) -> bool:
        g = self.group
        for a in range(g.order):
            conj = {}
            for h, c in self.coeffs.items():
                conj[g.mul(g.mul(a, h), g.inv(a))] = c
            if conj != self.coeffs:
                return False
        return True

    def is_p_integral(self, p: int) -> bool:
        return all(c.denominator % p != 0 for c in self.coeffs.values())

    def coeff_vector(self):
        return [self.coeffs.get(g, 0) for g in range(self.group.order)]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for g in sorted(self.coeffs):
            c = self.coeffs[g]
            lab = self.group.labels[g]
            parts.append(f"{c}*{lab}" if lab != "1" else f"{c}")
        return " + ".join(parts)


def class_sums(group: FiniteGroup):
    """Z-basis of the center of the group ring."""
    return [
        GroupRingElem(group, {g: Fraction(1) for g in cls})
        for cls in group.conjugacy_classes()
    ]


def trace_idempotent(group: FiniteGroup) -> GroupRingElem:
    """e = |G'|^-1 sum of the commutator subgroup; central idempotent."""
    comm = group.commutator_subgroup()
    inv = Fraction(1, len(comm))
    return GroupRingElem(group, {g: inv for g in comm})


# -- niceness classification --------------------------------------------------------


@dataclass(frozen=True)
class NicenessReport:
    nice: bool
    prime: int
    commutator_order: int
    commutator: tuple
    p_sylow: tuple | None = None
    sylow_abelian: bool | None = None
    p_complement: tuple | None = None
    complement_normal: bool | None = None


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _find_p_sylow(group: FiniteGroup, p: int):
    target = _p_part(group.order, p)
    current = (0,)
    while len(current) < target:
        extended = None
        for g in range(group.order):
            if g in current:
                continue
            o = group.element_order(g)
            if _p_part(o, p) != o:
                continue
            cand = group.closure(set(current) | {g})
            if len(cand) == _p_part(len(cand), p) and len(cand) > len(current):
                extended = cand
                break
        if extended is None:
            return None
        current = extended
    return current


def classify_nice(group: FiniteGroup, p: int) -> NicenessReport:
    """Nice iff p does not divide the commutator order; witnesses attached.

    When nice, the report carries an abelian p-Sylow subgroup and the
    normal p-complement {g : p does not divide ord(g)}.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    comm = group.commutator_subgroup()
    nice = len(comm) % p != 0
    if not nice:
        return NicenessReport(False, p, len(comm), comm)
    sylow = _find_p_sylow(group, p)
    sylow_abelian = None
    if sylow is not None:
        sylow_abelian = all(
            group.mul(a, b) == group.mul(b, a) for a in sylow for b in sylow
        )
    complement = tuple(
        sorted(g for g in range(group.order) if group.element_order(g) % p != 0)
    )
    comp_ok = (
        len(complement) == group.order // _p_part(group.order, p)
        and group.is_subgroup(complement)
        and group.is_normal(complement)
    )
    return NicenessReport(
        True, p, len(comm), comm, sylow, sylow_abelian, complement, comp_ok
    )
