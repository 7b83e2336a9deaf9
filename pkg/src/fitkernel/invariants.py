"""Noncommutative Fitting invariants over group rings.

Results are reported as a reduced-norm generator list together with a
canonical componentwise expansion over the centre of the maximal order
(a decidable over-approximation of the underlying module of norms), plus
an exactness flag.  Exact flags are only claimed in the two
presentation-independent situations: quadratic presentations, and group
rings that split into matrix rings over commutative rings (the "nice"
case, where the expansion is recomputed through the Morita flattening of
each component).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cyclo import CycNum, cyc_det, cyc_rank
from .errors import UnsupportedFieldError
from .groups import FiniteGroup, GroupRingElem, classify_nice
from .intlinalg import IntLattice, express_in_lattice, hnf_local
from .wedderburn import (
    CentralElem,
    CentralIdeal,
    WedderburnData,
    reduced_norm,
    wedderburn_data,
)

EXACT_QUADRATIC = "exact_quadratic"
EXACT_NICE = "exact_nice"
LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class GroupRingPresentation:
    """Lambda^a -> Lambda^b -> M over Lambda = Z_(p)[G] (rows map in)."""

    group: FiniteGroup
    p: int
    a: int
    b: int
    matrix: tuple

    @staticmethod
    def make(group: FiniteGroup, p: int, matrix) -> "GroupRingPresentation":
        rows = tuple(tuple(row) for row in matrix)
        a = len(rows)
        b = len(rows[0]) if a else 0
        for row in rows:
            if len(row) != b:
                raise ValueError("ragged presentation matrix")
            for x in row:
                if x.group.key != group.key:
                    raise ValueError("entry from a different group ring")
                if not x.is_p_integral(p):
                    raise ValueError("presentation entries must be p-integral")
        return GroupRingPresentation(group, p, a, b, rows)


@dataclass
class FitResult:
    """Generators (reduced norms), central expansion, exactness flag.

    The expansion lists one pi-valuation per component (None = zero).
    With flag exact_quadratic or exact_nice it is the canonical expansion
    of the maximal Fitting invariant; with lower_bound it only bounds it
    from below.  In the nice case the generator list is augmented with
    per-component realizers coming from the flattened computation so that
    the expansion is still the componentwise minimum over generators.
    """

    data: WedderburnData
    generators: list
    expansion: CentralIdeal
    flag: str

    def expansion_lattice(self) -> IntLattice:
        return self.expansion.to_lattice()


def _min_valuation(vals):
    out = None
    for v in vals:
        if v is None:
            continue
        out = v if out is None else min(out, v)
    return out


def _component_flat_block(data, pres, i):
    comp = data.components[i]
    d = comp.degree
    big = []
    for r in range(pres.a):
        rows = [[] for _ in range(d)]
        for c in range(pres.b):
            M = data.rep_of(i, pres.matrix[r][c])
            for u in range(d):
                rows[u].extend(M[u])
        big.extend(rows)
    return big


def _nice_component_valuation(data, pres, i):
    """Valuation of the maximal invariant at a matrix component, through
    the commutative Fitting ideal of the Morita flattening.

    Representation entries live in Q(zeta_E), so minors are valuated
    there; the result scales down by the relative ramification and by the
    matrix size (Fit of the full flattened module is the n-th power).
    """
    from .numfield import full_cyclotomic

    comp = data.components[i]
    assert comp.schur_index == 1
    big_field = full_cyclotomic(data.exponent, data.p)
    big_field.require_single_prime()
    rel_ram = big_field.ramification_index // comp.field.ramification_index
    block = _component_flat_block(data, pres, i)
    rows, cols = len(block), comp.degree * pres.b
    if rows < cols:
        return None
    best = None
    for subset in combinations(range(rows), cols):
        det = cyc_det([block[r] for r in subset])
        v = big_field.v_pi(det)
        if v is not None:
            best = v if best is None else min(best, v)
            if best == 0:
                break
    if best is None:
        return None
    q, rem = divmod(best, comp.matrix_size * rel_ram)
    assert rem == 0, "flattened valuation inconsistent with the Morita power"
    return q


def _realizer(data, i, v) -> CentralElem:
    """A central element supported on component i with valuation v there."""
    comp = data.components[i]
    ideal = comp.field.fractional_ideal(v)
    for row in ideal.rows:
        x = comp.field.from_coords(row)
        if comp.field.v_pi(x) == v:
            values = [
                x if j == i else CycNum.zero() for j in range(len(data.components))
            ]
            return CentralElem(data, values)
    raise AssertionError("fractional ideal basis misses its own valuation")


def fit_of_presentation(pres: GroupRingPresentation, data: WedderburnData | None = None) -> FitResult:
    """Reduced norms of all b x b submatrices, with canonical expansion.

    a < b gives the zero invariant.  Quadratic presentations are flagged
    exact; over nice group rings the expansion is corrected componentwise
    via the Morita flattening (the raw norm generators can miss mixed
    minors on matrix components).
    """
    group, p = pres.group, pres.p
    if data is None:
        data = wedderburn_data(group, p)
    t = len(data.components)
    nice = classify_nice(group, p).nice
    if pres.a < pres.b:
        expansion = CentralIdeal(data, [None] * t)
        return FitResult(data, [], expansion, EXACT_NICE if nice else LOWER_BOUND)
    generators = []
    for subset in combinations(range(pres.a), pres.b):
        sub = [pres.matrix[r] for r in subset]
        generators.append(reduced_norm(data, sub))
    vals = []
    for i in range(t):
        vals.append(_min_valuation(g.valuations()[i] for g in generators))
    if pres.a == pres.b:
        return FitResult(data, generators, CentralIdeal(data, vals), EXACT_QUADRATIC)
    if not nice:
        return FitResult(data, generators, CentralIdeal(data, vals), LOWER_BOUND)
    for i, comp in enumerate(data.components):
        if comp.degree == 1:
            continue
        v = _nice_component_valuation(data, pres, i)
        if v != vals[i] and (vals[i] is None or (v is not None and v < vals[i])):
            generators.append(_realizer(data, i, v))
            vals[i] = v
    return FitResult(data, generators, CentralIdeal(data, vals), EXACT_NICE)


@dataclass
class IdempotentCut:
    upsilon: tuple
    idempotent: GroupRingElem
    cut: FitResult


def idempotent_cut(pres: GroupRingPresentation, data: WedderburnData | None = None) -> IdempotentCut:
    """Components where the presentation has full column rank rationally,
    the corresponding central idempotent, and the invariant cut to them."""
    group, p = pres.group, pres.p
    if data is None:
        data = wedderburn_data(group, p)
    upsilon = []
    for i, comp in enumerate(data.components):
        block = _component_flat_block(data, pres, i)
        cols = comp.degree * pres.b
        if len(block) >= cols and cyc_rank(block) == cols:
            upsilon.append(i)
    ups = set(upsilon)
    es = data.idempotents()
    e_m = GroupRingElem.zero(group)
    for i in upsilon:
        e_m = e_m + es[i]
    base = fit_of_presentation(pres, data)
    cut_gens = []
    for g in base.generators:
        cut_gens.append(
            CentralElem(
                data,
                [v if i in ups else CycNum.zero() for i, v in enumerate(g.values)],
            )
        )
    cut_vals = [v if i in ups else None for i, v in enumerate(base.expansion.vals)]
    cut = FitResult(data, cut_gens, CentralIdeal(data, cut_vals), base.flag)
    return IdempotentCut(tuple(upsilon), e_m, cut)


def verify_annihilation(z: GroupRingElem, pres: GroupRingPresentation) -> bool:
    """True iff z kills the cokernel: z e_l lies in the row lattice of the
    regular-representation flattening over Z_(p)."""
    if not z.is_central():
        raise ValueError("annihilation test requires a central element")
    group, p = pres.group, pres.p
    n = group.order
    rows = []
    for k in range(pres.a):
        for g in range(n):
            row = []
            for l in range(pres.b):
                gr = GroupRingElem.from_element(group, g) * pres.matrix[k][l]
                row.extend(gr.coeff_vector())
            rows.append(row)
    lat = IntLattice(n * pres.b, rows)
    zvec = z.coeff_vector()
    zero = [Fraction(0)] * n
    for l in range(pres.b):
        v = []
        for t in range(pres.b):
            v.extend(zvec if t == l else zero)
        if not lat.member(v, p):
            return False
    return True


# -- quotients by left ideals ----------------------------------------------------


@dataclass
class QuotientFit:
    fit: FitResult
    members: list  # (label, group-ring element) pairs whose norms generate


def default_saturation_witnesses(group: FiniteGroup):
    """Small stock of group-ring elements whose norms tend to generate."""
    out = [("1", GroupRingElem.one(group))]
    for g in range(1, group.order):
        lab = group.labels[g]
        out.append((lab, GroupRingElem.from_element(group, g)))
        out.append((f"-{lab}", -GroupRingElem.from_element(group, g)))
    for g in range(1, group.order):
        ginv = group.inv(g)
        if g <= ginv:
            lab = f"{group.labels[g]}+{group.labels[ginv]}"
            out.append(
                (lab, GroupRingElem.from_element(group, g) + GroupRingElem.from_element(group, ginv))
            )
    return out


def quotient_by_left_ideal(
    group: FiniteGroup, p: int, generators, data: WedderburnData | None = None
) -> QuotientFit:
    """Invariant of Lambda/I from a generator list of the left ideal I.

    The stacked presentation is enriched with norms of products g * x_k
    and of pairwise sums x_k + g * x_l (all in I, so their norms always
    sit inside the maximal invariant); exactness follows the same rules
    as fit_of_presentation (principal ideals are quadratic, nice orders
    flatten).
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one ideal generator")
    for x in gens:
        if not x.is_p_integral(p):
            raise ValueError("ideal generators must be p-integral")
    if data is None:
        data = wedderburn_data(group, p)
    pres = GroupRingPresentation.make(group, p, [[x] for x in gens])
    base = fit_of_presentation(pres, data)
    members = [(f"x{k}", x) for k, x in enumerate(gens)]
    extra = []
    for g in range(group.order):
        zg = GroupRingElem.from_element(group, g)
        for k, x in enumerate(gens):
            extra.append((f"{group.labels[g]}*x{k}", zg * x))
    for k, x in enumerate(gens):
        for l in range(k + 1, len(gens)):
            for g in range(group.order):
                zg = GroupRingElem.from_element(group, g)
                extra.append((f"x{k}+{group.labels[g]}*x{l}", x + zg * gens[l]))
    gens_out = list(base.generators)
    vals = list(base.expansion.vals)
    for lab, x in extra:
        nr = reduced_norm(data, x)
        gens_out.append(nr)
        members.append((lab, x))
        for i, v in enumerate(nr.valuations()):
            if v is None:
                continue
            if base.flag in (EXACT_NICE, EXACT_QUADRATIC):
                # norms of ideal elements can never beat the exact answer
                assert vals[i] is not None and v >= vals[i]
            elif vals[i] is None or v < vals[i]:
                vals[i] = v
    fit = FitResult(data, gens_out, CentralIdeal(data, vals), base.flag)
    return QuotientFit(fit, members)


# -- saturation certificates -------------------------------------------------------


@dataclass
class SaturationCertificate:
    certified: bool
    witness_labels: list
    expressions: dict  # target label -> list of (coefficient, generator label)
    missing: list

    def __bool__(self):
        return self.certified


def witness_I_saturation(group: FiniteGroup, p: int, witnesses) -> SaturationCertificate:
    """Certify that the centre of the maximal order is spanned by norms.

    Grows the module generated over the group-ring centre by the reduced
    norms of the witnesses (closing under products, which stays inside
    the norms-order), then expresses every integral-basis element of each
    component as a p-integral combination.  Failure is not a disproof.
    """
    from .groups import class_sums

    data = wedderburn_data(group, p)
    data.require_rational_model()
    if isinstance(witnesses, dict):
        witnesses = list(witnesses.items())
    labeled = []
    for w in witnesses:
        if isinstance(w, tuple):
            labeled.append(w)
        else:
            labeled.append((repr(w), w))
    for lab, w in labeled:
        if not w.is_p_integral(p):
            raise ValueError(f"witness {lab} is not p-integral")
    csums = [data.central_of_group_ring(s) for s in class_sums(group)]
    base = [("nr(1)", CentralElem(data, [CycNum.one()] * len(data.components)))]
    for lab, w in labeled:
        base.append((f"nr({lab})", reduced_norm(data, w)))
    gens = []
    d = data.central_dim
    lattice_rows = []

    def try_add(expr, elem):
        vec = elem.coords()
        if any(c.denominator != 1 for c in vec):
            return False  # keep generator vectors integral
        if lattice_rows and IntLattice(d, lattice_rows).member(vec, p):
            return False
        gens.append((expr, elem, vec))
        lattice_rows.append(vec)
        return True

    for k, cs in enumerate(csums):
        for lab, b in base:
            try_add((f"c{k}", lab), cs * b)
    changed = True
    rounds = 0
    while changed and rounds < 16:
        changed = False
        rounds += 1
        snapshot = list(gens)
        for e1, g1, _ in snapshot:
            for e2, g2, _ in snapshot:
                prod = g1 * g2
                if try_add(("*", e1, e2), prod):
                    changed = True
    lattice = IntLattice(d, lattice_rows)
    expressions = {}
    missing = []
    for i, comp in enumerate(data.components):
        for bi, b in enumerate(comp.field.integral_basis()):
            label = f"comp{i}.b{bi}"
            target = CentralElem(
                data, [b if j == i else CycNum.zero() for j in range(len(data.components))]
            )
            vec = target.coords()
            coeffs = express_in_lattice(lattice_rows, vec, p)
            if coeffs is None:
                missing.append(label)
            else:
                expressions[label] = [
                    (c, gens[j][0]) for j, c in enumerate(coeffs) if c
                ]
    return SaturationCertificate(not missing, [lab for lab, _ in labeled], expressions, missing)


def gl_invariance_check(pres: GroupRingPresentation, U, U_inv) -> bool:
    """Expansion equality of the invariant under U * presentation for a
    unit U of M_a(Lambda) supplied with its inverse."""
    if pres.a != pres.b:
        raise ValueError("invariance check needs a quadratic presentation")
    a = pres.a
    group, p = pres.group, pres.p
    ident = [
        [GroupRingElem.one(group) if r == c else GroupRingElem.zero(group) for c in range(a)]
        for r in range(a)
    ]

    def matmul(A, B):
        return [
            [
                sum(
                    (A[r][t] * B[t][c] for t in range(a)),
                    GroupRingElem.zero(group),
                )
                for c in range(len(B[0]))
            ]
            for r in range(a)
        ]

    if matmul(U, U_inv) != ident or matmul(U_inv, U) != ident:
        raise ValueError("U is not invertible (inverse check failed)")
    data = wedderburn_data(group, p)
    transformed = matmul(U, [list(row) for row in pres.matrix])
    for row in transformed:
        for x in row:
            if not x.is_p_integral(p):
                raise ValueError("transformed presentation left the group ring")
    pres2 = GroupRingPresentation.make(group, p, transformed)
    f1 = fit_of_presentation(pres, data)
    f2 = fit_of_presentation(pres2, data)
    return f1.expansion == f2.expansion
