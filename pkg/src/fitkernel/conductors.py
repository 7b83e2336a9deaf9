"""Central conductors of orders above the group ring, and annihilator bounds.

Everything is componentwise over the centre of a maximal order: the
Jacobinski-type formula |G|/(n_i s_i) * D^-1 for the maximal order, its
sharpening |G|/chi(1) * A_i^-1 * D^-1 through the character-value ideals
A_i for the conductor of the centres, the hybrid-order conductor
(group-ring trace part plus maximal part), and the resulting lower bound
for the central annihilator-producing ideal, upgraded to an exact value
when the norms are certified to span the maximal centre.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedFieldError
from .groups import FiniteGroup, GroupRingElem, classify_nice, class_sums, trace_idempotent
from .intlinalg import IntLattice, lattice_index
from .invariants import default_saturation_witnesses, witness_I_saturation
from .rationals import vp
from .wedderburn import CentralIdeal, WedderburnData, wedderburn_data


def char_value_ideal(data: WedderburnData, i: int) -> int:
    """Valuation of the ideal generated by the values of character i."""
    comp = data.components[i]
    comp.field.require_single_prime()
    best = None
    for v in comp.char.values:
        w = comp.field.v_pi(v)
        if w is not None:
            best = w if best is None else min(best, w)
            if best == 0:
                break
    assert best is not None  # chi(1) != 0
    return best


def central_conductor_maximal(
    group: FiniteGroup, p: int, data: WedderburnData | None = None
) -> CentralIdeal:
    """Conductor of a maximal order into the group ring, central part:
    componentwise (|G| / (n_i s_i)) * (inverse different)."""
    if data is None:
        data = wedderburn_data(group, p)
    vals = []
    for comp in data.components:
        comp.field.require_single_prime()
        scalar = Fraction(group.order, comp.matrix_size * comp.schur_index)
        v = comp.field.ramification_index * vp(scalar, p) - comp.field.different_valuation()
        vals.append(int(v))
    return CentralIdeal(data, vals)


def central_conductor_centres(
    group: FiniteGroup, p: int, data: WedderburnData | None = None
) -> CentralIdeal:
    """Conductor of the centre of the maximal order into the centre of the
    group ring: componentwise (|G|/chi(1)) * A_i^-1 * (inverse different)."""
    if data is None:
        data = wedderburn_data(group, p)
    vals = []
    for i, comp in enumerate(data.components):
        comp.field.require_single_prime()
        scalar = Fraction(group.order, comp.degree)
        v = (
            comp.field.ramification_index * vp(scalar, p)
            - char_value_ideal(data, i)
            - comp.field.different_valuation()
        )
        vals.append(int(v))
    return CentralIdeal(data, vals)


def _trace_part_rows(group, data):
    """Central coordinates of x * Tr_{G'} over a transversal of G/G'."""
    comm = group.commutator_subgroup()
    tr = GroupRingElem(group, {g: Fraction(1) for g in comm})
    rows = []
    elems = []
    for x in group.transversal(comm):
        z = GroupRingElem.from_element(group, x) * tr
        assert z.is_central()
        elems.append(z)
        rows.append(data.central_coords(data.central_of_group_ring(z)))
    return rows, elems


def _embed_component_ideal(data, i, v):
    comp = data.components[i]
    off = data.central_offsets[i]
    d = data.central_dim
    rows = []
    for r in comp.field.fractional_ideal(v).rows:
        row = [Fraction(0)] * d
        row[off : off + comp.field.degree] = list(r)
        rows.append(row)
    return rows


@dataclass
class HybridConductor:
    lattice: IntLattice
    trace_part: list  # group-ring elements x * Tr_{G'}
    maximal_vals: dict  # nonlinear component -> valuation used


def hybrid_conductor(
    group: FiniteGroup, p: int, data: WedderburnData | None = None
) -> HybridConductor:
    """Conductor of the hybrid order into the group ring, central part:
    o[G] * Tr_{G'} on the commutator-trivial components, the maximal
    conductor elsewhere."""
    if data is None:
        data = wedderburn_data(group, p)
    maximal = central_conductor_maximal(group, p, data)
    rows, elems = _trace_part_rows(group, data)
    used = {}
    for i, comp in enumerate(data.components):
        if comp.degree > 1:
            used[i] = maximal.vals[i]
            rows.extend(_embed_component_ideal(data, i, maximal.vals[i]))
    return HybridConductor(IntLattice(data.central_dim, rows), elems, used)


@dataclass
class HLambdaBound:
    """Lattice bound for the central annihilator-multiplier ideal."""

    lattice: IntLattice
    exact: bool
    reason: str  # "nice" | "norm_saturation" | "lower_bound"
    certificate: object = None


def h_lambda_lower_bound(
    group: FiniteGroup,
    p: int,
    data: WedderburnData | None = None,
    witnesses=None,
) -> HLambdaBound:
    """Lower bound for the ideal of central multipliers turning Fitting
    invariants into annihilators.

    Nice group rings get the whole centre (exact).  Otherwise the norms
    of stock witnesses are used to certify that the maximal centre is
    spanned, in which case the conductor of the centres is the exact
    value; failing that, the trace-part + corrected-conductor lattice is
    returned as a lower bound.
    """
    if data is None:
        data = wedderburn_data(group, p)
    if classify_nice(group, p).nice:
        rows = [
            data.central_coords(data.central_of_group_ring(s)) for s in class_sums(group)
        ]
        return HLambdaBound(IntLattice(data.central_dim, rows), True, "nice")
    cert = witness_I_saturation(
        group, p, witnesses if witnesses is not None else default_saturation_witnesses(group)
    )
    centres = central_conductor_centres(group, p, data)
    if cert.certified:
        return HLambdaBound(centres.to_lattice(), True, "norm_saturation", cert)
    rows, _ = _trace_part_rows(group, data)
    for i, comp in enumerate(data.components):
        if comp.degree > 1:
            rows.extend(_embed_component_ideal(data, i, centres.vals[i]))
    return HLambdaBound(IntLattice(data.central_dim, rows), False, "lower_bound", cert)


def conductor_index_report(group: FiniteGroup, p: int) -> dict:
    """Pairwise p-power indices between the conductor-type lattices.

    Containments are verified, not assumed; a pair that fails containment
    is reported as incomparable rather than raising.
    """
    data = wedderburn_data(group, p)
    maximal = central_conductor_maximal(group, p, data)
    centres = central_conductor_centres(group, p, data)
    hybrid = hybrid_conductor(group, p, data)
    hbound = h_lambda_lower_bound(group, p, data)
    lattices = {
        "maximal_conductor": maximal.to_lattice(),
        "centres_conductor": centres.to_lattice(),
        "hybrid_conductor": hybrid.lattice,
        "h_lower_bound": hbound.lattice,
    }
    comparisons = []
    names = list(lattices)
    for a in names:
        for b in names:
            if a == b:
                continue
            big, small = lattices[a], lattices[b]
            if big.contains(small, p):
                idx = lattice_index(big, small, p)
                comparisons.append(
                    {"larger": a, "smaller": b, "index": idx, "p_exponent": vp(Fraction(idx), p)}
                )
    components = []
    for i, comp in enumerate(data.components):
        components.append(
            {
                **comp.describe(),
                "maximal_valuation": maximal.vals[i],
                "centres_valuation": centres.vals[i],
                "char_value_valuation": char_value_ideal(data, i),
                "different_valuation": comp.field.different_valuation(),
            }
        )
    return {
        "group": group.describe(),
        "order": group.order,
        "p": p,
        "components": components,
        "h_bound": {"exact": hbound.exact, "reason": hbound.reason},
        "indices": comparisons,
    }
