"""JSON encoding/decoding for the CLI surface.

Rationals travel as "a/b" strings, cyclotomic numbers as
{"conductor": e, "coeffs": [...]} at their minimal conductor, valuations
as integers with {"zero": true} for zero ideals.  Nothing is ever
rounded.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNum
from .errors import SchemaError
from .groups import FiniteGroup, GroupRingElem, from_spec
from .rationals import format_rational, parse_rational


def encode_rational(q) -> str:
    return format_rational(Fraction(q))


def encode_cycnum(z: CycNum) -> dict:
    r = z.reduced()
    return {"conductor": r.e, "coeffs": [format_rational(c) for c in r.c]}


def decode_cycnum(obj) -> CycNum:
    if isinstance(obj, str):
        return CycNum.from_rational(parse_rational(obj))
    try:
        return CycNum(int(obj["conductor"]), [parse_rational(c) for c in obj["coeffs"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad cyclotomic number: {obj!r}") from exc


def encode_group_ring(z: GroupRingElem) -> dict:
    return {
        z.group.labels[g]: format_rational(c)
        for g, c in sorted(z.coeffs.items())
    }


def decode_group_ring(group: FiniteGroup, obj) -> GroupRingElem:
    if not isinstance(obj, dict):
        raise SchemaError(f"group ring element must be a label->coefficient map: {obj!r}")
    coeffs = {}
    for lab, c in obj.items():
        coeffs[group.index_of(lab)] = parse_rational(c)
    return GroupRingElem(group, coeffs)


def decode_group(obj) -> FiniteGroup:
    try:
        return from_spec(obj)
    except (TypeError, KeyError) as exc:
        raise SchemaError(f"bad group spec: {obj!r}") from exc


def decode_prime(obj) -> int:
    try:
        p = int(obj)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad prime: {obj!r}") from exc
    if p < 2:
        raise SchemaError(f"bad prime: {obj!r}")
    return p


def encode_central_elem(z) -> list:
    return [encode_cycnum(v) for v in z.values]


def encode_central_ideal(ideal) -> list:
    return [{"zero": True} if v is None else int(v) for v in ideal.vals]


def encode_lattice(lattice, p: int) -> dict:
    return {
        "dim": lattice.dim,
        "basis": [
            [format_rational(x) for x in row] for row in lattice.canonical_basis(p)
        ],
    }


def encode_fit_result(fit) -> dict:
    return {
        "generators": [encode_central_elem(g) for g in fit.generators],
        "expansion": encode_central_ideal(fit.expansion),
        "flag": fit.flag,
    }


def decode_matrix(group: FiniteGroup, obj):
    """Matrix of group-ring elements from a list of rows of coeff maps."""
    if isinstance(obj, dict):
        return [[decode_group_ring(group, obj)]]
    if not isinstance(obj, list) or not obj:
        raise SchemaError(f"bad matrix: {obj!r}")
    rows = []
    for row in obj:
        if not isinstance(row, list):
            raise SchemaError("matrix rows must be lists")
        rows.append([decode_group_ring(group, x) for x in row])
    return rows


def decode_presentation(obj):
    from .invariants import GroupRingPresentation

    try:
        group = decode_group(obj["group"])
        p = decode_prime(obj["p"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise SchemaError("presentation needs 'group', 'p' and 'entries'") from exc
    matrix = decode_matrix(group, entries)
    if "a" in obj and int(obj["a"]) != len(matrix):
        raise SchemaError("'a' does not match the number of rows")
    if "b" in obj and matrix and int(obj["b"]) != len(matrix[0]):
        raise SchemaError("'b' does not match the number of columns")
    try:
        return GroupRingPresentation.make(group, p, matrix)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
