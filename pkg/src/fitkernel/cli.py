"""Command-line front end.

Verbs: classify, wedderburn, nr, adjoint, fit, conductor, index,
annihilate, quotient.  Input is a JSON document (inline string, file
path, or '-' for stdin); output is JSON (default) or a text summary.
Output is deterministic: keys sorted, components and generators in their
canonical order.  FITKERNEL_THREADS bounds internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys

from .conductors import (
    central_conductor_centres,
    central_conductor_maximal,
    char_value_ideal,
    conductor_index_report,
    h_lambda_lower_bound,
    hybrid_conductor,
)
from .errors import CatalogError, FitkernelError, SchemaError, UnsupportedFieldError
from .groups import classify_nice
from .invariants import (
    fit_of_presentation,
    quotient_by_left_ideal,
    verify_annihilation,
)
from .serialize import (
    decode_group,
    decode_group_ring,
    decode_matrix,
    decode_presentation,
    decode_prime,
    encode_central_elem,
    encode_central_ideal,
    encode_cycnum,
    encode_fit_result,
    encode_group_ring,
    encode_lattice,
)
from .wedderburn import generalized_adjoint, reduced_norm, wedderburn_data


def _load_input(raw: str) -> dict:
    if raw == "-":
        text = sys.stdin.read()
    elif raw.lstrip().startswith("{"):
        text = raw
    else:
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read input file {raw!r}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top-level input must be a JSON object")
    return obj


def _group_and_prime(obj):
    if "group" not in obj or "p" not in obj:
        raise SchemaError("input needs 'group' and 'p'")
    return decode_group(obj["group"]), decode_prime(obj["p"])


def cmd_classify(obj):
    group, p = _group_and_prime(obj)
    rep = classify_nice(group, p)
    out = {
        "group": group.describe(),
        "p": p,
        "nice": rep.nice,
        "commutator_order": rep.commutator_order,
        "commutator": [group.labels[g] for g in rep.commutator],
    }
    if rep.nice:
        out["p_sylow"] = [group.labels[g] for g in rep.p_sylow or ()]
        out["sylow_abelian"] = rep.sylow_abelian
        out["p_complement"] = [group.labels[g] for g in rep.p_complement or ()]
        out["complement_normal"] = rep.complement_normal
    return out


def cmd_wedderburn(obj):
    group, p = _group_and_prime(obj)
    data = wedderburn_data(group, p)
    comps = []
    for comp in data.components:
        entry = comp.describe()
        entry["characters"] = [data.chars[c].label for c in comp.char_indices]
        entry["values"] = {
            group.labels[g]: encode_cycnum(comp.char.values[g])
            for g in range(group.order)
        }
        if comp.field.single_prime:
            entry["inverse_different_valuation"] = comp.field.different_valuation()
        comps.append(entry)
    return {"group": group.describe(), "p": p, "components": comps}


def cmd_nr(obj):
    group, p = _group_and_prime(obj)
    data = wedderburn_data(group, p)
    if "element" in obj:
        H = [[decode_group_ring(group, obj["element"])]]
    elif "matrix" in obj:
        H = decode_matrix(group, obj["matrix"])
    else:
        raise SchemaError("nr needs 'element' or 'matrix'")
    if len(H) != len(H[0]):
        raise SchemaError("reduced norm needs a square matrix")
    nr = reduced_norm(data, H)
    out = {"group": group.describe(), "p": p, "components": encode_central_elem(nr)}
    if all(c.field.single_prime for c in data.components):
        out["valuations"] = [
            {"zero": True} if v is None else v for v in nr.valuations()
        ]
    return out


def cmd_adjoint(obj):
    group, p = _group_and_prime(obj)
    data = wedderburn_data(group, p)
    if "element" in obj:
        H = [[decode_group_ring(group, obj["element"])]]
    elif "matrix" in obj:
        H = decode_matrix(group, obj["matrix"])
    else:
        raise SchemaError("adjoint needs 'element' or 'matrix'")
    if len(H) != len(H[0]):
        raise SchemaError("generalized adjoint needs a square matrix")
    Hstar = generalized_adjoint(data, H)
    nr = reduced_norm(data, H)
    return {
        "group": group.describe(),
        "p": p,
        "adjoint": [[encode_group_ring(x) for x in row] for row in Hstar],
        "nr": encode_central_elem(nr),
    }


def cmd_fit(obj):
    pres = decode_presentation(obj)
    fit = fit_of_presentation(pres)
    out = encode_fit_result(fit)
    out["group"] = pres.group.describe()
    out["p"] = pres.p
    out["a"] = pres.a
    out["b"] = pres.b
    return out


def cmd_conductor(obj, report_dir=None):
    group, p = _group_and_prime(obj)
    data = wedderburn_data(group, p)
    maximal = central_conductor_maximal(group, p, data)
    centres = central_conductor_centres(group, p, data)
    hyb = hybrid_conductor(group, p, data)
    hb = h_lambda_lower_bound(group, p, data)
    out = {
        "group": group.describe(),
        "p": p,
        "maximal": encode_central_ideal(maximal),
        "centres": encode_central_ideal(centres),
        "char_value_valuations": [
            char_value_ideal(data, i) for i in range(len(data.components))
        ],
        "hybrid_basis": {
            "trace_part": [encode_group_ring(z) for z in hyb.trace_part],
            "lattice": encode_lattice(hyb.lattice, p),
        },
        "h_bound": {
            "exact": hb.exact,
            "reason": hb.reason,
            "lattice": encode_lattice(hb.lattice, p),
        },
    }
    if report_dir:
        from .report import write_conductor_report

        write_conductor_report(group, p, report_dir)
        out["report_dir"] = str(report_dir)
    return out


def cmd_index(obj, report_dir=None):
    group, p = _group_and_prime(obj)
    report = conductor_index_report(group, p)
    if report_dir:
        from .report import write_conductor_report

        write_conductor_report(group, p, report_dir)
        report["report_dir"] = str(report_dir)
    return report


def cmd_annihilate(obj):
    pres = decode_presentation(obj)
    if "element" not in obj:
        raise SchemaError("annihilate needs a central 'element'")
    z = decode_group_ring(pres.group, obj["element"])
    if not z.is_central():
        raise SchemaError("'element' is not central")
    return {
        "group": pres.group.describe(),
        "p": pres.p,
        "annihilates": verify_annihilation(z, pres),
    }


def cmd_quotient(obj):
    group, p = _group_and_prime(obj)
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise SchemaError("quotient needs a nonempty 'generators' list")
    elems = [decode_group_ring(group, g) for g in gens]
    try:
        q = quotient_by_left_ideal(group, p, elems)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    out = encode_fit_result(q.fit)
    out["group"] = group.describe()
    out["p"] = p
    out["norm_members"] = [lab for lab, _ in q.members]
    return out


def _text_summary(verb, out) -> str:
    lines = [f"fitkernel {verb}"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v)
        else:
            lines.append(f"  {prefix[:-1]}: {value}")

    walk("", out)
    return "\n".join(lines) + "\n"


COMMANDS = {
    "classify": cmd_classify,
    "wedderburn": cmd_wedderburn,
    "nr": cmd_nr,
    "adjoint": cmd_adjoint,
    "fit": cmd_fit,
    "conductor": cmd_conductor,
    "index": cmd_index,
    "annihilate": cmd_annihilate,
    "quotient": cmd_quotient,
}

ERROR_CODES = {
    SchemaError: 2,
    UnsupportedFieldError: 3,
    CatalogError: 4,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fitkernel",
        description="Exact Fitting invariants, reduced norms and central conductors over group rings.",
    )
    parser.add_argument(
        "--format", choices=["json", "text"], default="json", help="output format"
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        sp = sub.add_parser(verb)
        sp.add_argument(
            "input",
            help="JSON input: inline object, a file path, or '-' for stdin",
        )
        if verb in ("conductor", "index"):
            sp.add_argument(
                "--report-dir",
                default=None,
                help="directory for CSV tables and rendered figures",
            )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj = _load_input(args.input)
        if args.verb in ("conductor", "index"):
            out = COMMANDS[args.verb](obj, report_dir=args.report_dir)
        else:
            out = COMMANDS[args.verb](obj)
    except FitkernelError as exc:
        code = ERROR_CODES.get(type(exc), 5)
        report = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if args.format == "json":
            print(json.dumps(report, sort_keys=True))
        else:
            print(f"error ({type(exc).__name__}): {exc}")
        return code
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(_text_summary(args.verb, out), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
