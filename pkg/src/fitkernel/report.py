"""Conductor report files: delimited tables plus rendered figures.

Writes, into a report directory: the full JSON report, one CSV of
per-component valuations, one CSV of pairwise lattice indices, and two
PNG bar charts (valuations per component, index exponents per pair).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .conductors import conductor_index_report
from .groups import FiniteGroup

VALUATION_FIELDS = [
    "index",
    "degree",
    "schur_index",
    "orbit_size",
    "field_degree",
    "ramification_index",
    "residue_degree",
    "maximal_valuation",
    "centres_valuation",
    "char_value_valuation",
    "different_valuation",
]


def write_conductor_report(group: FiniteGroup, p: int, outdir) -> dict:
    """Compute the index report and render it to outdir; returns the report."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    report = conductor_index_report(group, p)

    with open(outdir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")

    with open(outdir / "conductor_valuations.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=VALUATION_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for comp in report["components"]:
            writer.writerow(comp)

    with open(outdir / "conductor_indices.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["larger", "smaller", "index", "p_exponent"])
        for row in report["indices"]:
            writer.writerow([row["larger"], row["smaller"], row["index"], row["p_exponent"]])

    _render_figures(report, outdir)
    return report


def _render_figures(report, outdir: Path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    comps = report["components"]
    idx = [c["index"] for c in comps]
    width = 0.35
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.bar(
        [i - width / 2 for i in idx],
        [c["maximal_valuation"] for c in comps],
        width,
        label="maximal order",
    )
    ax.bar(
        [i + width / 2 for i in idx],
        [c["centres_valuation"] for c in comps],
        width,
        label="centres",
    )
    ax.set_xlabel("component")
    ax.set_ylabel(f"pi-valuation (p={report['p']})")
    ax.set_title(f"Central conductor valuations: {report['group']}")
    ax.set_xticks(idx)
    ax.legend()
    fig.tight_layout()
    fig.savefig(outdir / "valuations.png", dpi=120)
    plt.close(fig)

    pairs = [r for r in report["indices"] if r["p_exponent"] > 0]
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    if pairs:
        labels = [f"[{r['larger'].split('_')[0]} : {r['smaller'].split('_')[0]}]" for r in pairs]
        ax.bar(range(len(pairs)), [r["p_exponent"] for r in pairs])
        ax.set_xticks(range(len(pairs)))
        ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel(f"index exponent (powers of {report['p']})")
    ax.set_title(f"Lattice indices: {report['group']}")
    fig.tight_layout()
    fig.savefig(outdir / "indices.png", dpi=120)
    plt.close(fig)
