"""Figures for analysis reports, written to files with the Agg backend."""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import RuleBase  # noqa: E402
from .shapley import ShapleyVector, adjusted_shapley_vector, shapley_vector  # noqa: E402

_METADATA = {"Software": None}


def _new_figure(nbars: int):
    width = max(6.0, 0.9 * nbars + 2.0)
    return plt.subplots(figsize=(width, 4.5))


def plot_vectors(vectors: dict[str, ShapleyVector], title: str, path: Path) -> Path:
    """Grouped bars, one group per rule base element, one bar per vector."""
    first = next(iter(vectors.values()))
    labels = [str(e) for e in first.elements]
    fig, ax = _new_figure(len(labels))
    k = len(vectors)
    width = 0.8 / max(k, 1)
    for j, (name, vec) in enumerate(vectors.items()):
        xs = [i - 0.4 + width * (j + 0.5) for i in range(len(labels))]
        ax.bar(xs, [float(v) for v in vec.values], width=width, label=name)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=35, ha="right", fontsize=8)
    ax.set_ylabel("inconsistency value")
    ax.set_title(title)
    ax.axhline(0, color="black", linewidth=0.6)
    if k > 1:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata=_METADATA)
    plt.close(fig)
    return path


def plot_measures(values: dict[str, Fraction], path: Path) -> Path:
    fig, ax = _new_figure(len(values))
    names = list(values)
    colors = ["tab:gray" if not n.startswith("rb-") else "tab:blue" for n in names]
    ax.bar(range(len(names)), [float(values[n]) for n in names], color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=35, ha="right", fontsize=8)
    ax.set_ylabel("value")
    ax.set_title("inconsistency measures")
    fig.tight_layout()
    fig.savefig(path, metadata=_METADATA)
    plt.close(fig)
    return path


def write_figures(
    base: RuleBase, measure_values: dict[str, Fraction], shapley_measures: list[str], outdir: Path, classical: bool = False
) -> list[str]:
    """Render the report figures plus a tab-separated value table into ``outdir``.

    Returns the written file names, relative to ``outdir``.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = [plot_measures(measure_values, outdir / "measures.png").name]
    rows = []
    for name in shapley_measures:
        vectors = {"adjusted": adjusted_shapley_vector(name, base)}
        if classical:
            vectors["classical"] = shapley_vector(name, base)
        if len(base):
            fname = f"shapley_{name}.png"
            plot_vectors(vectors, f"Shapley inconsistency values ({name})", outdir / fname)
            written.append(fname)
        for kind, vec in vectors.items():
            rows.extend((name, kind, str(e), str(v), format(float(v), ".6g")) for e, v in vec)
    with open(outdir / "shapley.tsv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(("measure", "kind", "element", "fraction", "decimal"))
        w.writerows(rows)
    written.append("shapley.tsv")
    return written
