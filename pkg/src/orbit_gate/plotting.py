"""Figures for scan and dimension reports, rendered to files with the Agg backend."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIG_SIZE = (6.4, 3.6)
PASS_COLOR = "#3b7dd8"
FAIL_COLOR = "#d8553b"


def _finish(fig, ax, path: Path) -> Path:
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_histogram(report_json: dict, path) -> Path:
    """Bar chart of Jordan type counts; types listed as violations are highlighted."""
    rows = report_json["jordan_type_histogram"]
    bad = {tuple(v["type"]) for v in report_json.get("violations", [])}
    labels = [",".join(map(str, r["type"])) or "0" for r in rows]
    counts = [r["count"] for r in rows]
    colors = [FAIL_COLOR if tuple(r["type"]) in bad else PASS_COLOR for r in rows]
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    if rows:
        ax.bar(range(len(rows)), counts, color=colors)
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
        if max(counts) > 100 * max(min(counts), 1):
            ax.set_yscale("log")
    else:
        ax.text(0.5, 0.5, "no nilpotent points", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("Jordan type")
    ax.set_ylabel("points")
    ax.set_title(f"{report_json['label']} over {report_json['field']} ({report_json['mode']})", fontsize=10)
    return _finish(fig, ax, path)


def plot_dimension_fits(reports: Sequence[dict], path) -> Path:
    """ln N against ln q for each dimension report, with the predicted slope dashed."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for i, rep in enumerate(reports):
        qs = [math.log(q) for q in rep["primes"]]
        ns = [math.log(n) for n in rep["counts"]]
        line, = ax.plot(qs, ns, "o-", label=f"{rep['target']} {_param_label(rep['params'])}")
        slope = rep["predicted"]
        ax.plot(qs, [ns[0] + slope * (q - qs[0]) for q in qs], "--", color=line.get_color(), alpha=0.5)
    ax.set_xlabel("ln q")
    ax.set_ylabel("ln N(q)")
    if reports:
        ax.legend(fontsize=7, frameon=False)
    return _finish(fig, ax, path)


def _param_label(params: dict) -> str:
    parts = []
    for key in sorted(params):
        val = params[key]
        if isinstance(val, list):
            val = ",".join(map(str, val)) or "0"
        parts.append(f"{key}={val}")
    return " ".join(parts)
