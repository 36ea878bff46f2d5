"""The standard battery behind ``orbit-gate report``.

Runs a fixed list of slice scans and dimension fits, then writes
summary.csv, report.json, one histogram PNG per scan and a dimension figure.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional

from . import __version__
from .errors import InconclusiveError
from .matrixlab import dimension as D
from .matrixlab import slices as S
from .matrixlab.fields import parse_field
from .matrixlab.scan import DEFAULT_SEED, scan_slice
from .plotting import plot_dimension_fits, plot_histogram

REPORT_BUDGET = 1 << 16
CSV_FIELDS = ("kind", "label", "params", "field", "mode", "points", "nilpotent", "types",
              "violations", "status")


def battery(field) -> list:
    """(file stem, slice) pairs scanned by the report."""
    out = [(f"rs_n{n}_k{k}_T{''.join(map(str, t))}", S.rs_slice(n, k, t, field))
           for n, k, t in S.rs_cases(3)]
    out += [
        ("klyachko_n1_k1", S.klyachko_slice(1, 1, field)),
        ("klyachko_n1_k2", S.klyachko_slice(1, 2, field)),
        ("klyachko_n2_k0", S.klyachko_slice(2, 0, field)),
        ("shalika_n1", S.shalika_slice(1, field)),
        ("shalika_n2", S.shalika_slice(2, field)),
        ("ginzburg_rallis", S.gr_slice(field)),
        ("whittaker_gl3_principal", S.whittaker_slice([2, 0, -2], None, field)),
        ("whittaker_gl3_subregular", S.whittaker_slice([1, -1, 0], None, field)),
        ("parabolic_21_1", S.parabolic_slice([2, 1], [1], field)),
        ("parabolic_2_2", S.parabolic_slice([2], [2], field)),
        ("torus_gl2", S.torus_slice(2, field)),
    ]
    return out


def dimension_battery() -> list:
    return [
        lambda: D.estimate_pardim([1], [2]),
        lambda: D.estimate_pardim([2, 1], [2, 2, 1]),
        lambda: D.estimate_pardim([2], [3, 1]),
        lambda: D.estimate_torus(),
        lambda: D.estimate_theta([1], [2]),
        lambda: D.estimate_theta([1], [1, 1]),
    ]


def _param_text(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def run_report(out_dir: Path, field="5", budget: Optional[int] = None, seed: int = DEFAULT_SEED,
               workers: int = 1) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fld = parse_field(field)
    budget = budget or REPORT_BUDGET
    rows, scans, dims, files = [], [], [], []
    for stem, spec in battery(fld):
        rep = scan_slice(spec, budget=budget, seed=seed, workers=workers)
        data = rep.to_json()
        data["status"] = "pass" if not rep.violations else (
            "advisory-violation" if rep.advisory else "violation")
        scans.append(data)
        png = plot_histogram(data, out_dir / f"{stem}.png")
        files.append(png.name)
        rows.append({"kind": "scan", "label": rep.label, "params": _param_text(rep.params),
                     "field": rep.field, "mode": rep.mode, "points": rep.points_visited,
                     "nilpotent": rep.nilpotent_count, "types": len(rep.histogram),
                     "violations": len(rep.violations), "status": data["status"]})
    for run in dimension_battery():
        try:
            rep = run()
        except InconclusiveError as exc:
            rows.append({"kind": "dimension", "label": "inconclusive", "params": str(exc),
                         "status": "inconclusive"})
            continue
        data = rep.to_json()
        data["status"] = "pass" if rep.agrees else "fail"
        dims.append(data)
        rows.append({"kind": "dimension", "label": rep.target, "params": _param_text(rep.params),
                     "field": "F%d,F%d" % rep.primes, "mode": "exhaustive",
                     "points": "%d,%d" % rep.counts, "nilpotent": "",
                     "types": f"{rep.fit.raw:.3f}->{rep.fit.value} (pred {rep.predicted})",
                     "violations": 0 if rep.agrees else 1, "status": data["status"]})
    files.append(plot_dimension_fits(dims, out_dir / "dimension_fits.png").name)

    with open(out_dir / "summary.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, restval="")
        writer.writeheader()
        writer.writerows(rows)
    status = "pass" if all(r["status"] in ("pass", "advisory-violation") for r in rows) else "fail"
    body = {"tool_version": __version__, "field": str(fld), "budget": budget, "seed": seed,
            "scans": scans, "dimensions": dims, "status": status}
    (out_dir / "report.json").write_text(json.dumps(body, sort_keys=True, indent=2) + "\n")
    files = ["summary.csv", "report.json"] + files
    return {"out_dir": str(out_dir), "files": files, "rows": rows, "status": status}
