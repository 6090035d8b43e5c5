"""Batch sweeps: run solvers over parameter grids, write CSV and static figures.

A sweep file is TOML with one ``[[sweep]]`` table per block of runs::

    [[sweep]]
    family = "pd-grid"
    problem = "sigma"      # witness | sigma | idp | separator
    sigma = "0"
    k = [2, 3, 4]          # list-valued keys are swept as a grid
    g = 0

IDP runs join the first and last vertex.  The figures plot the measured
number of subgraphs touched per level against the ``n^t`` envelope; the
envelope is a sanity reference, not a pass/fail check.
"""

from __future__ import annotations

import csv
import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .contraction import star_sequence, verify_witness
from .generators import build_family
from .idp import IdpInstance, solve_idp
from .separator import balanced_separator
from .sigma import SigmaSpec, solve_sigma

RESERVED = {"family", "problem", "sigma"}
COLUMNS = [
    "family",
    "params",
    "problem",
    "n",
    "m",
    "t",
    "answer",
    "max_subgraphs_per_level",
    "envelope",
    "max_keys_per_level",
    "total_keys",
    "max_separators",
    "max_components",
    "seconds",
]

RC = {
    "figure.figsize": (5.0, 3.4),
    "figure.dpi": 120,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.markersize": 4,
}


def load_sweep(path) -> list[dict]:
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    blocks = doc.get("sweep", [])
    if not isinstance(blocks, list) or not blocks:
        raise ValueError("sweep file needs at least one [[sweep]] table")
    jobs = []
    for block in blocks:
        if "family" not in block:
            raise ValueError("every [[sweep]] table needs a family")
        fixed = {k: v for k, v in block.items() if k not in RESERVED}
        keys = sorted(fixed)
        axes = [v if isinstance(v, list) else [v] for v in (fixed[k] for k in keys)]
        for combo in itertools.product(*axes):
            jobs.append(
                {
                    "family": block["family"],
                    "problem": block.get("problem", "witness"),
                    "sigma": str(block.get("sigma", "0")),
                    "params": dict(zip(keys, combo)),
                }
            )
    return jobs


def run_job(job: dict) -> dict:
    g, seq = build_family(job["family"], **job["params"])
    if seq is None:
        seq = star_sequence(g)
    t0 = time.perf_counter()
    t = verify_witness(g, seq, edge_counts=False).witnessed
    row = {
        "family": job["family"],
        "params": " ".join(f"{k}={v}" for k, v in sorted(job["params"].items())),
        "problem": job["problem"],
        "n": g.n,
        "m": g.m,
        "t": t,
        "envelope": g.n**t,
    }
    stats = None
    problem = job["problem"]
    if problem == "sigma":
        res = solve_sigma(g, seq, SigmaSpec.parse(job["sigma"]), t=t)
        row["answer"] = res.size
        stats = res.stats
    elif problem == "idp":
        res = solve_idp(IdpInstance(g, [(0, g.n - 1)]), seq, t=t)
        row["answer"] = int(res.feasible)
        stats = res.stats
    elif problem == "separator":
        res = balanced_separator(g, seq, t)
        row["answer"] = len(res.S)
    elif problem == "witness":
        row["answer"] = t
    else:
        raise ValueError(f"unknown problem {problem!r}")
    row["seconds"] = round(time.perf_counter() - t0, 4)
    if stats is not None:
        d = stats.as_dict()
        for key in ("max_subgraphs_per_level", "max_keys_per_level", "total_keys", "max_separators", "max_components"):
            row[key] = d[key]
    return row


def write_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS, restval="")
        w.writeheader()
        w.writerows(rows)


def plot_rows(rows: list[dict], out: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    with plt.rc_context(RC):
        measured = [r for r in rows if r.get("max_subgraphs_per_level") not in (None, "")]
        if measured:
            fig, ax = plt.subplots()
            for (fam, prob), grp in itertools.groupby(
                sorted(measured, key=lambda r: (r["family"], r["problem"], r["n"])),
                key=lambda r: (r["family"], r["problem"]),
            ):
                grp = list(grp)
                ns = [r["n"] for r in grp]
                line = ax.plot(ns, [r["max_subgraphs_per_level"] for r in grp], "o-", label=f"{fam} ({prob})")[0]
                ax.plot(ns, [r["envelope"] for r in grp], "--", color=line.get_color(), alpha=0.6)
            ax.set_yscale("log")
            ax.set_xlabel("n")
            ax.set_ylabel("subgraphs per level (max)")
            ax.set_title("measured table rows; dashed: $n^t$")
            ax.legend(frameon=False)
            path = out / "table_sizes.png"
            fig.savefig(path)
            plt.close(fig)
            written.append(path)
        fig, ax = plt.subplots()
        for (fam, prob), grp in itertools.groupby(
            sorted(rows, key=lambda r: (r["family"], r["problem"], r["n"])),
            key=lambda r: (r["family"], r["problem"]),
        ):
            grp = list(grp)
            ax.plot([r["n"] for r in grp], [r["seconds"] for r in grp], "o-", label=f"{fam} ({prob})")
        ax.set_xlabel("n")
        ax.set_ylabel("seconds")
        ax.legend(frameon=False)
        path = out / "runtime.png"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written


def run_sweep(sweep_path, out_dir, jobs: int = 1) -> tuple[Path, list[Path]]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    todo = load_sweep(sweep_path)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_job, todo))
    else:
        rows = [run_job(j) for j in todo]
    csv_path = out / "sweep.csv"
    write_csv(rows, csv_path)
    return csv_path, plot_rows(rows, out)
