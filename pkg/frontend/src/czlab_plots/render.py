"""Figure rendering for czlab reports: pure CSV consumer, one raster image
per job, deterministic layout (fixed size and dpi)."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .reader import EmptyDataError, MissingColumnError, read_report  # noqa: E402

KINDS = ("ratio_divergence", "convergence_curve", "cz_contrast")

FIGSIZE = (6.4, 4.0)
DPI = 150


@dataclass
class PlotJob:
    kind: str
    csv_path: str
    out_path: str
    log_x: bool = False
    log_y: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"choose one of {', '.join(KINDS)}")


def _new_axes(title):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _require_rows(report, path):
    if not report.rows:
        raise EmptyDataError(f"{path}: report has no data rows")


def _norm_columns(report):
    # counterexample reports name the norm columns by derivative order
    for dbar_col, full_col in (("c0_dbar_u", "c1_u"), ("c1_dbar_u", "c2_u")):
        if dbar_col in report.columns and full_col in report.columns:
            return dbar_col, full_col
    raise MissingColumnError("no counterexample norm columns found")


def render_ratio_divergence(report, ax):
    _, full_col = _norm_columns(report)
    nu = report.column("nu")
    ax.plot(nu, report.column(full_col), "o-", label=f"computed {full_col}")
    ax.plot(nu, report.column("lower_bound"), "s--",
            label="closed-form floor (diverges)")
    ax.set_xlabel("nu")
    ax.set_ylabel("norm value")
    ax.legend()


def render_convergence_curve(report, ax, log_x, log_y):
    if "epsilon" in report.columns:
        x = report.column("epsilon")
        xlabel = "epsilon"
        series = [c for c in ("sup_f_diff", "sup_dbar_f_diff", "sup_dbar_u_diff")
                  if c in report.columns]
    else:
        x = report.column("nu")
        xlabel = "nu"
        series = [c for c in ("sup_dbar_diff", "bound_sum") if c in report.columns]
    if not series:
        raise MissingColumnError("no convergence columns found")
    for name in series:
        style = "^--" if name == "bound_sum" else "o-"
        ax.plot(x, report.column(name), style, label=name)
    if log_x:
        ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("sup difference")
    ax.legend()


def render_cz_contrast(report, ax):
    rows = [r for r in report.rows if r.get("nu")]
    if not rows:
        raise EmptyDataError("no indexed rows in the ratio report")
    nu = [r["nu"] for r in rows]
    for name in ("sobolev_ratio", "cnorm_ratio"):
        if name not in report.columns:
            raise MissingColumnError(f"column {name!r} not in report")
        ax.plot(nu, [r[name] for r in rows], "o-", label=name)
    if "floor_ratio" in report.columns:
        ax.plot(nu, [r["floor_ratio"] for r in rows], "s--", label="floor_ratio")
    ax.set_xlabel("nu")
    ax.set_ylabel("ratio")
    ax.legend()


def render(job: PlotJob) -> str:
    """Render one report to one image; returns the written path.

    Raises before touching the output file on malformed CSV, missing
    columns or empty data, so a failed job never leaves an image behind.
    """
    report = read_report(job.csv_path)
    _require_rows(report, job.csv_path)
    title = str(report.metadata.get("experiment", job.kind))
    fig, ax = _new_axes(title)
    try:
        if job.kind == "ratio_divergence":
            render_ratio_divergence(report, ax)
        elif job.kind == "convergence_curve":
            render_convergence_curve(report, ax, job.log_x, job.log_y)
        else:
            render_cz_contrast(report, ax)
        out = Path(job.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out)
    finally:
        plt.close(fig)
    return str(job.out_path)
