"""Figure rendering for campaign reports (file output only, Agg backend).

Opt-in from the CLI via ``--figures DIR``: writes PNGs summarizing a
report's verdict mix and, where the campaign produces per-item margins, a
margin histogram.  Nothing here opens a window.
"""
from __future__ import annotations

from pathlib import Path

from .verify import Verdict, VerificationReport

__all__ = ["render_report_figures"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_report_figures(report: VerificationReport, outdir: str | Path) -> list[Path]:
    """Write the figures for ``report`` into ``outdir``; returns the paths."""
    plt = _pyplot()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    verdict_keys = [v.value for v in Verdict]
    counts = [report.counters.get(k, 0) for k in verdict_keys]
    if any(counts):
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.bar(range(len(verdict_keys)), counts, color="#4878a8")
        ax.set_xticks(range(len(verdict_keys)))
        ax.set_xticklabels(verdict_keys, rotation=20, ha="right", fontsize=8)
        ax.set_ylabel("graphs")
        ax.set_title(f"{report.campaign}: verdicts")
        fig.tight_layout()
        path = outdir / f"{report.campaign}-verdicts.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)

    margins = [
        row["margin"]
        for row in report.details
        if isinstance(row.get("margin"), float) and not row.get("is_reference", False)
    ]
    if margins:
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.hist(margins, bins=min(40, max(5, len(margins) // 5)), color="#58a070")
        ax.set_xlabel("certified margin")
        ax.set_ylabel("count")
        ax.set_title(f"{report.campaign}: separation margins")
        fig.tight_layout()
        path = outdir / f"{report.campaign}-margins.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)

    rows = [
        (row["rho_lo"], row["rho_hi"])
        for row in report.details
        if isinstance(row.get("rho_lo"), float) and isinstance(row.get("rho_hi"), float)
    ]
    if rows:
        fig, ax = plt.subplots(figsize=(7, 4))
        los = [r[0] for r in rows]
        ax.plot(range(len(los)), los, ".", markersize=3, color="#a05858")
        ax.set_xlabel("item")
        ax.set_ylabel("spectral radius (lower bound)")
        ax.set_title(f"{report.campaign}: spectral radii")
        fig.tight_layout()
        path = outdir / f"{report.campaign}-rho.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)
    return written
