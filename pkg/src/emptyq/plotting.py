"""Figure rendering for sweep reports.

Figures are rendered next to the delimited output; CSV stays the interchange
format, the PNGs are for eyeballing scaling behaviour.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import SweepReport, TARGET_EXPONENTS

__all__ = ["render_sweep_figures"]


def render_sweep_figures(report: SweepReport, out_dir) -> list[Path]:
    """Write charge-scaling and error-rate figures; returns the file paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    axis = report.axis
    xs = [p.axis_value for p in report.points]
    paths = []

    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    q_label = "quantum median charge"
    c_label = "classical median charge"
    if report.slope_q is not None:
        q_label += f" (slope {report.slope_q:.2f})"
        c_label += f" (slope {report.slope_c:.2f})"
    ax.loglog(xs, [p.q_charge_median for p in report.points], "o-", label=q_label)
    ax.loglog(xs, [p.c_charge_median for p in report.points], "s--", label=c_label)
    target_q = TARGET_EXPONENTS[report.problem][1]
    ax.set_xlabel(axis)
    ax.set_ylabel("oracle queries")
    ax.set_title(f"{report.problem}: charge scaling (target exponent {target_q:g})")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    path = out_dir / f"{report.problem}_charge_scaling.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    rates = [p.error_rate for p in report.points]
    low = [max(0.0, p.error_rate - p.wilson_low) for p in report.points]
    high = [max(0.0, p.wilson_high - p.error_rate) for p in report.points]
    ax.errorbar(xs, rates, yerr=[low, high], fmt="o-", capsize=3)
    ax.axhline(0.1, color="red", linestyle=":", label="0.1 error budget")
    ax.set_xscale("log")
    ax.set_xlabel(axis)
    ax.set_ylabel("empirical error rate")
    ax.set_ylim(bottom=0)
    ax.set_title(f"{report.problem}: error rate (Wilson 95%)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    path = out_dir / f"{report.problem}_error_rate.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)
    return paths
