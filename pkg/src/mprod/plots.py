"""Figure rendering for the report paths.

Figures are written to files next to the delimited output; the Agg backend
keeps this headless-safe.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["save_error_curves", "save_bench_curves"]


def save_error_curves(report, path) -> None:
    """Relative error against truncation rank, one curve per channel count."""
    by_s: dict[int, list] = {}
    for row in report.rows:
        by_s.setdefault(row.s, []).append(row)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for s, rows in sorted(by_s.items()):
        rows = sorted(rows, key=lambda r: r.k)
        ax.semilogy(
            [r.k for r in rows],
            [max(r.relative_error, 1e-18) for r in rows],
            marker="o",
            label=f"s = {s}",
        )
    ax.set_xlabel("truncation rank k")
    ax.set_ylabel("relative error")
    ax.set_title(f"map = {report.map_label}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_curves(bench, path) -> None:
    """Median face-wise multiply time against size, log-log, with slopes."""
    by_algo: dict[str, list] = {}
    for algo, size, seconds in bench.rows:
        by_algo.setdefault(algo, []).append((size, seconds))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for algo, pts in by_algo.items():
        pts = sorted(pts)
        slope = bench.slopes.get(algo)
        label = algo if slope is None else f"{algo} (slope {slope:.2f})"
        ax.loglog([s for s, _ in pts], [t for _, t in pts], marker="o", label=label)
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("median seconds")
    ax.set_title(f"face-wise multiply, depth {bench.depth}, {bench.repeats} repeats")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
