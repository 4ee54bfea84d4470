"""Benchmark report: per-update counters as CSV plus matplotlib figures
rendered next to it, comparing the observed counters with the instance's
shortest-path-parameter budgets."""

from __future__ import annotations

import csv
import os

from .engine import UpdateStats

FIELDS = ("triples_touched_cleanup", "triples_touched_fixup",
          "new_triples_created", "heap_ops")


def write_report(outdir: str, rows: list[tuple[int, str, UpdateStats]],
                 n: int, nu_star: int, m_star: int) -> list[str]:
    """Write stats.csv and the counter figures; returns the file paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    paths = []

    csv_path = os.path.join(outdir, "stats.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("update", "vertex") + FIELDS +
                        ("nu_star", "m_star"))
        for idx, vertex, stats in rows:
            writer.writerow((idx, vertex) +
                            tuple(getattr(stats, f) for f in FIELDS) +
                            (nu_star, m_star))
    paths.append(csv_path)

    updates = [idx for idx, _, _ in rows]
    cleanup_touched = [s.triples_touched_cleanup for _, _, s in rows]
    created = [s.new_triples_created for _, _, s in rows]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(updates, cleanup_touched, color="#4878a8")
    budget = 8 * (nu_star ** 2 + 2 * n * nu_star)
    ax.axhline(budget, color="#a84848", linestyle="--",
               label=f"8(nu*^2 + 2n nu*) = {budget}")
    ax.set_xlabel("update")
    ax.set_ylabel("triples touched in cleanup")
    ax.legend()
    fig.tight_layout()
    p = os.path.join(outdir, "cleanup_touched.png")
    fig.savefig(p)
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(7, 4))
    running = []
    total = 0
    for i, c in enumerate(created, start=1):
        total += c
        running.append(total / i)
    ax.plot(updates, created, marker="o", label="new triples per fixup")
    ax.plot(updates, running, marker=".", label="running mean")
    ax.axhline(8 * nu_star ** 2, color="#a84848", linestyle="--",
               label=f"8 nu*^2 = {8 * nu_star ** 2}")
    ax.set_xlabel("update")
    ax.set_ylabel("new triples created")
    ax.legend()
    fig.tight_layout()
    p = os.path.join(outdir, "new_triples.png")
    fig.savefig(p)
    plt.close(fig)
    paths.append(p)
    return paths
