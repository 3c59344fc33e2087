"""Figure rendering for the experiment reports.

Figures are written as self-contained SVG next to the CSV output. Output
bytes are deterministic for fixed input rows: the SVG id hash salt is
pinned and the date metadata element is suppressed, so rerunning a report
reproduces identical files.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import require
from .experiments import BenchRow, DriftBucket
from .order_stats import ProbCell

plt.rcParams["svg.hashsalt"] = "shuffle-merge"
plt.rcParams["svg.fonttype"] = "none"

_FIGSIZE = (7.0, 4.5)


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_bench(rows: List[BenchRow], path) -> None:
    """Mean moves per element vs N (one point per size)."""
    require(len(rows) > 0, "no bench rows to plot")
    by_n = defaultdict(list)
    for r in rows:
        by_n[r.N].append(r.moves_per_n)
    sizes = sorted(by_n)
    means = [sum(by_n[n]) / len(by_n[n]) for n in sizes]
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(sizes, means, marker="o", color="tab:blue")
    ax.set_xlabel("N")
    ax.set_ylabel("moves per element")
    ax.set_title("Moves per element vs input length")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_phist(tables: Dict[int, Dict[int, float]], path) -> None:
    """Mean frequency of each |P| length, one polyline per N."""
    require(len(tables) > 0, "no histogram tables to plot")
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for n in sorted(tables):
        lengths = sorted(tables[n])
        ax.plot(lengths, [tables[n][p] for p in lengths], label=f"N={n}")
    ax.set_xlabel("|P| at rotation")
    ax.set_ylabel("mean frequency per trial")
    ax.set_title("Frequency of P segments of each length")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_prob(cells: List[ProbCell], path) -> None:
    """Cross probability vs k, one line per N."""
    require(len(cells) > 0, "no probability cells to plot")
    by_n = defaultdict(list)
    for c in cells:
        by_n[c.N].append((c.k, c.value))
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for n in sorted(by_n):
        pts = sorted(by_n[n])
        ax.plot([k for k, _ in pts], [v for _, v in pts], marker="o", label=f"N={n}")
    ax.set_xlabel("k")
    ax.set_ylabel("P(X(n-k) > Y(n))")
    ax.set_title("Cross probability of order statistics")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_drift(buckets: List[DriftBucket], path) -> None:
    """Mean |P| at rotation per progress decile."""
    require(len(buckets) > 0, "no drift buckets to plot")
    by_n = defaultdict(lambda: defaultdict(lambda: [0, 0]))
    for b in buckets:
        acc = by_n[b.N][b.decile]
        acc[0] += b.p_length * b.frequency
        acc[1] += b.frequency
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for n in sorted(by_n):
        deciles = sorted(by_n[n])
        means = [by_n[n][d][0] / by_n[n][d][1] for d in deciles]
        ax.plot(deciles, means, marker="o", label=f"N={n}")
    ax.set_xlabel("progress decile")
    ax.set_ylabel("mean |P| at rotation")
    ax.set_title("P-segment growth over merge progress")
    ax.set_xticks(range(1, 11))
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)
