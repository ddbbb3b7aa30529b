"""Figures for CLI reports, rendered off-screen to PNG files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _layout(X) -> np.ndarray:
    """2-d positions from the vertex bit vectors (principal components, with jitter)."""
    if X.V == 0:
        return np.zeros((0, 2))
    B = X.vertices.astype(float)
    if X.n == 0 or X.V == 1:
        return np.zeros((X.V, 2))
    B = B - B.mean(axis=0)
    _, _, vt = np.linalg.svd(B, full_matrices=False)
    comps = vt[:2].T if vt.shape[0] >= 2 else np.hstack([vt.T, np.zeros((X.n, 1))])
    pos = B @ comps
    pos += np.random.default_rng(0).normal(scale=1e-3, size=pos.shape)
    return pos


def plot_dual(X, path, title: str = "") -> Path:
    """1-skeleton of a cube complex, edges coloured by hyperplane."""
    pos = _layout(X)
    fig, ax = plt.subplots(figsize=(5, 5))
    cmap = plt.get_cmap("tab20")
    for i, j, h in X.edges:
        ax.plot(*pos[[i, j]].T, color=cmap(h % 20), lw=1.5)
    ax.scatter(pos[:, 0], pos[:, 1], s=18, color="black", zorder=3)
    if X.V <= 40:
        for v, (x, y) in enumerate(pos):
            ax.annotate(X.bitstring(v) or "()", (x, y), fontsize=7, xytext=(3, 3),
                        textcoords="offset points")
    ax.set_title(title or f"{X.V} vertices, {len(X.edges)} edges, {X.n} hyperplanes")
    ax.set_axis_off()
    return _save(fig, path)


def plot_normalize(result, path) -> Path:
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(9, 3.5))
    steps = range(len(result.arc_crossings))
    totals = [result.initial_crossings - 2 * k for k in steps]
    a1.plot(steps, totals, marker="o")
    a1.set_xlabel("move")
    a1.set_ylabel("crossing points")
    a2.plot(steps, result.arc_crossings, marker="o", label="crossing arc pairs")
    a2.plot(steps, result.cliques, marker="s", label="largest crossing family")
    a2.set_xlabel("move")
    a2.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_classes(report, path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    cats = report.category_counts
    keys = sorted(cats)
    ax.bar([str(k) for k in keys], [cats[k] for k in keys])
    ax.set_xlabel("category")
    ax.set_ylabel("hyperplanes")
    ax.set_title(f"{report.classes} classes, bound {report.bound}")
    fig.tight_layout()
    return _save(fig, path)


def plot_campaign(result, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    paths = []
    suites = result["suites"]
    if "theorem" in suites:
        recs = [r for r in suites["theorem"]["records"] if not r["skipped"]]
        if recs:
            fig, (a1, a2) = plt.subplots(1, 2, figsize=(9, 3.5))
            a1.scatter([r["bound"] for r in recs], [r["classes"] for r in recs], s=8)
            a1.set_xscale("log")
            a1.set_xlabel("96T + 2E")
            a1.set_ylabel("parallelism classes")
            vals = [r["lemma1_max"] for r in recs]
            a2.hist(vals, bins=np.arange(max(vals) + 2) - 0.5)
            a2.axvline(8.5, color="red", ls="--")
            a2.set_xlabel("largest lemma 1 count")
            fig.tight_layout()
            paths.append(_save(fig, out_dir / "theorem.png"))
    if "principality" in suites:
        recs = suites["principality"]["records"]
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ok = [r for r in recs if r["count_equal"]]
        bad = [r for r in recs if not r["count_equal"]]
        ax.scatter([r["regions"] for r in ok], [r["fine_vertices"] for r in ok], s=8, label="equal")
        ax.scatter([r["regions"] for r in bad], [r["fine_vertices"] for r in bad], s=8,
                   color="red", label="different")
        ax.set_xlabel("regions")
        ax.set_ylabel("fine dual vertices")
        ax.legend(fontsize=8)
        fig.tight_layout()
        paths.append(_save(fig, out_dir / "principality.png"))
    if "normalization" in suites:
        recs = suites["normalization"]["records"]
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.scatter([r["initial"] - r["final"] for r in recs], [r["moves"] for r in recs], s=8)
        ax.set_xlabel("crossing points removed")
        ax.set_ylabel("moves")
        fig.tight_layout()
        paths.append(_save(fig, out_dir / "normalization.png"))
    return paths


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
