"""SVG figures. Output is byte-stable for identical input (fixed hash salt, no date stamp)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "chromaloc"
_META = {"Date": None, "Creator": None}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata=_META, bbox_inches="tight")
    plt.close(fig)


def plot_roots(groups: Sequence[tuple[str, Sequence[complex]]], path, disc_radius: float | None = None,
               title: str = "chromatic roots"):
    fig, ax = plt.subplots(figsize=(5, 5))
    for label, roots in groups:
        ax.scatter([z.real for z in roots], [z.imag for z in roots], s=8, label=label)
    if disc_radius:
        circle = plt.Circle((0, 0), disc_radius, fill=False, ls=":", color="grey")
        ax.add_patch(circle)
    ax.axhline(0, color="black", lw=0.4)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    if len(groups) > 1:
        ax.legend(fontsize=7)
    _save(fig, path)


def plot_tube_curve(sample, roots: Sequence[complex], path, title: str = "tube roots and limit curve"):
    fig, ax = plt.subplots(figsize=(5, 6))
    pts = sample.points
    ax.scatter(pts.real, pts.imag, s=1, color="0.75", label="|lambda1| = |lambda2|")
    special = [z for z, _ in sample.special]
    ax.scatter([z.real for z in special], [z.imag for z in special], s=10, marker="x", color="tab:red",
               label="special set")
    ax.scatter([z.real for z in roots], [z.imag for z in roots], s=6, color="tab:blue", label="roots")
    x0, x1, y0, y1 = sample.region
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    ax.set_title(title)
    ax.legend(fontsize=7, loc="upper left")
    _save(fig, path)


def _num(x) -> float:
    if isinstance(x, str) and "/" in x:
        return float(Fraction(x))
    return float(x)


def plot_convergence(series, path, what: str = "moments", reference: float | None = None):
    """Moments p_k/n (one line per k) or Re t(q) (one line per q) against the size."""
    fig, ax = plt.subplots(figsize=(6, 4))
    recs = series.records
    xs = [r["vertices"] for r in recs]
    if what == "moments":
        key = "moments_newton" if all("moments_newton" in r for r in recs) else "moments_hom"
        width = min(len(r[key]) for r in recs) if recs else 0
        for k in range(width):
            ax.plot(xs, [_num(r[key][k]) for r in recs], marker="o", ms=3, label=f"k={k + 1}")
        ax.set_ylabel("p_k / n")
    else:
        labels = sorted({q for r in recs for q in r["entropy"]})
        for q in labels:
            pts = [(r["vertices"], r["entropy"][q][0]) for r in recs if q in r["entropy"]]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=f"q={q}")
        ax.set_ylabel("Re t(q)")
    if reference is not None:
        ax.axhline(reference, color="black", ls="--", lw=0.8, label="reference")
    ax.set_xlabel("|V|")
    ax.set_title(series.family)
    ax.legend(fontsize=7)
    _save(fig, path)
