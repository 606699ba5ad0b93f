"""Matplotlib figures for the report commands."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from logdiam.analysis import FaceCensus, RefutationRow  # noqa: E402

# fixed metadata keeps saved files byte-stable across runs
_SAVE_META = {
    ".svg": {"Date": None, "Creator": None},
    ".pdf": {"CreationDate": None, "Creator": None, "Producer": None},
    ".png": {"Software": None},
}


def _style():
    return mpl.rc_context(
        {
            "font.size": 10,
            "axes.labelsize": 10,
            "legend.fontsize": 8,
            "xtick.labelsize": 8,
            "ytick.labelsize": 8,
            "axes.spines.top": False,
            "axes.spines.right": False,
            "svg.hashsalt": "logdiam",
        }
    )


def _save(fig, path: Path, dpi: int) -> Path:
    path = Path(path)
    meta = _SAVE_META.get(path.suffix.lower())
    fig.savefig(path, dpi=dpi, bbox_inches="tight", metadata=meta)
    plt.close(fig)
    return path


def plot_refutation(rows: list[RefutationRow], path, dpi: int = 150) -> Path:
    """Measured diameter against the fullerene lower bound and the stated upper bounds."""
    ks = [r.k for r in rows]
    with _style():
        fig, ax = plt.subplots(figsize=(6.0, 3.8))
        ax.plot(ks, [r.diameter for r in rows], "o-", color="black", label="diameter of $G_k$ (exact)")
        ax.plot(ks, [r.fullerene_bound for r in rows], "s--", color="tab:red", label=r"$\frac{1}{6}\sqrt{24n-15}-\frac{1}{2}$")
        ax.plot(ks, [r.three_k for r in rows], ":", color="tab:blue", label="$3k$")
        ax.plot(ks, [r.three_log2_n for r in rows], "-.", color="tab:green", label=r"$3\log_2 n$")
        ax.plot(ks, [4 * math.log2(r.n) for r in rows], "-", lw=0.8, color="tab:gray", label=r"$4\log_2 n$")
        refuting = [r for r in rows if r.refutes]
        if refuting:
            first = refuting[0]
            ax.axvline(first.k, color="tab:red", lw=0.6, alpha=0.5)
            ax.annotate(f"k* = {first.k}", (first.k, first.diameter), xytext=(6, -14), textcoords="offset points")
        ax.set_xlabel("k")
        ax.set_ylabel("distance")
        ax.set_xticks(ks)
        ax.legend(frameon=False, loc="upper left")
        return _save(fig, path, dpi)


def plot_census(census: FaceCensus, k: int | None, path, dpi: int = 150) -> Path:
    hist = census.nonzero()
    with _style():
        fig, ax = plt.subplots(figsize=(4.0, 3.0))
        lengths = list(hist)
        bars = ax.bar([str(n) for n in lengths], [hist[n] for n in lengths], color=["#c8c8c8" if n == 7 else "white" for n in lengths], edgecolor="black")
        ax.bar_label(bars, fontsize=8)
        ax.set_xlabel("face length")
        ax.set_ylabel("faces")
        if k is not None:
            ax.set_title(f"$G_{{{k}}}$", fontsize=10)
        return _save(fig, path, dpi)
